// toralg: verification suites for toroidal algebras and their vertex representations.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toralg/suites.hpp"

using namespace toralg;
using json = nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Rational parse_q(const std::string& s, const std::string& what) {
    try {
        return Rational::parse(s);
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a rational \"" + s + "\"");
    }
}

std::shared_ptr<const SimpleLieTable> load_algebra(const std::string& name) {
    if (name == "zero") return std::make_shared<SimpleLieTable>(make_zero_algebra());
    std::filesystem::path p(name);
    if (!std::filesystem::exists(p)) p = std::filesystem::path(TORALG_DATA_DIR) / (name + ".json");
    try {
        auto t = load_lie_table(p);
        auto rep = validate_lie_table(t);
        if (!rep.ok) throw ConfigError("Lie table " + name + " is invalid: " + rep.violations.front());
        return std::make_shared<SimpleLieTable>(std::move(t));
    } catch (const LieTableError& e) {
        throw ConfigError(e.what());
    }
}

TopSpace::Rep parse_rep(const std::string& s) {
    if (s == "trivial") return TopSpace::Rep::Trivial;
    if (s == "adjoint") return TopSpace::Rep::Adjoint;
    throw ConfigError("representation must be trivial or adjoint");
}

// Options shared by the action-type subcommands.
struct ActionOptions {
    int N = 2;
    std::string mu = "0", c = "1", algebra = "sl2", alpha, beta, v = "trivial", w = "trivial", hbar = "2/7", d0_shift;
    bool rank_zero = false, fbar_trivial = false, unchecked = false;

    void attach(CLI::App* app) {
        app->add_option("--N", N, "lattice rank");
        app->add_option("--mu", mu, "mu as p/q");
        app->add_option("--c", c, "level c as p/q (nonzero)");
        app->add_option("--algebra", algebra, "sl2, sl3, zero or a table path");
        app->add_option("--alpha", alpha, "comma separated rationals");
        app->add_option("--beta", beta, "comma separated integers");
        app->add_option("--V", v, "top representation of the finite algebra (trivial|adjoint)");
        app->add_option("--W", w, "top representation of sl_N (trivial|adjoint)");
        app->add_option("--hbar", hbar, "L-bar(0) eigenvalue on the top");
        app->add_option("--d0-shift", d0_shift, "scalar added to d_0");
        app->add_flag("--thm56", rank_zero, "rank-zero mode (N=12, mu=c=1, trivial f-bar factor)");
        app->add_flag("--fbar-trivial", fbar_trivial, "use the trivial f-bar factor");
        app->add_flag("--unchecked", unchecked, "allow the rank-zero formulas away from N=12");
    }

    ActionParams build() const {
        ActionParams p;
        if (rank_zero) {
            p = ActionParams::rank_zero_point(unchecked ? N : 12);
            p.unchecked = unchecked;
        } else {
            p.N = N;
            p.mu = parse_q(mu, "mu");
            p.c = parse_q(c, "c");
            p.table = load_algebra(algebra);
            p.v_rep = parse_rep(v);
            p.w_rep = parse_rep(w);
            p.hbar = parse_q(hbar, "hbar");
            p.fbar_trivial = fbar_trivial;
        }
        if (!d0_shift.empty()) p.d0_shift = parse_q(d0_shift, "d0-shift");
        if (!alpha.empty())
            for (const auto& a : split(alpha)) p.alpha.push_back(parse_q(a, "alpha"));
        if (!beta.empty())
            for (const auto& b : split(beta)) p.beta.push_back(static_cast<int>(parse_q(b, "beta").to_int64()));
        try {
            p.validate();
        } catch (const ActionError& e) {
            throw ConfigError(e.what());
        }
        return p;
    }
};

std::vector<std::vector<int>> parse_points(const std::string& s, int n) {
    std::vector<std::vector<int>> pts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        std::vector<int> p;
        for (const auto& x : split(item)) p.push_back(std::stoi(x));
        if (static_cast<int>(p.size()) != n) throw ConfigError("lattice point " + item + " needs N entries");
        pts.push_back(p);
    }
    return pts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of toroidal Lie algebra representations"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    std::uint64_t seed = 1;
    bool timing = false;
    app.add_option("--out", out_path, "write the JSON report here (default stdout)");
    app.add_option("--seed", seed, "PRNG seed, echoed in the report");
    app.add_flag("--timing", timing, "include wall time (makes reports non-reproducible)");

    ToroidalSuiteConfig tor;
    std::vector<std::string> tor_mus{"0", "1", "1/2"};
    std::string tor_alg = "sl2";
    auto* c_tor = app.add_subcommand("verify-toroidal", "bracket and form axioms");
    c_tor->add_option("--N", tor.N);
    c_tor->add_option("--mu", tor_mus, "one or more values of mu");
    c_tor->add_option("--algebra", tor_alg);
    c_tor->add_option("--samples", tor.samples);
    c_tor->add_option("--j-bound", tor.j_bound);
    c_tor->add_option("--r-bound", tor.r_bound);

    EmbeddingSuiteConfig emb;
    std::vector<std::string> sigmas;
    auto* c_emb = app.add_subcommand("verify-embedding", "the twisted embedding of Vir-bar");
    c_emb->add_option("--sigma", sigmas, "one or more values of sigma");
    c_emb->add_option("--mode-bound", emb.mode_bound);

    ActionOptions act;
    ActionSuiteConfig acfg;
    std::string points;
    std::size_t lattice_samples = 0;
    bool with_virasoro = false;
    auto* c_act = app.add_subcommand("verify-action", "commutator preservation on a truncated module");
    act.attach(c_act);
    c_act->add_option("--depth", acfg.max_depth, "weight window depth");
    c_act->add_option("--lattice-bound", acfg.lattice_bound);
    c_act->add_option("--points", points, "lattice points 'a,b;c,d' (default: the whole box)");
    c_act->add_option("--lattice-samples", lattice_samples, "random lattice points instead of the box");
    c_act->add_option("--j-bound", acfg.j_bound);
    c_act->add_option("--r-bound", acfg.r_bound);
    c_act->add_option("--vectors-per-pair", acfg.vectors_per_pair, "0 checks every safe vector");
    c_act->add_option("--pair-samples", acfg.pair_samples, "0 checks every pair");
    c_act->add_option("--exhaustive-pairs", acfg.exhaustive_pairs, "sampled pairs checked on every safe vector");
    c_act->add_flag("--virasoro", with_virasoro, "also check the Virasoro rank");

    ChargeSuiteConfig chg;
    SugawaraSuiteConfig sug;
    auto* c_sug = app.add_subcommand("sugawara", "central charges and Sugawara relations");
    c_sug->add_option("--samples", chg.samples);
    c_sug->add_option("--depth", sug.depth);
    c_sug->add_option("--mode-bound", sug.mode_bound);

    CharacterSuiteConfig chr;
    bool chr_rank_zero = false;
    std::string csv_path;
    auto* c_chr = app.add_subcommand("char", "graded characters against the partition series");
    c_chr->add_flag("--thm56", chr_rank_zero, "rank-zero module (N=12)");
    c_chr->add_option("--N", chr.N);
    c_chr->add_option("--depth", chr.depth);
    c_chr->add_option("--lattice-bound", chr.lattice_bound);
    c_chr->add_option("--lattice-samples", chr.lattice_samples, "0 uses the whole box");
    c_chr->add_option("--materialize-depth", chr.materialize_depth);
    c_chr->add_option("--csv", csv_path, "CSV export of the character table");

    ActionOptions sng;
    int max_degree = 3;
    std::string sng_points = "0,0";
    auto* c_sng = app.add_subcommand("singular-scan", "singular vectors above the top");
    sng.attach(c_sng);
    c_sng->add_option("--max-degree", max_degree);
    c_sng->add_option("--points", sng_points, "lattice points 'a,b;c,d'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const auto t0 = std::chrono::steady_clock::now();
    json report;
    std::vector<SuiteReport> suites;
    try {
        if (*c_tor) {
            tor.table = load_algebra(tor_alg);
            tor.seed = seed;
            for (const auto& m : tor_mus) {
                tor.mu = parse_q(m, "mu");
                suites.push_back(toroidal_suite(tor));
                suites.push_back(form_suite(tor));
            }
        } else if (*c_emb) {
            if (!sigmas.empty()) {
                emb.sigmas.clear();
                for (const auto& s : sigmas) emb.sigmas.push_back(parse_q(s, "sigma"));
            }
            suites.push_back(embedding_suite(emb));
        } else if (*c_act) {
            acfg.params = act.build();
            acfg.seed = seed;
            acfg.threads = env_threads();
            if (!points.empty()) acfg.points = parse_points(points, acfg.params.N);
            if (lattice_samples > 0) {
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<int> d(-acfg.lattice_bound, acfg.lattice_bound);
                acfg.points.push_back(std::vector<int>(acfg.params.N, 0));
                while (acfg.points.size() < lattice_samples + 1) {
                    std::vector<int> s(acfg.params.N);
                    for (auto& x : s) x = d(rng);
                    acfg.points.push_back(s);
                }
            }
            suites.push_back(action_suite(acfg));
            if (with_virasoro) {
                auto pts = acfg.points.empty() ? std::vector<std::vector<int>>{std::vector<int>(acfg.params.N, 0)} : acfg.points;
                suites.push_back(virasoro_suite(acfg.params, std::max(0, acfg.max_depth - 2), pts));
            }
        } else if (*c_sug) {
            chg.seed = seed;
            suites.push_back(charge_suite(chg));
            suites.push_back(sugawara_suite(sug));
        } else if (*c_chr) {
            if (chr_rank_zero) chr.N = 12;
            chr.seed = seed;
            CharacterTable table;
            suites.push_back(character_suite(chr, &table));
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw ConfigError("cannot write " + csv_path);
                csv << table.to_csv();
            }
        } else if (*c_sng) {
            ActionParams p = sng.build();
            suites.push_back(singular_suite(p, max_degree, parse_points(sng_points, p.N)));
        }
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ActionError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CriticalLevelError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    }

    bool pass = true;
    json js = json::array();
    for (const auto& s : suites) {
        pass = pass && s.pass();
        js.push_back(s.to_json());
    }
    report = {{"command", app.get_subcommands().front()->get_name()}, {"seed", seed}, {"suites", js}, {"pass", pass}};
    if (timing) report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitConfig;
        }
        f << text;
        for (const auto& s : suites) std::cout << s.suite << (s.pass() ? ": pass\n" : ": FAIL\n") << s.summary();
    }
    return pass ? 0 : kExitFail;
}
