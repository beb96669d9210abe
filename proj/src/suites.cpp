#include "toralg/suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace toralg {

using Kd = SpanningElement::Kind;
using json = nlohmann::json;

namespace {

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

void fail(CheckResult& c, json witness) {
    if (!c.pass) return;
    c.pass = false;
    c.detail["witness"] = std::move(witness);
}

std::shared_ptr<const SimpleLieTable> or_sl2(std::shared_ptr<const SimpleLieTable> t) {
    return t ? t : std::make_shared<SimpleLieTable>(make_sl(2));
}

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (;;) {
        Rational q(num(rng), den(rng));
        if (!nonzero || !q.is_zero()) return q;
    }
}

TorCombination der_part(const TorCombination& x) {
    TorCombination out;
    for (const auto& [s, c] : x)
        if (s.kind == TorSymbol::Kind::Der) out.add(s, c);
    return out;
}

// A g_div element: one spanning value, sometimes plus a scaled second one.
TorElement random_gdiv(const AlgebraParams& alg, const Rational& c, int jb, int rb, std::mt19937_64& rng) {
    TorElement x = spanning_value(random_spanning(alg, c, jb, rb, rng), alg, c);
    if (rng() % 2 == 0) x.add(spanning_value(random_spanning(alg, c, jb, rb, rng), alg, c), random_rational(rng, true));
    return x;
}

// A spanning element of the given degree (bounds ignored), with a random kind.
TorElement random_gdiv_at(const AlgebraParams& alg, const Rational& c, const MultiIndex& m, std::mt19937_64& rng) {
    const int n = alg.N;
    const int j = m[0];
    const std::vector<int> r = m.spatial();
    const bool r_zero = std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
    for (;;) {
        SpanningElement e{Kd::Center, j, r, static_cast<int>(rng() % (n + 1)), 0};
        switch (rng() % 5) {
            case 0:
                if (e.a == m.pivot()) continue;
                break;
            case 1:
                if (alg.lie().dim() == 0) continue;
                e = {Kd::Current, j, r, static_cast<int>(rng() % alg.lie().dim()), 0};
                break;
            case 2:
                if (!r_zero) continue;
                e = j == 0 ? SpanningElement{Kd::D0, 0, r, 0, 0} : SpanningElement{Kd::Dp, j, r, 1 + static_cast<int>(rng() % n), 0};
                break;
            case 3: {
                if (n < 2) continue;
                int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
                if (a == b) continue;
                e = {Kd::Dab, j, r, std::min(a, b), std::max(a, b)};
                break;
            }
            default:
                if (r_zero) continue;
                e = {Kd::Dhat, j, r, 1 + static_cast<int>(rng() % n), 0};
                break;
        }
        TorElement v = spanning_value(e, alg, c);
        if (!v.is_zero()) return v;
    }
}

MultiIndex some_degree(const TorElement& x, std::mt19937_64& rng) {
    auto it = x.begin();
    std::advance(it, static_cast<long>(rng() % x.size()));
    return it->first.m;
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json SuiteReport::to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"count", c.count}, {"detail", c.detail}});
    return {{"suite", suite}, {"config", config}, {"checks", cs}, {"pass", pass()}};
}

std::string SuiteReport::summary() const {
    std::ostringstream out;
    for (const auto& c : checks) out << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.count << ")\n";
    return out.str();
}

SpanningElement random_spanning(const AlgebraParams& alg, const Rational& c, int j_bound, int r_bound, std::mt19937_64& rng,
                                bool sparse) {
    const int n = alg.N;
    std::uniform_int_distribution<int> jd(-j_bound, j_bound), rd(-r_bound, r_bound), kind(0, 5);
    for (;;) {
        const int j = jd(rng);
        std::vector<int> r(n);
        for (auto& x : r) x = (sparse && rng() % 4 != 0) ? 0 : rd(rng);
        SpanningElement e{Kd::D0, 0, std::vector<int>(n, 0), 0, 0};
        switch (kind(rng)) {
            case 0:
                e = {Kd::Center, j, r, static_cast<int>(rng() % (n + 1)), 0};
                if (e.a == e.degree().pivot()) continue;
                break;
            case 1:
                if (alg.lie().dim() == 0) continue;
                e = {Kd::Current, j, r, static_cast<int>(rng() % alg.lie().dim()), 0};
                break;
            case 2:
                if (rng() % 4 != 0) continue;  // d_0 is a single element
                break;
            case 3:
                e = {Kd::Dp, j, std::vector<int>(n, 0), 1 + static_cast<int>(rng() % n), 0};
                break;
            case 4: {
                if (n < 2) continue;
                int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
                if (a == b) continue;
                e = {Kd::Dab, j, r, std::min(a, b), std::max(a, b)};
                break;
            }
            default:
                if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) continue;
                e = {Kd::Dhat, j, r, 1 + static_cast<int>(rng() % n), 0};
                break;
        }
        if (!spanning_value(e, alg, c).is_zero()) return e;
    }
}

TorSymbol random_symbol(const AlgebraParams& alg, int j_bound, int r_bound, std::mt19937_64& rng) {
    const int n = alg.N;
    std::uniform_int_distribution<int> jd(-j_bound, j_bound), rd(-r_bound, r_bound);
    std::vector<int> m(n + 1);
    m[0] = jd(rng);
    for (int p = 1; p <= n; ++p) m[p] = rd(rng);
    const int dim = alg.lie().dim();
    const int kinds = dim > 0 ? 3 : 2;
    const int k = static_cast<int>(rng() % kinds);
    if (k == 0) return {TorSymbol::Kind::Cen, MultiIndex(m), static_cast<int>(rng() % (n + 1))};
    if (k == 1) return {TorSymbol::Kind::Der, MultiIndex(m), static_cast<int>(rng() % (n + 1))};
    return {TorSymbol::Kind::Cur, MultiIndex(m), static_cast<int>(rng() % dim)};
}

json ToroidalSuiteConfig::to_json() const {
    return {{"N", N}, {"mu", mu.str()}, {"algebra", table ? table->name : "sl2"}, {"samples", samples},
            {"j_bound", j_bound}, {"r_bound", r_bound}, {"seed", seed}};
}

SuiteReport toroidal_suite(const ToroidalSuiteConfig& cfg) {
    SuiteReport rep{"verify-toroidal", cfg.to_json(), {}};
    const AlgebraParams alg(cfg.N, cfg.mu, or_sl2(cfg.table));
    const SimpleLieTable* tab = alg.table.get();
    const Rational c = 1;
    std::mt19937_64 rng(cfg.seed);
    auto sym = [&] { return reduce_kassel_center(TorCombination(random_symbol(alg, cfg.j_bound, cfg.r_bound, rng))); };

    CheckResult anti{"antisymmetry (full algebra)"}, jac{"jacobi (full algebra)"}, central{"centrality of degree-zero k_p"};
    std::size_t nested = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        TorElement x = sym(), y = sym(), z = sym();
        if (!bracket(x, bracket(y, z, alg), alg).is_zero()) ++nested;
        ++anti.count;
        if (!(bracket(x, y, alg) + bracket(y, x, alg)).is_zero()) fail(anti, {to_string(x, tab), to_string(y, tab)});
        ++jac.count;
        TorElement j3 = bracket(x, bracket(y, z, alg), alg) + bracket(y, bracket(z, x, alg), alg) + bracket(z, bracket(x, y, alg), alg);
        if (!j3.is_zero()) fail(jac, {{"x", to_string(x, tab)}, {"y", to_string(y, tab)}, {"z", to_string(z, tab)}, {"residual", to_string(j3, tab)}});
        for (int p = 0; p <= cfg.N; ++p) {
            ++central.count;
            if (!bracket(x, cen(MultiIndex::zero(cfg.N + 1), p), alg).is_zero()) fail(central, {to_string(x, tab), p});
        }
    }

    jac.detail["nonzero_nested_brackets"] = nested;
    nested = 0;
    CheckResult anti_d{"antisymmetry (g_div)"}, jac_d{"jacobi (g_div)"}, closure{"closure of g_div under the bracket"};
    for (int i = 0; i < cfg.samples; ++i) {
        TorElement x = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        TorElement y = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        TorElement z = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        TorElement xy = bracket(x, y, alg);
        if (!bracket(z, xy, alg).is_zero()) ++nested;
        ++anti_d.count;
        if (!(xy + bracket(y, x, alg)).is_zero()) fail(anti_d, {to_string(x, tab), to_string(y, tab)});
        ++jac_d.count;
        TorElement j3 = bracket(x, bracket(y, z, alg), alg) + bracket(y, bracket(z, x, alg), alg) + bracket(z, xy, alg);
        if (!j3.is_zero()) fail(jac_d, {{"x", to_string(x, tab)}, {"y", to_string(y, tab)}, {"z", to_string(z, tab)}, {"residual", to_string(j3, tab)}});
        ++closure.count;
        try {
            TorElement back;
            for (const auto& [e, k] : decompose_gdiv(xy, alg, c)) back.add(spanning_value(e, alg, c), k);
            if (back != xy) fail(closure, {{"bracket", to_string(xy, tab)}, {"recomposed", to_string(back, tab)}});
        } catch (const ToroidalError& e) {
            fail(closure, {{"bracket", to_string(xy, tab)}, {"error", e.what()}});
        }
    }

    jac_d.detail["nonzero_nested_brackets"] = nested;
    CheckResult div{"spanning set is divergence free"};
    for (const auto& e : gdiv_spanning(alg, c, {cfg.j_bound, cfg.r_bound})) {
        ++div.count;
        if (!is_divergence_free(der_part(spanning_value(e, alg, c)))) fail(div, e.str());
    }
    rep.checks = {anti, jac, central, anti_d, jac_d, closure, div};
    return rep;
}

SuiteReport form_suite(const ToroidalSuiteConfig& cfg) {
    SuiteReport rep{"verify-form", cfg.to_json(), {}};
    const AlgebraParams alg(cfg.N, cfg.mu, or_sl2(cfg.table));
    const SimpleLieTable& lie = alg.lie();
    const SimpleLieTable* tab = alg.table.get();
    const Rational c = 1;
    std::mt19937_64 rng(cfg.seed ^ 0x5bd1e995u);
    CheckResult sym{"symmetry"}, inv{"invariance (x|[y,z]) = ([x,y]|z)"}, ker{"form vanishes on d(t^m)"};
    std::size_t nontrivial_sym = 0, nontrivial_inv = 0, nontrivial_ker = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        TorElement x = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        TorElement y = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        TorElement z = random_gdiv(alg, c, cfg.j_bound, cfg.r_bound, rng);
        // most of the time force total degree 0 so the form has something to see
        if (rng() % 4 != 0) {
            TorElement yz = bracket(y, z, alg);
            if (!yz.is_zero()) x = random_gdiv_at(alg, c, -some_degree(yz, rng), rng);
        }
        ++sym.count;
        TorElement xs = random_gdiv_at(alg, c, -some_degree(x, rng), rng);
        if (invariant_form(x, xs, lie) != invariant_form(xs, x, lie)) fail(sym, {to_string(x, tab), to_string(xs, tab)});
        if (invariant_form(x, y, lie) != invariant_form(y, x, lie)) fail(sym, {to_string(x, tab), to_string(y, tab)});
        if (!invariant_form(x, xs, lie).is_zero()) ++nontrivial_sym;
        ++inv.count;
        const Rational a = invariant_form(x, bracket(y, z, alg), lie);
        const Rational b = invariant_form(bracket(x, y, alg), z, lie);
        if (!a.is_zero()) ++nontrivial_inv;
        if (a != b) fail(inv, {{"x", to_string(x, tab)}, {"y", to_string(y, tab)}, {"z", to_string(z, tab)}, {"lhs", a.str()}, {"rhs", b.str()}});

        // d(t^m) = sum_p m_p t^m k_p, left unreduced; half the time m is opposite to a term of x
        std::vector<int> m(cfg.N + 1);
        if (rng() % 2 == 0 && !x.is_zero()) {
            auto it = x.begin();
            std::advance(it, static_cast<long>(rng() % x.size()));
            m = (-it->first.m).values();
        } else {
            m[0] = std::uniform_int_distribution<int>(-cfg.j_bound, cfg.j_bound)(rng);
            for (int p = 1; p <= cfg.N; ++p) m[p] = std::uniform_int_distribution<int>(-cfg.r_bound, cfg.r_bound)(rng);
        }
        TorCombination dm;
        for (int p = 0; p <= cfg.N; ++p) dm.add(TorSymbol{TorSymbol::Kind::Cen, MultiIndex(m), p}, Rational(m[p]));
        if (dm.is_zero()) continue;
        ++ker.count;
        bool touches = false;
        for (const auto& [s, k] : x)
            if (s.kind == TorSymbol::Kind::Der && s.m == -MultiIndex(m)) touches = true;
        if (touches) ++nontrivial_ker;
        const Rational f = invariant_form(x, dm, lie);
        if (!f.is_zero()) fail(ker, {{"x", to_string(x, tab)}, {"m", MultiIndex(m).str()}, {"value", f.str()}});
    }
    sym.detail["nonzero_values"] = nontrivial_sym;
    inv.detail["nonzero_values"] = nontrivial_inv;
    ker.detail["pairings_with_matching_degree"] = nontrivial_ker;
    rep.checks = {sym, inv, ker};
    return rep;
}

json EmbeddingSuiteConfig::to_json() const {
    return {{"sigmas", rationals(sigmas)}, {"mode_bound", mode_bound}, {"algebra", table ? table->name : "sl2"}};
}

SuiteReport embedding_suite(const EmbeddingSuiteConfig& cfg) {
    SuiteReport rep{"verify-embedding", cfg.to_json(), {}};
    auto tab = or_sl2(cfg.table);
    const ModeAlgebra fbar = ModeAlgebra::fbar({tab});
    ModeAlgebra hv = ModeAlgebra::hvir();
    hv.blocks = {tab};
    std::vector<ModeSym> syms{central(kCVirBar), level(0)};
    for (int n = -cfg.mode_bound; n <= cfg.mode_bound; ++n) {
        syms.push_back(Lbar(n));
        for (int i = 0; i < tab->dim(); ++i) syms.push_back(X(0, i, n));
    }
    CheckResult hom{"rho_sigma preserves brackets"};
    std::size_t central_terms = 0;
    for (const auto& sigma : cfg.sigmas)
        for (const auto& x : syms)
            for (const auto& y : syms) {
                ++hom.count;
                const ModeComb lhs = hvir_bracket(rho_sigma(ModeComb(x), sigma), rho_sigma(ModeComb(y), sigma), hv);
                const ModeComb rhs = rho_sigma(mode_bracket(x, y, fbar), sigma);
                for (const auto& [s, k] : rhs)
                    if (s.fam == ModeSym::Fam::Central) {
                        ++central_terms;
                        break;
                    }
                if (lhs != rhs) {
                    std::ostringstream l, r;
                    for (const auto& [s, k] : lhs) l << k << "*" << s.str() << " ";
                    for (const auto& [s, k] : rhs) r << k << "*" << s.str() << " ";
                    fail(hom, {{"sigma", sigma.str()}, {"x", x.str()}, {"y", y.str()}, {"images", l.str()}, {"image_of_bracket", r.str()}});
                }
            }
    hom.detail["brackets_with_central_terms"] = central_terms;

    // The three central symbols of L-bar(n) L-bar(-n) are compared one by one.
    CheckResult cen{"central coefficients of [Lbar(n), Lbar(-n)]"};
    for (const auto& sigma : cfg.sigmas)
        for (int n = 1; n <= cfg.mode_bound; ++n) {
            ++cen.count;
            const ModeComb img = hvir_bracket(rho_sigma(ModeComb(Lbar(n)), sigma), rho_sigma(ModeComb(Lbar(-n)), sigma), hv);
            const Rational nn(n);
            // 2n L(0) plus the images of 2n Lbar(0) and (n^3-n)/12 Cbar
            const Rational cvir = (nn * nn * nn - nn) / Rational(12);
            const Rational cvh = Rational(2) * nn * sigma + cvir * Rational(24) * sigma;
            const Rational chei = -Rational(2) * nn * sigma * sigma / Rational(2) - cvir * Rational(12) * sigma * sigma;
            if (img.coeff(central(kCVir)) != cvir || img.coeff(central(kCVH)) != cvh || img.coeff(central(kCHei)) != chei ||
                img.coeff(L(0)) != Rational(2) * nn)
                fail(cen, {{"sigma", sigma.str()}, {"n", n}});
        }
    rep.checks = {hom, cen};
    return rep;
}

json ChargeSuiteConfig::to_json() const { return {{"samples", samples}, {"seed", seed}}; }

SuiteReport charge_suite(const ChargeSuiteConfig& cfg) {
    SuiteReport rep{"sugawara-charges", cfg.to_json(), {}};
    auto sl2 = std::make_shared<SimpleLieTable>(make_sl(2));
    auto zeros = [](int n) { return std::vector<int>(std::max(0, n - 1), 0); };
    CheckResult spot{"spot values"};
    auto spot_eq = [&](const std::string& what, const Rational& got, const Rational& want) {
        ++spot.count;
        spot.detail[what] = got.str();
        if (got != want) fail(spot, {{"quantity", what}, {"got", got.str()}, {"expected", want.str()}});
    };
    {
        const auto g = central_character_gamma0(1, 0, 2);
        spot_eq("gamma0(c=1,mu=0,N=2).c_vir", g.c_vir, -4);
        const Rational cb = barred_charges(g, Rational(1, 2)).cbar_vir;
        spot_eq("cbar(N=2,mu=0,c=1)", cb, 2);
        spot_eq("cprime(N=2,mu=0,c=1)", sugawara_charges(g.c_g, g.c_sl, cb, *sl2, {0}, 2, zeros(2), 0).c_prime, 0);
        const auto g12 = central_character_gamma0(1, 1, 12);
        spot_eq("cbar(N=12,mu=1,c=1)", barred_charges(g12, Rational(1, 12)).cbar_vir, 0);
    }
    CheckResult c513{"barred charge at sigma=1/N equals the closed form"}, c516{"coset charge equals the closed form"};
    std::mt19937_64 rng(cfg.seed);
    const int ns[] = {2, 3, 5, 12};
    json points = json::array();
    for (int i = 0; i < cfg.samples; ++i) {
        const int n = ns[rng() % 4];
        Rational mu, c;
        do {
            mu = random_rational(rng, false);
            c = random_rational(rng, true);
        } while (c == Rational(-2) || Rational(1) - mu * c == Rational(-n));
        points.push_back({{"N", n}, {"mu", mu.str()}, {"c", c.str()}});
        const auto g = central_character_gamma0(c, mu, n);
        const Rational cb = barred_charges(g, Rational(1, n)).cbar_vir;
        ++c513.count;
        if (cb != cbar_closed_form(mu, c, n)) fail(c513, points.back());
        ++c516.count;
        const Rational cp = sugawara_charges(g.c_g, g.c_sl, cb, *sl2, {0}, n, zeros(n), 0).c_prime;
        if (cp != cprime_closed_form(mu, c, n, *sl2)) fail(c516, points.back());
    }
    c513.detail["points"] = points;
    rep.checks = {spot, c513, c516};
    return rep;
}

json SugawaraSuiteConfig::to_json() const { return {{"depth", depth}, {"mode_bound", mode_bound}, {"level", level.str()}}; }

SuiteReport sugawara_suite(const SugawaraSuiteConfig& cfg) {
    SuiteReport rep{"sugawara", cfg.to_json(), {}};
    auto sl2 = std::make_shared<SimpleLieTable>(make_sl(2));
    auto spec_for = [&](TopSpace::Rep r) {
        ModuleSpec s;
        s.alg = ModeAlgebra::affine({sl2});
        s.central[kLevel0] = cfg.level;
        s.top = TopSpace::make(s.alg.blocks, {r});
        return s;
    };
    ModeModule mod(spec_for(TopSpace::Rep::Trivial));
    const auto basis = mod.basis(cfg.depth);
    const int B = cfg.mode_bound;
    auto sug = [&](int n, const SparseVec& v) { return sugawara_apply(mod, 0, n, v); };

    CheckResult prim{"[L(n), x(m)] = -m x(n+m)"};
    for (int n = -B; n <= B; ++n)
        for (int m = -B; m <= B; ++m)
            for (int i = 0; i < sl2->dim(); ++i)
                for (auto id : basis) {
                    ++prim.count;
                    SparseVec v(id);
                    SparseVec lhs = sug(n, mod.apply(X(0, i, m), v)) - mod.apply(X(0, i, m), sug(n, v));
                    SparseVec rhs = mod.apply(X(0, i, n + m), v);
                    rhs.scale(Rational(-m));
                    if (!(lhs == rhs)) fail(prim, {{"n", n}, {"m", m}, {"x", sl2->basis[i]}, {"vector", mod.describe(id)}});
                }
    const Rational cc = cfg.level * Rational(sl2->dim()) / (cfg.level + Rational(sl2->dual_coxeter));
    CheckResult vir{"Virasoro relations"};
    vir.detail["central_charge"] = cc.str();
    for (int n = -B; n <= B; ++n)
        for (int m = -B; m <= B; ++m)
            for (auto id : basis) {
                ++vir.count;
                SparseVec v(id);
                SparseVec lhs = sug(n, sug(m, v)) - sug(m, sug(n, v));
                SparseVec rhs = sug(n + m, v);
                rhs.scale(Rational(n - m));
                if (n == -m) rhs.add_scaled(v, cc * Rational(n * n * n - n) / Rational(12));
                if (!(lhs == rhs)) fail(vir, {{"n", n}, {"m", m}, {"vector", mod.describe(id)}});
            }

    // Casimir of the adjoint top space, computed from the representation matrices.
    CheckResult cas{"adjoint weight shift -Omega/(2(c+h))"};
    ModeModule adj(spec_for(TopSpace::Rep::Adjoint));
    const TopSpace& top = adj.spec().top;
    const Matrix ginv = sl2->inverse_form();
    Matrix C(top.dim, std::vector<Rational>(top.dim));
    for (int i = 0; i < sl2->dim(); ++i)
        for (int j = 0; j < sl2->dim(); ++j)
            if (!ginv[i][j].is_zero()) {
                Matrix prod = multiply(top.rep[0][i], top.rep[0][j]);
                for (int a = 0; a < top.dim; ++a)
                    for (int b = 0; b < top.dim; ++b) C[a][b] += ginv[i][j] * prod[a][b];
            }
    const Rational omega = C[0][0];
    bool scalar = true;
    for (int a = 0; a < top.dim; ++a)
        for (int b = 0; b < top.dim; ++b)
            if (C[a][b] != (a == b ? omega : Rational(0))) scalar = false;
    ++cas.count;
    cas.detail["omega_oracle"] = omega.str();
    if (!scalar || omega != casimir_eigenvalue(*sl2, sl2->highest_root)) fail(cas, "Casimir mismatch");
    const auto charges = sugawara_charges(cfg.level, 1, 0, *sl2, sl2->highest_root, 2, {0}, 0);
    cas.detail["h_prime"] = charges.h_prime.str();
    ++cas.count;
    const Rational shift = -omega / (Rational(2) * (cfg.level + Rational(sl2->dual_coxeter)));
    if (charges.h_prime != shift) fail(cas, {{"h_prime", charges.h_prime.str()}, {"expected", shift.str()}});
    for (int t = 0; t < top.dim; ++t) {
        ++cas.count;
        SparseVec hw(adj.top_id(t));
        SparseVec l0 = sugawara_apply(adj, 0, 0, hw);
        if (!(l0 == SparseVec(adj.top_id(t), -shift))) fail(cas, {{"L(0) on top", t}});
    }
    rep.checks = {prim, vir, cas};
    return rep;
}

json ActionSuiteConfig::to_json() const {
    json j = params.to_json();
    j["max_depth"] = max_depth;
    j["lattice_bound"] = lattice_bound;
    j["lattice_points"] = points.empty() ? json("box") : json(points);
    j["j_bound"] = j_bound;
    j["r_bound"] = r_bound;
    j["vectors_per_pair"] = vectors_per_pair;
    j["pair_samples"] = pair_samples;
    j["exhaustive_pairs"] = exhaustive_pairs;
    j["seed"] = seed;
    return j;
}

namespace {

struct PairOutcome {
    std::size_t checked = 0;
    std::size_t safe = 0;
    bool skipped = false;
    bool ok = true;
    json witness;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

WindowIndex make_window(ActionContext& ctx, const ActionSuiteConfig& cfg) {
    return cfg.points.empty() ? WindowIndex(ctx.module(), cfg.max_depth, cfg.lattice_bound)
                              : WindowIndex(ctx.module(), cfg.max_depth, cfg.lattice_bound, cfg.points);
}

std::vector<std::uint64_t> sample_ids(const std::vector<std::uint64_t>& all, std::size_t k, std::mt19937_64& rng) {
    if (k == 0 || k >= all.size()) return all;
    std::vector<std::uint64_t> out;
    std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
    return out;
}

}  // namespace

SuiteReport action_suite(const ActionSuiteConfig& cfg) {
    SuiteReport rep{"verify-action", cfg.to_json(), {}};
    ActionContext ctx(cfg.params);
    const Rational& c = cfg.params.c;
    WindowIndex win = make_window(ctx, cfg);

    std::vector<SpanningElement> elements;
    std::vector<std::pair<SpanningElement, SpanningElement>> pairs;
    if (cfg.pair_samples == 0) {
        elements = gdiv_spanning(ctx.algebra(), c, {cfg.j_bound, cfg.r_bound});
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t k = i; k < elements.size(); ++k) pairs.emplace_back(elements[i], elements[k]);
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t i = 0; i < cfg.pair_samples; ++i) {
            auto x = random_spanning(ctx.algebra(), c, cfg.j_bound, cfg.r_bound, rng, i % 2 == 0);
            auto y = random_spanning(ctx.algebra(), c, cfg.j_bound, cfg.r_bound, rng, i % 3 == 0);
            pairs.emplace_back(x, y);
        }
        std::mt19937_64 erng(cfg.seed ^ 0xabcdefu);
        for (std::size_t i = 0; i < std::min<std::size_t>(cfg.pair_samples, 400); ++i)
            elements.push_back(random_spanning(ctx.algebra(), c, cfg.j_bound, cfg.r_bound, erng, i % 2 == 0));
    }

    // commutators, fanned out over workers with their own caches
    std::vector<PairOutcome> outcomes(pairs.size());
    const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(pairs.size())));
    auto work = [&](int t, ActionContext& wctx, const WindowIndex& wwin) {
        for (std::size_t i = t; i < pairs.size(); i += threads) {
            const auto& [x, y] = pairs[i];
            auto r = verify_commutator(wctx, x, y, wwin, cfg.vectors_per_pair, mix_seed(cfg.seed, i));
            PairOutcome& o = outcomes[i];
            o.checked = r.checked;
            o.safe = r.safe_count;
            o.skipped = r.skipped;
            o.ok = r.residual_zero;
            if (!o.ok) o.witness = r.to_json();
        }
    };
    if (threads == 1) {
        work(0, ctx, win);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                ActionContext wctx(cfg.params);
                WindowIndex wwin = make_window(wctx, cfg);
                work(t, wctx, wwin);
            });
        for (auto& th : pool) th.join();
    }
    CheckResult comm{"[rho(x), rho(y)] = rho([x, y])"};
    std::size_t vectors = 0, skipped = 0, failures = 0;
    for (const auto& o : outcomes) {
        vectors += o.checked;
        skipped += o.skipped;
        if (!o.ok) {
            ++failures;
            fail(comm, o.witness);
        }
    }
    comm.count = pairs.size();
    comm.detail = {{"pairs", pairs.size()}, {"vectors_checked", vectors}, {"pairs_with_empty_safe_zone", skipped},
                   {"failing_pairs", failures}, {"window_size", win.size()}, {"spanning_elements", elements.size()}};
    for (const auto& o : outcomes)
        if (!o.ok) {
            comm.detail["witness"] = o.witness;
            break;
        }

    CheckResult full{"every safe vector for sampled pairs"};
    if (cfg.exhaustive_pairs > 0 && !pairs.empty()) {
        std::mt19937_64 prng(cfg.seed ^ 0xfeedu);
        std::size_t vecs = 0;
        for (std::size_t i = 0; i < cfg.exhaustive_pairs; ++i) {
            const auto& [x, y] = pairs[prng() % pairs.size()];
            auto r = verify_commutator(ctx, x, y, win, 0, 0);
            ++full.count;
            vecs += r.checked;
            if (!r.residual_zero) fail(full, r.to_json());
        }
        full.detail["vectors_checked"] = vecs;
    }

    // gradings of single operators
    CheckResult grading{"operators shift (depth, s) by their grade"};
    std::mt19937_64 rng(cfg.seed ^ 0x1234567u);
    const auto all = win.all();
    for (const auto& e : elements) {
        const Grade g = ctx.grade(e);
        for (auto id : sample_ids(all, 3, rng)) {
            ++grading.count;
            const int d = ctx.module().depth(id);
            std::vector<int> s = ctx.module().lattice(id);
            for (std::size_t p = 0; p < s.size(); ++p) s[p] += g.s[p];
            for (const auto& [w, k] : ctx.apply(e, SparseVec(id)))
                if (ctx.module().depth(w) != d + g.depth || ctx.module().lattice(w) != s) {
                    fail(grading, {{"element", e.str()}, {"vector", ctx.module().describe(id)}, {"term", ctx.module().describe(w)}});
                    break;
                }
        }
    }

    // zero modes and d_0
    CheckResult zero{"degree-zero elements act by their eigenvalues"};
    const int n = cfg.params.N;
    const std::vector<int> r0(n, 0);
    const auto& alpha = ctx.module().hyp().alpha();
    const auto& beta = ctx.module().hyp().beta();
    const Rational hbar = cfg.params.fbar_trivial ? Rational(0) : cfg.params.hbar;
    for (auto id : sample_ids(all, 50, rng)) {
        SparseVec v(id);
        const bool base = ctx.module().hyp().depth(TensorModule::hyp_part(id)) == 0;
        const auto& s = ctx.module().lattice(id);
        auto expect = [&](const SpanningElement& e, const Rational& ev) {
            ++zero.count;
            SparseVec want(id, ev);
            if (!(ctx.apply(e, v) == want)) fail(zero, {{"element", e.str()}, {"vector", ctx.module().describe(id)}, {"expected", ev.str()}});
        };
        expect({Kd::Center, 0, r0, 0, 0}, c);
        for (int p = 1; p <= n; ++p) {
            expect({Kd::Dp, 0, r0, p, 0}, alpha[p - 1] + Rational(s[p - 1]));
            if (base) expect({Kd::Center, 0, r0, p, 0}, c * Rational(beta[p - 1]));
        }
        expect({Kd::D0, 0, r0, 0, 0}, cfg.params.d0_shift - ctx.module().weight(id) - hbar);
    }
    rep.checks = {comm, grading, zero};
    if (cfg.exhaustive_pairs > 0) rep.checks.insert(rep.checks.begin() + 1, full);

    if (cfg.params.rank_zero) {
        CheckResult same{"rank-zero operators equal the general ones"};
        for (const auto& e : elements) {
            if (e.kind == Kd::Current) continue;
            const LinearOp gen = ctx.general_operator(e);
            const LinearOp rz = ctx.rank_zero_operator(e);
            for (auto id : sample_ids(all, 3, rng)) {
                ++same.count;
                if (!(ctx.apply(gen, SparseVec(id)) == ctx.apply(rz, SparseVec(id))))
                    fail(same, {{"element", e.str()}, {"vector", ctx.module().describe(id)}});
            }
        }
        rep.checks.push_back(same);
    }
    return rep;
}

SuiteReport virasoro_suite(const ActionParams& params, int max_depth, const std::vector<std::vector<int>>& points) {
    json cfg = params.to_json();
    cfg["max_depth"] = max_depth;
    cfg["lattice_points"] = points;
    SuiteReport rep{"virasoro-rank", cfg, {}};
    ActionContext ctx(params);
    WindowIndex win(ctx.module(), max_depth, 0, points);
    CheckResult chk{"([L(2), L(-2)] - 4 L(0)) = c_total/2"};
    auto r = verify_virasoro_rank(ctx, win.all());
    chk.count = r.checked;
    chk.pass = r.pass;
    chk.detail = {{"expected", r.expected.str()},
                  {"observed", r.observed.empty() ? json() : json(r.observed.front().str())},
                  {"total_central_charge", (r.expected * Rational(2)).str()}};
    if (!r.pass) chk.detail["failure"] = r.failure;
    rep.checks = {chk};
    return rep;
}

SuiteReport singular_suite(const ActionParams& params, int max_degree, const std::vector<std::vector<int>>& points) {
    json cfg = params.to_json();
    cfg["max_degree"] = max_degree;
    cfg["lattice_points"] = points;
    SuiteReport rep{"singular-scan", cfg, {}};
    ActionContext ctx(params);
    auto scan = singular_scan(ctx, max_degree, points);
    CheckResult empty{"no singular vectors above the top"};
    empty.count = scan.slices;
    empty.pass = scan.candidates.empty();
    std::map<int, int> per_degree;
    for (const auto& cnd : scan.candidates) ++per_degree[cnd.depth];
    json first = json::array();
    for (std::size_t i = 0; i < scan.candidates.size() && i < 5; ++i)
        first.push_back({{"depth", scan.candidates[i].depth}, {"s", scan.candidates[i].s}, {"vector", scan.candidates[i].text}});
    json pd = json::object();
    for (const auto& [d, k] : per_degree) pd[std::to_string(d)] = k;
    empty.detail = {{"raising_operators", scan.raising_operators}, {"candidates", scan.candidates.size()}, {"per_degree", pd}, {"first", first}};

    // planted fixture: Virasoro Verma module with h = 0, c = 0 has L(-1)|h> singular
    auto vir_module = [](const Rational& h) {
        ModuleSpec s;
        s.alg.virbar = true;
        s.central[kCVirBar] = 0;
        s.h = h;
        s.top = TopSpace::make({}, {});
        return ModeModule(std::move(s));
    };
    CheckResult planted{"planted Virasoro null vector detected"};
    ModeModule null_mod = vir_module(0);
    auto hit = singular_scan_modes(null_mod, {Lbar(1), Lbar(2)}, 1);
    ++planted.count;
    const SparseVec want(null_mod.intern({Lbar(-1)}, 0));
    if (hit.candidates.size() != 1 || !(hit.candidates[0].vector == want)) fail(planted, hit.to_json());
    planted.detail["found"] = hit.candidates.empty() ? json() : json(hit.candidates[0].text);
    ModeModule generic = vir_module(Rational(2, 7));
    ++planted.count;
    if (!singular_scan_modes(generic, {Lbar(1), Lbar(2)}, 1).candidates.empty()) fail(planted, "candidate at generic h");
    rep.checks = {empty, planted};
    return rep;
}

json CharacterSuiteConfig::to_json() const {
    return {{"N", N}, {"depth", depth}, {"lattice_bound", lattice_bound}, {"lattice_samples", lattice_samples},
            {"materialize_depth", materialize_depth}, {"seed", seed}};
}

SuiteReport character_suite(const CharacterSuiteConfig& cfg, CharacterTable* table_out) {
    SuiteReport rep{"char", cfg.to_json(), {}};
    const int colors = 2 * cfg.N;
    std::vector<std::vector<int>> points;
    if (cfg.lattice_samples == 0) {
        points = lattice_box(cfg.N, cfg.lattice_bound);
    } else {
        points.push_back(std::vector<int>(cfg.N, 0));
        points.push_back(std::vector<int>(cfg.N, cfg.lattice_bound));
        points.push_back(std::vector<int>(cfg.N, -cfg.lattice_bound));
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> d(-cfg.lattice_bound, cfg.lattice_bound);
        for (std::size_t i = 0; i < cfg.lattice_samples; ++i) {
            std::vector<int> s(cfg.N);
            for (auto& x : s) x = d(rng);
            if (std::find(points.begin(), points.end(), s) == points.end()) points.push_back(s);
        }
    }
    HypModule hyp(cfg.N, {}, {});
    CharacterTable table = graded_character(hyp, cfg.depth, points, Rational(1), cfg.materialize_depth);

    CheckResult agree{"series algorithms agree"};
    const int far = std::max(cfg.depth, 50);
    agree.count = far + 1;
    if (series_direct(colors, far).coeffs != series_euler(colors, far).coeffs) fail(agree, "direct and Euler expansions differ");
    const SeriesExpansion series = series_direct(colors, cfg.depth);
    agree.detail["series"] = series.str();

    // multisets of colored parts of total size <= 3
    CheckResult spot{"low coefficients by counting multisets"};
    const mpz_class k = colors;
    std::vector<mpz_class> hand{1, k, k + k * (k + 1) / 2, k + k * k + k * (k + 1) * (k + 2) / 6};
    for (std::size_t i = 0; i < hand.size() && i < series.coeffs.size(); ++i) {
        ++spot.count;
        if (hand[i] != series.coeffs[i]) fail(spot, {{"n", i}, {"hand", hand[i].get_str()}, {"series", series.coeffs[i].get_str()}});
    }

    CheckResult cmp{"graded dimensions equal the series"};
    auto res = compare_character(table, series);
    cmp.count = res.checked;
    cmp.pass = res.pass;
    cmp.detail = res.to_json();

    CheckResult indep{"dimensions independent of s"};
    CheckResult d0{"d_0 eigenvalue is 1 - depth"};
    for (const auto& [key, e] : table.entries) {
        ++indep.count;
        ++d0.count;
        if (e.dim != table.at(key.first, points.front())) fail(indep, {{"depth", key.first}, {"s", key.second}});
        if (e.d0 != Rational(1 - key.first)) fail(d0, {{"depth", key.first}, {"d0", e.d0.str()}});
    }
    json dims = json::array();
    for (int n = 0; n <= cfg.depth; ++n) dims.push_back(table.at(n, points.front()));
    cmp.detail["dimensions"] = dims;
    cmp.detail["lattice_points"] = points.size();
    rep.checks = {agree, spot, cmp, indep, d0};
    if (table_out) *table_out = std::move(table);
    return rep;
}

int env_threads() {
    const char* v = std::getenv("TORALG_THREADS");
    if (!v) return 1;
    try {
        return std::max(1, std::stoi(v));
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace toralg
