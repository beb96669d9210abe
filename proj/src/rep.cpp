#include "toralg/rep.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace toralg {

using SK = SpanningElement::Kind;

ActionParams ActionParams::rank_zero_point(int n) {
    ActionParams p;
    p.N = n;
    p.mu = 1;
    p.c = 1;
    p.table = std::make_shared<SimpleLieTable>(make_zero_algebra());
    p.rank_zero = true;
    p.fbar_trivial = true;
    p.d0_shift = 1;
    return p;
}

void ActionParams::validate() const {
    if (c.is_zero()) throw ActionError("c must be nonzero");
    if (N < 1) throw ActionError("N must be at least 1");
    if (!alpha.empty() && static_cast<int>(alpha.size()) != N) throw ActionError("alpha must have N components");
    if (!beta.empty() && static_cast<int>(beta.size()) != N) throw ActionError("beta must have N components");
    if (rank_zero && !unchecked) {
        if (N != 12 || mu != Rational(1) || c != Rational(1))
            throw ActionError("the rank-zero mode requires N = 12 and mu = c = 1");
        if (table && !table->empty()) throw ActionError("the rank-zero mode requires the zero finite algebra");
    }
}

nlohmann::json ActionParams::to_json() const {
    auto rv = [](const std::vector<Rational>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(x.str());
        return a;
    };
    return {{"N", N},
            {"mu", mu.str()},
            {"c", c.str()},
            {"algebra", table ? table->name : "zero"},
            {"alpha", rv(alpha)},
            {"beta", beta},
            {"V", v_rep == TopSpace::Rep::Adjoint ? "adjoint" : "trivial"},
            {"W", w_rep == TopSpace::Rep::Adjoint ? "adjoint" : "trivial"},
            {"hbar", hbar.str()},
            {"rank_zero_mode", rank_zero},
            {"fbar_trivial", fbar_trivial},
            {"d0_shift", d0_shift.str()}};
}

void LinearOp::add(const LinearOp& o, const Rational& scale) {
    if (scale.is_zero()) return;
    for (const auto& t : o.terms) {
        auto it = std::find_if(terms.begin(), terms.end(),
                               [&](const Term& x) { return x.node == t.node && x.power == t.power; });
        if (it == terms.end()) {
            terms.push_back({t.coeff * scale, t.node, t.power});
        } else {
            it->coeff += t.coeff * scale;
        }
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(), [](const Term& x) { return x.coeff.is_zero(); }), terms.end());
    identity += o.identity * scale;
}

Grade Grade::operator+(const Grade& o) const {
    Grade g{depth + o.depth, s};
    for (std::size_t p = 0; p < s.size(); ++p) g.s[p] += o.s[p];
    return g;
}

ActionContext::ActionContext(ActionParams params)
    : params_(std::move(params)),
      alg_(params_.N, params_.mu,
           params_.table ? params_.table : std::make_shared<SimpleLieTable>(make_zero_algebra())) {
    params_.validate();
    if (!params_.table) params_.table = alg_.table;
    if (params_.alpha.empty()) params_.alpha.assign(params_.N, Rational(0));
    if (params_.beta.empty()) params_.beta.assign(params_.N, 0);
    sl_ = params_.N >= 2 ? std::make_shared<SimpleLieTable>(make_sl(params_.N))
                         : std::make_shared<SimpleLieTable>(make_zero_algebra());
    gamma0_ = central_character_gamma0(params_.c, params_.mu, params_.N);
    cbar_ = barred_charges(gamma0_, Rational(1, params_.N)).cbar_vir;

    pool_ = std::make_shared<FieldPool>(params_.N);
    auto hyp = std::make_shared<HypModule>(params_.N, params_.alpha, params_.beta);
    ModuleSpec spec;
    spec.alg = ModeAlgebra::fbar({params_.table, sl_});
    spec.central[kLevel0] = params_.c;
    spec.central[kLevel0 + 1] = Rational(1) - params_.mu * params_.c;
    spec.central[kCVirBar] = cbar_;
    spec.h = params_.hbar;
    spec.top = TopSpace::make(spec.alg.blocks, {params_.v_rep, params_.w_rep});
    auto fbar = std::make_shared<ModeModule>(std::move(spec));
    module_ = std::make_shared<TensorModule>(hyp, fbar, params_.fbar_trivial);
    engine_ = std::make_unique<VertexEngine>(pool_, module_);
}

std::unique_ptr<ActionContext> build_module(const ActionParams& params) { return std::make_unique<ActionContext>(params); }

int ActionContext::omega_hyp() {
    if (omega_hyp_ >= 0) return omega_hyp_;
    std::vector<std::pair<Rational, int>> t;
    for (int p = 1; p <= params_.N; ++p) {
        if (p == 1 && params_.drop_omega_summand) continue;
        t.emplace_back(1, pool_->prod(pool_->u(p), pool_->v(p)));
    }
    omega_hyp_ = pool_->sum(t);
    return omega_hyp_;
}

int ActionContext::omega_total() {
    if (omega_total_ >= 0) return omega_total_;
    omega_total_ = params_.fbar_trivial ? omega_hyp() : pool_->sum({{1, omega_hyp()}, {1, pool_->vir()}});
    return omega_total_;
}

std::vector<Rational> ActionContext::sl_vector(const Matrix& m) const {
    if (sl_->empty()) return {};
    return sl_coordinates(m, params_.N);
}

int ActionContext::current_node(int block, const std::vector<Rational>& coords) {
    bool zero = std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x.is_zero(); });
    if (coords.empty() || zero) return -1;
    return pool_->current(block, coords);
}

Grade ActionContext::grade(int j, const std::vector<int>& r) const {
    int rb = 0;
    for (int p = 0; p < params_.N; ++p) rb += r[p] * params_.beta[p];
    return Grade{-j - rb, r};
}

Grade ActionContext::grade(const SpanningElement& e) const {
    if (e.kind == SK::D0) return Grade{0, std::vector<int>(params_.N, 0)};
    return grade(e.j, e.r);
}

LinearOp ActionContext::general_operator(const SpanningElement& e) {
    const int n = params_.N;
    FieldPool& P = *pool_;
    LinearOp op;
    const int j = e.j;
    const std::vector<int> r = e.r.empty() ? std::vector<int>(n, 0) : e.r;
    auto term = [&](const Rational& c, int node, int power) {
        if (!c.is_zero() && node >= 0) op.terms.push_back({c, node, power});
    };
    auto sum2 = [&](int x, int y) {
        if (x < 0) return y;
        if (y < 0) return x;
        return P.sum({{1, x}, {1, y}});
    };
    auto mat = [&]() { return Matrix(n, std::vector<Rational>(n)); };
    // sum_p r_p psi(E_{p s}) for column s (0-based)
    auto psi_column = [&](int s) {
        Matrix m = mat();
        for (int p = 0; p < n; ++p) m[p][s] += Rational(r[p]);
        for (int q = 0; q < n; ++q) m[q][q] -= Rational(r[s], n);
        return m;
    };
    const int ex = P.exp(r);
    switch (e.kind) {
        case SK::Center:
            if (e.a == 0) {
                term(params_.c, ex, -j);
            } else {
                term(params_.c, P.prod(P.u(e.a), ex), -j - 1);
            }
            break;
        case SK::Current: {
            std::vector<Rational> coords(params_.table->dim());
            coords.at(e.a) = 1;
            term(1, P.prod(current_node(0, coords), ex), -j - 1);
            break;
        }
        case SK::D0:
            term(-1, omega_total(), -2);
            op.identity = params_.d0_shift;
            break;
        case SK::Dp:
            term(1, P.v(e.a), -j - 1);
            break;
        case SK::Dab: {
            const int a = e.a - 1, b = e.b - 1;
            std::vector<Rational> h(2 * n);
            h[n + a] += Rational(r[b]);
            h[n + b] -= Rational(r[a]);
            int node = P.prod(P.heis(h), ex);
            Matrix m = mat();
            for (int p = 0; p < n; ++p) {
                if (p != a) m[p][a] += Rational(r[b] * r[p]);
                if (p != b) m[p][b] -= Rational(r[a] * r[p]);
            }
            m[a][a] += Rational(r[a] * r[b]);
            m[b][b] -= Rational(r[a] * r[b]);
            int cur = current_node(1, sl_vector(m));
            if (cur >= 0) node = sum2(node, P.prod(cur, ex));
            term(1, node, -j - 1);
            break;
        }
        case SK::Dhat: {
            const int a = e.a - 1;
            if (r[a] != 0) {
                std::vector<std::pair<Rational, int>> parts{{1, P.prod(omega_total(), ex)}};
                for (int s = 0; s < n; ++s) {
                    int cur = current_node(1, sl_vector(psi_column(s)));
                    if (cur >= 0) parts.emplace_back(1, P.prod(cur, P.prod(P.u(s + 1), ex)));
                }
                const Rational k = params_.mu * params_.c - Rational(1);
                if (!k.is_zero()) {
                    std::vector<Rational> h(2 * n);
                    for (int p = 0; p < n; ++p) h[p] = Rational(r[p]);
                    parts.emplace_back(k, P.prod(P.deriv(P.heis(h)), ex));
                }
                term(Rational(r[a]), P.sum(parts), -j - 2);
            }
            if (j != 0) {
                int node = P.prod(P.v(e.a), ex);
                int cur = current_node(1, sl_vector(psi_column(a)));
                if (cur >= 0) node = sum2(node, P.prod(cur, ex));
                term(Rational(j), node, -j - 1);
            }
            break;
        }
    }
    return op;
}

LinearOp ActionContext::rank_zero_operator(const SpanningElement& e) {
    const int n = params_.N;
    FieldPool& P = *pool_;
    LinearOp op;
    const int j = e.j;
    const std::vector<int> r = e.r.empty() ? std::vector<int>(n, 0) : e.r;
    const int ex = P.exp(r);
    auto term = [&](const Rational& c, int node, int power) {
        if (!c.is_zero()) op.terms.push_back({c, node, power});
    };
    switch (e.kind) {
        case SK::Center:
            term(1, e.a == 0 ? ex : P.prod(P.u(e.a), ex), e.a == 0 ? -j : -j - 1);
            break;
        case SK::Current:
            throw ActionError("the rank-zero algebra has no current elements");
        case SK::D0:
            term(-1, omega_hyp(), -2);
            op.identity = 1;
            break;
        case SK::Dp:
            term(1, P.v(e.a), -j - 1);
            break;
        case SK::Dab: {
            std::vector<Rational> h(2 * n);
            h[n + e.a - 1] += Rational(r[e.b - 1]);
            h[n + e.b - 1] -= Rational(r[e.a - 1]);
            term(1, P.prod(P.heis(h), ex), -j - 1);
            break;
        }
        case SK::Dhat:
            term(Rational(r[e.a - 1]), P.prod(omega_hyp(), ex), -j - 2);
            term(Rational(j), P.prod(P.v(e.a), ex), -j - 1);
            break;
    }
    return op;
}

const LinearOp& ActionContext::spanning_operator(const SpanningElement& e) {
    if (auto it = ops_.find(e); it != ops_.end()) return it->second;
    LinearOp op = params_.rank_zero ? rank_zero_operator(e) : general_operator(e);
    return ops_.emplace(e, std::move(op)).first->second;
}

LinearOp ActionContext::represent(const TorElement& x) {
    LinearOp op;
    for (const auto& [e, coeff] : decompose_gdiv(x, alg_, params_.c)) op.add(spanning_operator(e), coeff);
    return op;
}

SparseVec ActionContext::apply(const LinearOp& op, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& t : op.terms) acc.add(engine_->moment(t.node, t.power, v), t.coeff);
    acc.add(v, op.identity);
    return acc.take();
}

WindowIndex::WindowIndex(TensorModule& module, int max_depth, int lattice_bound)
    : WindowIndex(module, max_depth, lattice_bound, lattice_box(module.hyp().rank(), lattice_bound)) {}

WindowIndex::WindowIndex(TensorModule& module, int max_depth, int lattice_bound, const std::vector<std::vector<int>>& points)
    : max_depth_(max_depth), bound_(lattice_bound) {
    if (max_depth < 0 || lattice_bound < 0) throw ActionError("empty window");
    for (const auto& s : points)
        for (int d = 0; d <= max_depth; ++d) {
            auto ids = module.slice(d, s);
            total_ += ids.size();
            if (!ids.empty()) slices_.emplace(std::make_pair(d, s), std::move(ids));
        }
}

std::vector<std::uint64_t> WindowIndex::all() const {
    std::vector<std::uint64_t> out;
    for (const auto& [k, ids] : slices_) out.insert(out.end(), ids.begin(), ids.end());
    return out;
}

bool WindowIndex::inside(int depth, const std::vector<int>& s) const {
    if (depth < 0) return true;  // the image is zero
    if (depth > max_depth_) return false;
    for (int x : s)
        if (x < -bound_ || x > bound_) return false;
    return true;
}

std::vector<const std::vector<std::uint64_t>*> WindowIndex::safe_slices(const Grade& gx, const Grade& gy) const {
    std::vector<const std::vector<std::uint64_t>*> out;
    const Grade gxy = gx + gy;
    for (const auto& [key, ids] : slices_) {
        const auto& [d, s] = key;
        bool ok = true;
        for (const Grade* g : {&gx, &gy, &gxy}) {
            Grade img = Grade{d, s} + *g;
            if (!inside(img.depth, img.s)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(&ids);
    }
    return out;
}

std::vector<std::uint64_t> WindowIndex::safe_zone(const Grade& gx, const Grade& gy) const {
    std::vector<std::uint64_t> out;
    for (const auto* ids : safe_slices(gx, gy)) out.insert(out.end(), ids->begin(), ids->end());
    return out;
}

std::size_t WindowIndex::safe_count(const Grade& gx, const Grade& gy) const {
    std::size_t n = 0;
    for (const auto* ids : safe_slices(gx, gy)) n += ids->size();
    return n;
}

std::string describe_state(TensorModule& module, const SparseVec& v, std::size_t max_terms) {
    if (v.is_zero()) return "0";
    std::string s;
    std::size_t k = 0;
    for (const auto& [id, c] : v) {
        if (k == max_terms) {
            s += " + ... (" + std::to_string(v.size()) + " terms)";
            break;
        }
        s += (k ? " + " : "") + ("(" + c.str() + ") " + module.describe(id));
        ++k;
    }
    return s;
}

nlohmann::json CommutatorReport::to_json() const {
    nlohmann::json j{{"x", x.str()},
                     {"y", y.str()},
                     {"safe_count", safe_count},
                     {"checked", checked},
                     {"residual_zero", residual_zero},
                     {"skipped", skipped}};
    if (witness) j["witness"] = {{"vector", witness_text}, {"residual", residual_text}};
    return j;
}

CommutatorReport verify_commutator(ActionContext& ctx, const SpanningElement& x, const SpanningElement& y,
                                   const std::vector<std::uint64_t>& vectors) {
    CommutatorReport rep;
    rep.x = x;
    rep.y = y;
    rep.safe_count = vectors.size();
    if (vectors.empty()) {
        rep.skipped = true;
        return rep;
    }
    const LinearOp& X = ctx.spanning_operator(x);
    const LinearOp& Y = ctx.spanning_operator(y);
    const AlgebraParams& alg = ctx.algebra();
    const Rational& c = ctx.params().c;
    const LinearOp Z = ctx.represent(bracket(spanning_value(x, alg, c), spanning_value(y, alg, c), alg));
    for (auto id : vectors) {
        SparseVec v(id);
        SparseVec lhs = ctx.apply(X, ctx.apply(Y, v)) - ctx.apply(Y, ctx.apply(X, v));
        SparseVec diff = lhs - ctx.apply(Z, v);
        ++rep.checked;
        if (!diff.is_zero()) {
            rep.residual_zero = false;
            rep.witness = id;
            rep.witness_text = ctx.module().describe(id);
            rep.residual_text = describe_state(ctx.module(), diff);
            break;
        }
    }
    return rep;
}

CommutatorReport verify_commutator(ActionContext& ctx, const SpanningElement& x, const SpanningElement& y,
                                   const WindowIndex& window, std::size_t sample, std::uint64_t seed) {
    auto slices = window.safe_slices(ctx.grade(x), ctx.grade(y));
    std::size_t total = 0;
    for (const auto* s : slices) total += s->size();
    std::vector<std::uint64_t> vectors;
    if (sample == 0 || sample >= total) {
        for (const auto* s : slices) vectors.insert(vectors.end(), s->begin(), s->end());
    } else {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> picks;
        while (picks.size() < sample) {
            std::size_t k = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
            if (std::find(picks.begin(), picks.end(), k) == picks.end()) picks.push_back(k);
        }
        std::sort(picks.begin(), picks.end());
        std::size_t base = 0, pi = 0;
        for (const auto* s : slices) {
            while (pi < picks.size() && picks[pi] < base + s->size()) vectors.push_back((*s)[picks[pi++] - base]);
            base += s->size();
        }
    }
    CommutatorReport rep = verify_commutator(ctx, x, y, vectors);
    rep.safe_count = total;
    return rep;
}

nlohmann::json VirasoroRankReport::to_json() const {
    nlohmann::json obs = nlohmann::json::array();
    for (const auto& o : observed) obs.push_back(o.str());
    return {{"expected", expected.str()}, {"observed", obs}, {"checked", checked}, {"pass", pass}, {"failure", failure}};
}

VirasoroRankReport verify_virasoro_rank(ActionContext& ctx, const std::vector<std::uint64_t>& vectors) {
    VirasoroRankReport rep;
    rep.expected = (Rational(2 * ctx.params().N) + ctx.cbar_vir()) / Rational(2);
    if (vectors.empty()) throw ActionError("window too small");
    const int w = ctx.omega_total();
    VertexEngine& E = ctx.engine();
    auto Lm = [&](int n, const SparseVec& v) { return E.moment(w, -n - 2, v); };
    for (auto id : vectors) {
        SparseVec v(id);
        SparseVec out = Lm(2, Lm(-2, v)) - Lm(-2, Lm(2, v));
        out.add_scaled(Lm(0, v), Rational(-4));
        ++rep.checked;
        Rational scalar = out.coeff(id);
        rep.observed.push_back(scalar);
        SparseVec expect(id, rep.expected);
        if (!(out == expect)) {
            rep.pass = false;
            rep.failure = "on " + ctx.module().describe(id) + ": " + describe_state(ctx.module(), out);
            break;
        }
    }
    return rep;
}

std::vector<std::vector<Rational>> column_nullspace(const std::vector<std::vector<std::pair<std::uint64_t, Rational>>>& cols) {
    struct Reduced {
        std::map<std::uint64_t, Rational> vec;
        std::map<std::size_t, Rational> combo;
    };
    std::map<std::uint64_t, Reduced> by_pivot;
    std::vector<std::vector<Rational>> out;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::map<std::uint64_t, Rational> cur;
        for (const auto& [row, v] : cols[k])
            if (!v.is_zero()) cur[row] += v;
        std::map<std::size_t, Rational> combo{{k, Rational(1)}};
        for (auto it = cur.begin(); it != cur.end();) it = it->second.is_zero() ? cur.erase(it) : std::next(it);
        while (!cur.empty()) {
            const std::uint64_t p = cur.begin()->first;
            auto red = by_pivot.find(p);
            if (red == by_pivot.end()) break;
            const Rational f = cur.begin()->second / red->second.vec.at(p);
            for (const auto& [row, v] : red->second.vec) {
                Rational& slot = cur[row];
                slot -= f * v;
                if (slot.is_zero()) cur.erase(row);
            }
            for (const auto& [col, v] : red->second.combo) {
                Rational& slot = combo[col];
                slot -= f * v;
                if (slot.is_zero()) combo.erase(col);
            }
        }
        if (cur.empty()) {
            std::vector<Rational> null(cols.size());
            for (const auto& [col, v] : combo) null[col] = v;
            out.push_back(std::move(null));
        } else {
            const std::uint64_t p = cur.begin()->first;
            by_pivot.emplace(p, Reduced{std::move(cur), std::move(combo)});
        }
    }
    return out;
}

nlohmann::json SingularScanReport::to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : candidates) c.push_back({{"depth", x.depth}, {"s", x.s}, {"vector", x.text}});
    return {{"max_degree", max_degree},
            {"slices", slices},
            {"raising_operators", raising_operators},
            {"candidate_count", candidates.size()},
            {"candidates", c}};
}

SingularScanReport singular_scan(ActionContext& ctx, int max_degree, const std::vector<std::vector<int>>& points, int r_bound) {
    SingularScanReport rep;
    rep.max_degree = max_degree;
    SpanningWindow win{max_degree + r_bound * std::max(1, static_cast<int>(ctx.params().N)), r_bound};
    std::vector<SpanningElement> lowering;
    for (const auto& e : gdiv_spanning(ctx.algebra(), ctx.params().c, win)) {
        const int g = ctx.grade(e).depth;
        if (g < 0 && g >= -max_degree) lowering.push_back(e);
    }
    rep.raising_operators = lowering.size();
    for (const auto& s : points)
        for (int d = 1; d <= max_degree; ++d) {
            auto basis = ctx.module().slice(d, s);
            if (basis.empty()) continue;
            ++rep.slices;
            std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> rows;
            std::vector<std::vector<std::pair<std::uint64_t, Rational>>> cols(basis.size());
            for (std::size_t k = 0; k < basis.size(); ++k) {
                SparseVec v(basis[k]);
                for (std::size_t o = 0; o < lowering.size(); ++o) {
                    if (ctx.grade(lowering[o]).depth < -d) continue;
                    for (const auto& [id, c] : ctx.apply(lowering[o], v)) {
                        auto [it, ins] = rows.try_emplace({o, id}, rows.size());
                        cols[k].emplace_back(it->second, c);
                    }
                }
            }
            for (const auto& null : column_nullspace(cols)) {
                SingularCandidate cand{d, s, {}, {}};
                std::vector<SparseVec::Entry> raw;
                for (std::size_t k = 0; k < basis.size(); ++k)
                    if (!null[k].is_zero()) raw.emplace_back(basis[k], null[k]);
                cand.vector = SparseVec::from_unsorted(std::move(raw));
                cand.text = describe_state(ctx.module(), cand.vector);
                rep.candidates.push_back(std::move(cand));
            }
        }
    return rep;
}

SingularScanReport singular_scan_modes(ModeModule& module, const std::vector<ModeSym>& raising, int max_degree) {
    SingularScanReport rep;
    rep.max_degree = max_degree;
    rep.raising_operators = raising.size();
    for (int d = 1; d <= max_degree; ++d) {
        auto basis = module.basis_at(d);
        if (basis.empty()) continue;
        ++rep.slices;
        std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> rows;
        std::vector<std::vector<std::pair<std::uint64_t, Rational>>> cols(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t o = 0; o < raising.size(); ++o)
                for (const auto& [id, c] : module.apply(raising[o], basis[k])) {
                    auto [it, ins] = rows.try_emplace({o, id}, rows.size());
                    cols[k].emplace_back(it->second, c);
                }
        for (const auto& null : column_nullspace(cols)) {
            SingularCandidate cand{d, {}, {}, {}};
            std::vector<SparseVec::Entry> raw;
            std::string text;
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (!null[k].is_zero()) {
                    raw.emplace_back(basis[k], null[k]);
                    text += (text.empty() ? "" : " + ") + ("(" + null[k].str() + ") " + module.describe(basis[k]));
                }
            cand.vector = SparseVec::from_unsorted(std::move(raw));
            cand.text = text;
            rep.candidates.push_back(std::move(cand));
        }
    }
    return rep;
}

}  // namespace toralg
