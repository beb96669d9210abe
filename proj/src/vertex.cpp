#include "toralg/vertex.hpp"

#include <algorithm>
#include <sstream>

namespace toralg {

using Kind = FieldNode::Kind;

namespace {

std::string vec_key(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& x : v) s += x.str() + ",";
    return s;
}

std::string ivec_key(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x) + ",";
    return s;
}

}  // namespace

int FieldPool::add(FieldNode n, const std::string& key) {
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (n.charge.empty()) n.charge.assign(n_, 0);
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(key, id);
    return id;
}

int FieldPool::vacuum() { return add(FieldNode{}, "1"); }

int FieldPool::heis(const std::vector<Rational>& coords) {
    if (static_cast<int>(coords.size()) != 2 * n_) throw VertexError("Heisenberg vector must have 2N coordinates");
    FieldNode f;
    f.kind = Kind::Heis;
    f.vec = coords;
    f.wt = 1;
    return add(std::move(f), "H" + vec_key(coords));
}

int FieldPool::u(int p) {
    std::vector<Rational> c(2 * n_);
    c.at(p - 1) = 1;
    return heis(c);
}

int FieldPool::v(int p) {
    std::vector<Rational> c(2 * n_);
    c.at(n_ + p - 1) = 1;
    return heis(c);
}

int FieldPool::current(int block, const std::vector<Rational>& coords) {
    FieldNode f;
    f.kind = Kind::Current;
    f.block = block;
    f.vec = coords;
    f.wt = 1;
    return add(std::move(f), "X" + std::to_string(block) + ":" + vec_key(coords));
}

int FieldPool::vir() {
    FieldNode f;
    f.kind = Kind::Vir;
    f.wt = 2;
    return add(std::move(f), "L");
}

int FieldPool::exp(const std::vector<int>& r) {
    if (static_cast<int>(r.size()) != n_) throw VertexError("exponential charge must have length N");
    FieldNode f;
    f.kind = Kind::Exp;
    f.r = r;
    f.charge = r;
    f.wt = 0;
    return add(std::move(f), "E" + ivec_key(r));
}

int FieldPool::prod(int a, int b) {
    FieldNode f;
    f.kind = Kind::Prod;
    f.a = a;
    f.b = b;
    f.wt = nodes_.at(a).wt + nodes_.at(b).wt;
    f.charge = nodes_[a].charge;
    for (int p = 0; p < n_; ++p) f.charge[p] += nodes_[b].charge[p];
    return add(std::move(f), "P" + std::to_string(a) + "," + std::to_string(b));
}

int FieldPool::deriv(int a) {
    FieldNode f;
    f.kind = Kind::Deriv;
    f.a = a;
    f.wt = nodes_.at(a).wt + 1;
    f.charge = nodes_[a].charge;
    return add(std::move(f), "D" + std::to_string(a));
}

int FieldPool::sum(const std::vector<std::pair<Rational, int>>& terms) {
    FieldNode f;
    f.kind = Kind::Sum;
    std::map<int, Rational> merged;
    for (const auto& [c, id] : terms) merged[id] += c;
    std::string key = "S";
    bool first = true;
    for (const auto& [id, c] : merged) {
        if (c.is_zero()) continue;
        const FieldNode& t = nodes_.at(id);
        if (first) {
            f.wt = t.wt;
            f.charge = t.charge;
            first = false;
        } else if (t.wt != f.wt || t.charge != f.charge) {
            throw VertexError("sum of states with different weight or charge");
        }
        f.terms.emplace_back(c, id);
        key += c.str() + "*" + std::to_string(id) + ";";
    }
    if (f.terms.size() == 1 && f.terms[0].first.is_one()) return f.terms[0].second;
    return add(std::move(f), key);
}

int FieldPool::omega_hyp() {
    std::vector<std::pair<Rational, int>> t;
    for (int p = 1; p <= n_; ++p) t.emplace_back(1, prod(u(p), v(p)));
    return sum(t);
}

std::string FieldPool::str(int id) const {
    const FieldNode& f = nodes_.at(id);
    std::ostringstream os;
    switch (f.kind) {
        case Kind::Vacuum: os << "1"; break;
        case Kind::Heis: os << "H[" << vec_key(f.vec) << "]"; break;
        case Kind::Current: os << "X" << f.block << "[" << vec_key(f.vec) << "]"; break;
        case Kind::Vir: os << "Lbar"; break;
        case Kind::Exp: os << "e^{(" << ivec_key(f.r) << ")u}"; break;
        case Kind::Prod: os << "(" << str(f.a) << ")_(-1)(" << str(f.b) << ")"; break;
        case Kind::Deriv: os << "D(" << str(f.a) << ")"; break;
        case Kind::Sum:
            for (std::size_t k = 0; k < f.terms.size(); ++k)
                os << (k ? " + " : "") << f.terms[k].first.str() << "*" << str(f.terms[k].second);
            break;
    }
    return os.str();
}

TensorModule::TensorModule(std::shared_ptr<HypModule> hyp, std::shared_ptr<ModeModule> fbar, bool fbar_trivial)
    : hyp_(std::move(hyp)), fbar_(std::move(fbar)), trivial_(fbar_trivial) {
    if (!fbar_) {
        fbar_ = std::make_shared<ModeModule>(ModuleSpec{});
        trivial_ = true;
    }
}

Rational TensorModule::weight(std::uint64_t id) const {
    return hyp_->conformal_weight(hyp_part(id)) + Rational(fbar_->depth(fbar_part(id)));
}

std::uint64_t TensorModule::vacuum() { return pack(hyp_->base(std::vector<int>(hyp_->rank(), 0)), fbar_->top_id(0)); }

std::string TensorModule::describe(std::uint64_t id) const {
    return hyp_->describe(hyp_part(id)) + " (x) " + fbar_->describe(fbar_part(id));
}

std::vector<std::uint64_t> TensorModule::slice(int depth, const std::vector<int>& s) {
    std::vector<std::uint64_t> out;
    for (int dh = 0; dh <= depth; ++dh) {
        const int df = depth - dh;
        if (trivial_ && df > 0) continue;
        auto fb = fbar_->basis_at(df);
        for (const auto& m : hyp_->monomials(dh)) {
            const std::uint32_t h = hyp_->intern(s, m);
            for (auto f : fb) out.push_back(pack(h, f));
        }
    }
    return out;
}

std::vector<std::uint64_t> TensorModule::window(int max_depth, int lattice_bound) {
    std::vector<std::uint64_t> out;
    for (const auto& s : lattice_box(hyp_->rank(), lattice_bound))
        for (int d = 0; d <= max_depth; ++d) {
            auto sl = slice(d, s);
            out.insert(out.end(), sl.begin(), sl.end());
        }
    return out;
}

VertexEngine::VertexEngine(std::shared_ptr<FieldPool> pool, std::shared_ptr<TensorModule> module)
    : pool_(std::move(pool)), module_(std::move(module)) {}

int VertexEngine::charge_beta(int node) const { return module_->hyp().pairing_beta(pool_->node(node).charge); }

int VertexEngine::depth_shift(int node, int power) const { return pool_->node(node).wt + power - charge_beta(node); }

SparseVec VertexEngine::moment(int node, int power, std::uint64_t id) {
    Key k{node, power, id};
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    SparseVec out = compute(node, power, id);
    memo_.emplace(k, out);
    return out;
}

SparseVec VertexEngine::moment(int node, int power, const SparseVec& v) {
    if (v.size() == 1 && v.begin()->second.is_one()) return moment(node, power, v.begin()->first);
    SparseAccumulator acc;
    for (const auto& [id, c] : v) acc.add(moment(node, power, id), c);
    return acc.take();
}

SparseVec VertexEngine::compute(int node, int p, std::uint64_t id) {
    const FieldNode f = pool_->node(node);
    TensorModule& m = *module_;
    const int d = m.depth(id);
    if (d + f.wt + p - charge_beta(node) < 0) return {};
    const std::uint32_t hid = TensorModule::hyp_part(id);
    const std::uint32_t fid = TensorModule::fbar_part(id);

    auto lift_hyp = [&](const SparseVec& h) {
        std::vector<SparseVec::Entry> raw;
        raw.reserve(h.size());
        for (const auto& [x, c] : h) raw.emplace_back(TensorModule::pack(static_cast<std::uint32_t>(x), fid), c);
        return SparseVec::from_unsorted(std::move(raw));
    };
    auto lift_fbar = [&](const SparseVec& g) {
        std::vector<SparseVec::Entry> raw;
        raw.reserve(g.size());
        for (const auto& [x, c] : g) raw.emplace_back(TensorModule::pack(hid, static_cast<std::uint32_t>(x)), c);
        return SparseVec::from_unsorted(std::move(raw));
    };

    switch (f.kind) {
        case Kind::Vacuum:
            return p == 0 ? SparseVec(id) : SparseVec();
        case Kind::Heis: {
            SparseAccumulator acc;
            for (int col = 0; col < static_cast<int>(f.vec.size()); ++col)
                if (!f.vec[col].is_zero()) acc.add(m.hyp().oscillator_apply(col, -p - 1, hid), f.vec[col]);
            return lift_hyp(acc.take());
        }
        case Kind::Current: {
            if (m.fbar_trivial()) return {};
            const auto& alg = m.fbar().spec().alg;
            if (f.block >= static_cast<int>(alg.blocks.size())) return {};
            SparseAccumulator acc;
            for (int i = 0; i < static_cast<int>(f.vec.size()); ++i)
                if (!f.vec[i].is_zero()) acc.add(m.fbar().apply(X(f.block, i, -p - 1), fid), f.vec[i]);
            return lift_fbar(acc.take());
        }
        case Kind::Vir: {
            if (m.fbar_trivial()) return {};
            const auto& alg = m.fbar().spec().alg;
            if (alg.virbar) return lift_fbar(m.fbar().apply(Lbar(-p - 2), fid));
            if (alg.vir) return lift_fbar(m.fbar().apply(L(-p - 2), fid));
            return {};
        }
        case Kind::Exp:
            return lift_hyp(m.hyp().exp_moment(f.r, p, hid));
        case Kind::Deriv: {
            if (p + 1 == 0) return {};
            SparseVec out = moment(f.a, p + 1, id);
            out.scale(Rational(p + 1));
            return out;
        }
        case Kind::Sum: {
            SparseAccumulator acc;
            for (const auto& [c, t] : f.terms) acc.add(moment(t, p, id), c);
            return acc.take();
        }
        case Kind::Prod: {
            const FieldNode& A = pool_->node(f.a);
            const FieldNode& B = pool_->node(f.b);
            const int cb_a = charge_beta(f.a);
            const int cb_b = charge_beta(f.b);
            SparseAccumulator acc;
            // sum_{n<0} a_(n) b_[p+n+1] + sum_{n>=0} b_[p+n+1] a_(n)
            for (int n = cb_b - B.wt - d - p - 1; n <= -1; ++n) {
                SparseVec w = moment(f.b, p + n + 1, id);
                if (!w.is_zero()) acc.add(moment(f.a, -n - 1, w));
            }
            for (int n = 0; n <= d + A.wt - 1 - cb_a; ++n) {
                SparseVec w = moment(f.a, -n - 1, id);
                if (!w.is_zero()) acc.add(moment(f.b, p + n + 1, w));
            }
            return acc.take();
        }
    }
    return {};
}

VertexAlgebra::VertexAlgebra(std::shared_ptr<FieldPool> pool, int n, const ModuleSpec& spec, bool fbar_trivial)
    : pool_(pool),
      module_(std::make_shared<TensorModule>(
          std::make_shared<HypModule>(n, std::vector<Rational>(n, Rational(0)), std::vector<int>(n, 0)),
          std::make_shared<ModeModule>([&] {
              ModuleSpec s = spec;
              s.vacuum = true;
              s.h = 0;
              s.h_hei = 0;
              s.top = TopSpace::make(s.alg.blocks, std::vector<TopSpace::Rep>(s.alg.blocks.size(), TopSpace::Rep::Trivial));
              return s;
          }()),
          fbar_trivial)),
      engine_(pool, module_) {}

SparseVec VertexAlgebra::state(int node) { return engine_.moment(node, 0, module_->vacuum()); }

SparseVec VertexAlgebra::nth_product(int a, int b, int n) { return engine_.moment(a, -n - 1, state(b)); }

int VertexAlgebra::node_of_basis(std::uint64_t id) {
    if (auto it = basis_nodes_.find(id); it != basis_nodes_.end()) return it->second;
    FieldPool& P = *pool_;
    const HypModule& hyp = module_->hyp();
    const ModeModule& fb = module_->fbar();
    const std::uint32_t hid = TensorModule::hyp_part(id);
    const std::uint32_t fid = TensorModule::fbar_part(id);
    if (fb.top_index(fid) != 0) throw VertexError("vacuum module has a one-dimensional top");

    // x(-m) = (1/(m-1)!) (D^{m-1} x)_(-1)
    auto mode_node = [&](int base, int derivs) {
        int node = base;
        for (int k = 0; k < derivs; ++k) node = P.deriv(node);
        return P.sum({{Rational(1) / factorial(derivs), node}});
    };
    int inner = P.vacuum();
    const auto& mono = fb.monomial(fid);
    for (auto it = mono.rbegin(); it != mono.rend(); ++it) {
        const ModeSym& y = *it;
        int node;
        if (y.fam == ModeSym::Fam::Cur) {
            std::vector<Rational> e(fb.spec().alg.blocks.at(y.block)->dim());
            e[y.index] = 1;
            node = mode_node(P.current(y.block, e), -y.mode - 1);
        } else if (y.fam == ModeSym::Fam::Vir || y.fam == ModeSym::Fam::VirBar) {
            node = mode_node(P.vir(), -y.mode - 2);
        } else {
            throw VertexError("unsupported vacuum-module generator " + y.str());
        }
        inner = P.prod(node, inner);
    }
    inner = P.prod(P.exp(hyp.lattice(hid)), inner);
    const auto& osc = hyp.monomial(hid);
    for (auto it = osc.rbegin(); it != osc.rend(); ++it) {
        std::vector<Rational> e(hyp.colors());
        e[it->first] = 1;
        inner = P.prod(mode_node(P.heis(e), it->second - 1), inner);
    }
    basis_nodes_.emplace(id, inner);
    return inner;
}

SparseVec state_moment(VertexAlgebra& voa, VertexEngine& engine, const SparseVec& state, int power, const SparseVec& w) {
    SparseAccumulator acc;
    for (const auto& [id, c] : state) acc.add(engine.moment(voa.node_of_basis(id), power, w), c);
    return acc.take();
}

std::vector<std::map<int, SparseVec>> bracket_expand(VertexAlgebra& voa, const ShiftedFamily& a, const ShiftedFamily& b) {
    std::vector<std::map<int, SparseVec>> out;
    VertexEngine& E = voa.engine();
    for (const auto& [s, an] : a)
        for (const auto& [k, bn] : b) {
            SparseVec bs = voa.state(bn);
            if (bs.is_zero()) continue;
            int dmax = 0;
            for (const auto& [id, c] : bs) dmax = std::max(dmax, E.module().depth(id));
            const int mmax = dmax + E.pool().node(an).wt - 1;
            for (int m = 0; m <= mmax; ++m) {
                SparseVec prod = E.moment(an, -m - 1, bs);
                if (prod.is_zero()) continue;
                for (int n = 0; n <= m; ++n) {
                    const int i = m - n;
                    // 1/n!, not 1/m!: moving z^{-s} onto w differentiates it i times
                    Rational coeff = binomial(Rational(-s), i) / factorial(n);
                    if (coeff.is_zero()) continue;
                    if (static_cast<int>(out.size()) <= n) out.resize(n + 1);
                    out[n][s + k + i].add_scaled(prod, coeff);
                }
            }
        }
    for (auto& level : out)
        for (auto it = level.begin(); it != level.end();) it = it->second.is_zero() ? level.erase(it) : std::next(it);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

SparseVec family_moment(VertexEngine& engine, const ShiftedFamily& a, int P, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& [s, node] : a) acc.add(engine.moment(node, P + s, v));
    return acc.take();
}

SparseVec reassembled_commutator(VertexAlgebra& voa, VertexEngine& engine, const std::vector<std::map<int, SparseVec>>& c,
                                 int P, int Q, const SparseVec& v) {
    SparseAccumulator acc;
    for (std::size_t n = 0; n < c.size(); ++n) {
        // falling factorial (-P-1)(-P-2)...(-P-n)
        Rational fall = 1;
        for (std::size_t t = 0; t < n; ++t) fall *= Rational(-P - 1 - static_cast<long long>(t));
        if (fall.is_zero()) continue;
        for (const auto& [j, state] : c[n])
            acc.add(state_moment(voa, engine, state, P + Q + static_cast<int>(n) + 1 + j, v), fall);
    }
    return acc.take();
}

SparseVec apply_products(VertexEngine& engine, const std::vector<MomentProduct>& side, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& prod : side) {
        SparseVec w = v;
        for (auto it = prod.factors.rbegin(); it != prod.factors.rend() && !w.is_zero(); ++it)
            w = engine.moment(it->field, it->power, w);
        acc.add(w, prod.coeff);
    }
    return acc.take();
}

IdentityReport field_identity_check(VertexEngine& engine, const std::vector<MomentProduct>& lhs,
                                    const std::vector<MomentProduct>& rhs, const std::vector<std::uint64_t>& vectors) {
    if (vectors.empty()) throw VertexError("empty safe zone");
    IdentityReport rep;
    for (auto id : vectors) {
        SparseVec v(id);
        SparseVec diff = apply_products(engine, lhs, v) - apply_products(engine, rhs, v);
        ++rep.checked;
        if (!diff.is_zero()) {
            rep.pass = false;
            rep.witness = id;
            rep.residual = std::move(diff);
            return rep;
        }
    }
    return rep;
}

}  // namespace toralg
