#include "toralg/modes.hpp"

#include <algorithm>
#include <functional>

namespace toralg {

using Fam = ModeSym::Fam;

std::string ModeSym::str() const {
    std::string m = "(" + std::to_string(mode) + ")";
    switch (fam) {
        case Fam::Vir: return "L" + m;
        case Fam::VirBar: return "Lbar" + m;
        case Fam::Heis: return "I" + m;
        case Fam::Cur: return "X" + std::to_string(block) + "_" + std::to_string(index) + m;
        case Fam::Central:
            switch (index) {
                case kCVir: return "C_Vir";
                case kCVirBar: return "Cbar_Vir";
                case kCVH: return "C_VH";
                case kCHei: return "C_Hei";
                default: return "C_level" + std::to_string(index - kLevel0);
            }
    }
    return "?";
}

ModeAlgebra ModeAlgebra::hvir() {
    ModeAlgebra a;
    a.vir = true;
    a.heis = true;
    return a;
}

ModeAlgebra ModeAlgebra::fbar(std::vector<std::shared_ptr<const SimpleLieTable>> blocks) {
    ModeAlgebra a;
    a.virbar = true;
    a.blocks = std::move(blocks);
    return a;
}

ModeAlgebra ModeAlgebra::affine(std::vector<std::shared_ptr<const SimpleLieTable>> blocks) {
    ModeAlgebra a;
    a.blocks = std::move(blocks);
    return a;
}

bool ModeAlgebra::contains(const ModeSym& s) const {
    switch (s.fam) {
        case Fam::Vir: return vir;
        case Fam::VirBar: return virbar;
        case Fam::Heis: return heis;
        case Fam::Cur:
            return s.block >= 0 && s.block < static_cast<int>(blocks.size()) && s.index >= 0 &&
                   s.index < blocks[s.block]->dim();
        case Fam::Central: return true;
    }
    return false;
}

namespace {

bool is_virasoro(Fam f) { return f == Fam::Vir || f == Fam::VirBar; }

// Bracket for the ordered cases handled directly; returns false if (a,b) must be swapped.
bool bracket_direct(const ModeSym& a, const ModeSym& b, const ModeAlgebra& alg, ModeComb& out) {
    const int n = a.mode, m = b.mode;
    const bool diag = n + m == 0;
    if (a.fam == Fam::Central || b.fam == Fam::Central) return true;
    if (is_virasoro(a.fam)) {
        if (b.fam == a.fam) {
            if (n - m != 0) out.add(ModeSym{n + m, a.fam, 0, 0}, Rational(n - m));
            if (diag) {
                Rational cc = Rational(static_cast<long long>(n) * n * n - n, 12);
                out.add(central(a.fam == Fam::Vir ? kCVir : kCVirBar), cc);
            }
            return true;
        }
        if (b.fam == Fam::Heis) {
            if (a.fam != Fam::Vir) throw std::invalid_argument("Lbar does not act on the Heisenberg modes");
            if (m != 0) out.add(I(n + m), Rational(-m));
            if (diag) out.add(central(kCVH), Rational(-(static_cast<long long>(n) * n + n)));
            return true;
        }
        if (b.fam == Fam::Cur) {
            if (m != 0) out.add(X(b.block, b.index, n + m), Rational(-m));
            return true;
        }
        return false;
    }
    if (a.fam == Fam::Heis) {
        if (b.fam == Fam::Heis) {
            if (diag && n != 0) out.add(central(kCHei), Rational(n));
            return true;
        }
        if (b.fam == Fam::Cur) return true;
        return false;
    }
    // currents
    if (b.fam == Fam::Cur) {
        if (a.block != b.block) return true;
        const auto& t = *alg.blocks.at(a.block);
        for (const auto& [k, c] : t.bracket(a.index, b.index)) out.add(X(a.block, k, n + m), c);
        if (diag && n != 0) {
            const Rational& f = t.form[a.index][b.index];
            if (!f.is_zero()) out.add(level(a.block), Rational(n) * f);
        }
        return true;
    }
    return false;
}

}  // namespace

ModeComb mode_bracket(const ModeSym& a, const ModeSym& b, const ModeAlgebra& alg) {
    if (!alg.contains(a) || !alg.contains(b)) throw std::invalid_argument("symbol not in algebra: " + a.str() + ", " + b.str());
    ModeComb out;
    if (bracket_direct(a, b, alg, out)) return out;
    ModeComb rev;
    if (!bracket_direct(b, a, alg, rev)) throw std::logic_error("unhandled bracket " + a.str() + ", " + b.str());
    return -rev;
}

ModeComb hvir_bracket(const ModeComb& x, const ModeComb& y, const ModeAlgebra& alg) {
    ModeComb out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add(mode_bracket(a, b, alg), ca * cb);
    return out;
}

ModeComb rho_sigma(const ModeComb& x, const Rational& sigma) {
    ModeComb out;
    for (const auto& [s, c] : x) {
        if (s.fam == Fam::VirBar) {
            out.add(L(s.mode), c);
            if (s.mode != 0) out.add(I(s.mode), c * sigma * Rational(s.mode));
            if (s.mode == 0) {
                out.add(central(kCVH), c * sigma);
                out.add(central(kCHei), -c * sigma * sigma / Rational(2));
            }
        } else if (s.fam == Fam::Central && s.index == kCVirBar) {
            out.add(central(kCVir), c);
            out.add(central(kCVH), c * Rational(24) * sigma);
            out.add(central(kCHei), -c * Rational(12) * sigma * sigma);
        } else {
            out.add(s, c);
        }
    }
    return out;
}

CentralCharacter central_character_gamma0(const Rational& c, const Rational& mu, int n) {
    const Rational one_minus = Rational(1) - mu * c;
    return {c, one_minus, Rational(n) * one_minus, Rational(n, 2), Rational(12) * mu * c - Rational(2 * n)};
}

BarredCharges barred_charges(const CentralCharacter& g, const Rational& sigma) {
    return {sigma * g.c_vh - sigma * sigma / Rational(2) * g.c_hei,
            g.c_vir + Rational(24) * sigma * g.c_vh - Rational(12) * sigma * sigma * g.c_hei};
}

Rational cbar_closed_form(const Rational& mu, const Rational& c, int n) {
    const Rational inv = Rational(1, n);
    return Rational(12) * (Rational(1) - inv) + Rational(12) * mu * c * (Rational(1) + inv) - Rational(2 * n);
}

SugawaraCharges sugawara_charges(const Rational& c_g, const Rational& c_sl, const Rational& cbar_vir,
                                 const SimpleLieTable& table, const std::vector<int>& v_labels, int n,
                                 const std::vector<int>& w_labels, const Rational& hbar) {
    SugawaraCharges out{cbar_vir, hbar, 0, 0};
    if (!table.empty()) {
        const Rational denom = c_g + Rational(table.dual_coxeter);
        if (denom.is_zero()) throw CriticalLevelError("critical level for the finite algebra: c = -h^vee");
        out.omega_v = casimir_eigenvalue(table, v_labels);
        out.c_prime -= c_g * Rational(table.dim()) / denom;
        out.h_prime -= out.omega_v / (Rational(2) * denom);
    }
    if (n >= 2) {
        const Rational denom = c_sl + Rational(n);
        if (denom.is_zero()) throw CriticalLevelError("critical level for sl_N: c_sl = -N");
        out.omega_w = casimir_eigenvalue(make_sl(n), w_labels);
        out.c_prime -= c_sl * Rational(n * n - 1) / denom;
        out.h_prime -= out.omega_w / (Rational(2) * denom);
    }
    return out;
}

Rational cprime_closed_form(const Rational& mu, const Rational& c, int n, const SimpleLieTable& table) {
    Rational v = cbar_closed_form(mu, c, n);
    if (!table.empty()) v -= c * Rational(table.dim()) / (c + Rational(table.dual_coxeter));
    const Rational a = Rational(1) - mu * c;
    v -= a * Rational(n * n - 1) / (a + Rational(n));
    return v;
}

TopSpace TopSpace::make(const std::vector<std::shared_ptr<const SimpleLieTable>>& blocks, const std::vector<Rep>& reps) {
    if (reps.size() != blocks.size()) throw std::invalid_argument("one representation per block is required");
    TopSpace top;
    std::vector<int> dims;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        bool adj = reps[b] == Rep::Adjoint && !blocks[b]->empty();
        dims.push_back(adj ? blocks[b]->dim() : 1);
        top.labels.push_back(adj ? blocks[b]->highest_root : std::vector<int>(blocks[b]->rank(), 0));
    }
    top.dim = 1;
    for (int d : dims) top.dim *= d;
    top.rep.resize(blocks.size());
    int before = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int d = dims[b];
        const int after = top.dim / (before * d);
        for (int i = 0; i < blocks[b]->dim(); ++i) {
            Matrix m(top.dim, std::vector<Rational>(top.dim));
            if (d > 1) {
                Matrix a = blocks[b]->adjoint_matrix(i);
                for (int x = 0; x < before; ++x)
                    for (int p = 0; p < d; ++p)
                        for (int q = 0; q < d; ++q)
                            if (!a[p][q].is_zero())
                                for (int y = 0; y < after; ++y)
                                    m[(x * d + p) * after + y][(x * d + q) * after + y] = a[p][q];
            }
            top.rep[b].push_back(std::move(m));
        }
        before *= d;
    }
    return top;
}

Rational ModuleSpec::central_value(int kind) const {
    auto it = central.find(kind);
    return it == central.end() ? Rational(0) : it->second;
}

std::size_t ModeModule::KeyHash::operator()(const Key& k) const {
    std::size_t h = std::hash<int>()(k.top);
    for (const auto& s : k.mono) {
        std::size_t x = static_cast<std::size_t>(s.mode) * 1000003u + static_cast<std::size_t>(s.fam) * 7919u +
                        static_cast<std::size_t>(s.block) * 131u + static_cast<std::size_t>(s.index);
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t ModeModule::MemoHash::operator()(const MemoKey& k) const {
    std::size_t x = static_cast<std::size_t>(k.s.mode) * 1000003u + static_cast<std::size_t>(k.s.fam) * 7919u +
                    static_cast<std::size_t>(k.s.block) * 131u + static_cast<std::size_t>(k.s.index);
    return x * 0x9e3779b97f4a7c15ull ^ k.id;
}

ModeModule::ModeModule(ModuleSpec spec) : spec_(std::move(spec)) {
    for (int t = 0; t < spec_.top.dim; ++t) intern({}, t);
}

std::uint32_t ModeModule::top_id(int t) { return intern({}, t); }

std::uint32_t ModeModule::intern(const std::vector<ModeSym>& mono, int top) {
    Key k{mono, top};
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(keys_.size());
    int d = 0;
    for (const auto& s : mono) d -= s.mode;
    keys_.push_back(k);
    depth_.push_back(d);
    ids_.emplace(std::move(k), id);
    return id;
}

bool ModeModule::is_creation(const ModeSym& s) const {
    if (s.fam == Fam::Central || s.mode >= 0) return false;
    if (!spec_.alg.contains(s)) return false;
    if (spec_.vacuum && is_virasoro(s.fam) && s.mode == -1) return false;
    return true;
}

std::vector<ModeSym> ModeModule::creation_symbols(int depth) const {
    std::vector<ModeSym> out;
    const auto& a = spec_.alg;
    auto consider = [&](ModeSym s) {
        if (is_creation(s)) out.push_back(s);
    };
    if (a.vir) consider(L(-depth));
    if (a.virbar) consider(Lbar(-depth));
    if (a.heis) consider(I(-depth));
    for (std::size_t b = 0; b < a.blocks.size(); ++b)
        for (int i = 0; i < a.blocks[b]->dim(); ++i) consider(X(static_cast<int>(b), i, -depth));
    std::sort(out.begin(), out.end());
    return out;
}

SparseVec ModeModule::act_top(const ModeSym& x, int t) {
    if (is_creation(x)) return SparseVec(intern({x}, t));
    if (x.mode != 0) return {};
    switch (x.fam) {
        case Fam::Vir:
        case Fam::VirBar: return SparseVec(intern({}, t), spec_.h);
        case Fam::Heis: return SparseVec(intern({}, t), spec_.h_hei);
        case Fam::Cur: {
            const Matrix& m = spec_.top.rep.at(x.block).at(x.index);
            std::vector<SparseVec::Entry> raw;
            for (int q = 0; q < spec_.top.dim; ++q)
                if (!m[q][t].is_zero()) raw.emplace_back(intern({}, q), m[q][t]);
            return SparseVec::from_unsorted(std::move(raw));
        }
        case Fam::Central: break;
    }
    return {};
}

SparseVec ModeModule::apply(const ModeSym& x, std::uint32_t id) {
    if (x.fam == Fam::Central) return SparseVec(id, spec_.central_value(x.index));
    MemoKey mk{x, id};
    if (auto it = memo_.find(mk); it != memo_.end()) return it->second;

    const Key key = keys_[id];
    SparseVec res;
    if (key.mono.empty()) {
        res = act_top(x, key.top);
    } else if (is_creation(x) && x <= key.mono.front()) {
        std::vector<ModeSym> mono;
        mono.reserve(key.mono.size() + 1);
        mono.push_back(x);
        mono.insert(mono.end(), key.mono.begin(), key.mono.end());
        res = SparseVec(intern(mono, key.top));
    } else {
        const ModeSym y = key.mono.front();
        const std::uint32_t rest = intern(std::vector<ModeSym>(key.mono.begin() + 1, key.mono.end()), key.top);
        res = apply(y, apply(x, rest));
        for (const auto& [z, c] : mode_bracket(x, y, spec_.alg)) res.add_scaled(apply(z, rest), c);
    }
    memo_.emplace(mk, res);
    return res;
}

SparseVec ModeModule::apply(const ModeSym& x, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& [id, c] : v) acc.add(apply(x, id), c);
    return acc.take();
}

SparseVec ModeModule::apply(const ModeComb& x, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& [s, c] : x) acc.add(apply(s, v), c);
    return acc.take();
}

void ModeModule::enumerate(int depth, int max_part, std::size_t start, std::vector<ModeSym>& cur,
                           std::vector<std::vector<ModeSym>>& out) {
    // parts are emitted in PBW order: most negative mode first
    if (depth == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(depth, max_part); part >= 1; --part) {
        auto syms = creation_symbols(part);
        std::size_t from = part == max_part ? start : 0;
        for (std::size_t k = from; k < syms.size(); ++k) {
            cur.push_back(syms[k]);
            enumerate(depth - part, part, k, cur, out);
            cur.pop_back();
        }
    }
}

std::vector<std::uint32_t> ModeModule::basis_at(int depth) {
    std::vector<std::vector<ModeSym>> monos;
    std::vector<ModeSym> cur;
    enumerate(depth, depth, 0, cur, monos);
    std::vector<std::uint32_t> out;
    for (const auto& m : monos)
        for (int t = 0; t < spec_.top.dim; ++t) out.push_back(intern(m, t));
    return out;
}

std::vector<std::uint32_t> ModeModule::basis(int max_depth) {
    std::vector<std::uint32_t> out;
    for (int d = 0; d <= max_depth; ++d) {
        auto b = basis_at(d);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

std::string ModeModule::describe(std::uint32_t id) const {
    std::string s;
    for (const auto& m : keys_[id].mono) s += m.str();
    return s + "|top" + std::to_string(keys_[id].top) + ">";
}

SparseVec sugawara_apply(ModeModule& module, int block, int n, const SparseVec& v) {
    const auto& table = *module.spec().alg.blocks.at(block);
    const Rational k = module.spec().central_value(kLevel0 + block);
    const Rational denom = Rational(2) * (k + Rational(table.dual_coxeter));
    if (denom.is_zero()) throw CriticalLevelError("Sugawara construction at the critical level");
    const Matrix ginv = table.inverse_form();
    int d = 0;
    for (const auto& [id, c] : v) d = std::max(d, module.depth(id));
    SparseAccumulator acc;
    for (int m = n - d - 1; m <= d + 1; ++m) {
        for (int i = 0; i < table.dim(); ++i)
            for (int j = 0; j < table.dim(); ++j) {
                if (ginv[i][j].is_zero()) continue;
                SparseVec w;
                if (m <= -1) {
                    w = module.apply(X(block, i, m), module.apply(X(block, j, n - m), v));
                } else {
                    w = module.apply(X(block, j, n - m), module.apply(X(block, i, m), v));
                }
                acc.add(w, ginv[i][j]);
            }
    }
    SparseVec out = acc.take();
    out.scale(Rational(1) / denom);
    return out;
}

std::vector<long long> pbw_dimensions(const ModeModule& module, int max_depth) {
    std::vector<long long> colors(max_depth + 1, 0);
    for (int d = 1; d <= max_depth; ++d) colors[d] = static_cast<long long>(module.creation_symbols(d).size());
    std::vector<long long> dims(max_depth + 1, 0);
    dims[0] = 1;
    // multiply by (1 - q^d)^{-colors[d]} one factor at a time
    for (int d = 1; d <= max_depth; ++d)
        for (long long k = 0; k < colors[d]; ++k)
            for (int n = d; n <= max_depth; ++n) dims[n] += dims[n - d];
    for (auto& x : dims) x *= module.spec().top.dim;
    return dims;
}

}  // namespace toralg
