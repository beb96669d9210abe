#include "toralg/toroidal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toralg {

MultiIndex MultiIndex::from(int j, const std::vector<int>& spatial) {
    std::vector<int> v;
    v.reserve(spatial.size() + 1);
    v.push_back(j);
    v.insert(v.end(), spatial.begin(), spatial.end());
    return MultiIndex(std::move(v));
}

bool MultiIndex::is_zero() const {
    for (int x : v_)
        if (x != 0) return false;
    return true;
}

int MultiIndex::pivot() const {
    for (int p = size() - 1; p >= 0; --p)
        if (v_[p] != 0) return p;
    return -1;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw ToroidalError("multi-index length mismatch");
    std::vector<int> v(a.v_);
    for (int p = 0; p < a.size(); ++p) v[p] += b.v_[p];
    return MultiIndex(std::move(v));
}

MultiIndex operator-(const MultiIndex& a) {
    std::vector<int> v(a.v_);
    for (int& x : v) x = -x;
    return MultiIndex(std::move(v));
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (int p = 0; p < size(); ++p) s += (p ? "," : "") + std::to_string(v_[p]);
    return s + ")";
}

std::string TorSymbol::str(const SimpleLieTable* table) const {
    std::string base = "t^" + m.str();
    switch (kind) {
        case Kind::Cur:
            return base + (table && index < table->dim() ? table->basis[index] : "g" + std::to_string(index));
        case Kind::Cen:
            return base + "k_" + std::to_string(index);
        case Kind::Der:
            return base + "d_" + std::to_string(index);
    }
    return base;
}

AlgebraParams::AlgebraParams(int n, Rational m, std::shared_ptr<const SimpleLieTable> t)
    : N(n), mu(std::move(m)), table(std::move(t)) {
    if (N < 1) throw ToroidalError("N must be at least 1");
    if (!table) table = std::make_shared<SimpleLieTable>(make_zero_algebra());
}

TorElement reduce_kassel_center(const TorCombination& x) {
    TorElement out;
    for (const auto& [sym, c] : x) {
        if (sym.kind != TorSymbol::Kind::Cen || sym.m.is_zero()) {
            out.add(sym, c);
            continue;
        }
        int pivot = sym.m.pivot();
        if (sym.index != pivot) {
            out.add(sym, c);
            continue;
        }
        // k_{p*} = -sum_{p != p*} (m_p / m_{p*}) k_p
        for (int p = 0; p < sym.m.size(); ++p) {
            if (p == pivot || sym.m[p] == 0) continue;
            out.add(TorSymbol{TorSymbol::Kind::Cen, sym.m, p}, -c * Rational(sym.m[p], sym.m[pivot]));
        }
    }
    return out;
}

namespace {

void check_symbol(const TorSymbol& s, const AlgebraParams& params) {
    if (s.m.size() != params.N + 1)
        throw ToroidalError("symbol " + s.str() + " does not match N=" + std::to_string(params.N));
    int limit = s.kind == TorSymbol::Kind::Cur ? params.lie().dim() : params.N + 1;
    if (s.index < 0 || s.index >= limit) throw ToroidalError("symbol index out of range: " + s.str());
}

// sum_p r_p t^m k_p
void add_d_form(TorCombination& out, const MultiIndex& r, const MultiIndex& m, const Rational& c) {
    for (int p = 0; p < r.size(); ++p)
        if (r[p] != 0) out.add(TorSymbol{TorSymbol::Kind::Cen, m, p}, c * Rational(r[p]));
}

using K = TorSymbol::Kind;

// [t^r d_a, y] for a basis symbol y
void der_action(TorCombination& out, const MultiIndex& r, int a, const TorSymbol& y, const Rational& c,
                const AlgebraParams& params) {
    const MultiIndex s = r + y.m;
    const auto& m = y.m;
    switch (y.kind) {
        case K::Cur:
            if (m[a] != 0) out.add(TorSymbol{K::Cur, s, y.index}, c * Rational(m[a]));
            break;
        case K::Cen:
            if (m[a] != 0) out.add(TorSymbol{K::Cen, s, y.index}, c * Rational(m[a]));
            if (a == y.index) add_d_form(out, r, s, c);
            break;
        case K::Der: {
            int b = y.index;
            if (m[a] != 0) out.add(TorSymbol{K::Der, s, b}, c * Rational(m[a]));
            if (r[b] != 0) out.add(TorSymbol{K::Der, s, a}, -c * Rational(r[b]));
            if (m[a] != 0 && r[b] != 0 && !params.mu.is_zero())
                add_d_form(out, m, s, c * params.mu * Rational(m[a]) * Rational(r[b]));
            break;
        }
    }
}

void bracket_symbols(TorCombination& out, const TorSymbol& x, const TorSymbol& y, const Rational& c,
                     const AlgebraParams& params) {
    if (x.kind == K::Der) {
        der_action(out, x.m, x.index, y, c, params);
        return;
    }
    if (y.kind == K::Der) {
        der_action(out, y.m, y.index, x, -c, params);
        return;
    }
    if (x.kind == K::Cen || y.kind == K::Cen) return;
    // [t^r g_i, t^m g_j] = t^{r+m}[g_i,g_j] + (g_i|g_j) sum_p r_p t^{r+m} k_p
    const MultiIndex s = x.m + y.m;
    for (const auto& [k, coef] : params.lie().bracket(x.index, y.index)) out.add(TorSymbol{K::Cur, s, k}, c * coef);
    const Rational& f = params.lie().form[x.index][y.index];
    if (!f.is_zero()) add_d_form(out, x.m, s, c * f);
}

}  // namespace

TorElement bracket(const TorCombination& x, const TorCombination& y, const AlgebraParams& params) {
    TorCombination raw;
    for (const auto& [sx, cx] : x) {
        check_symbol(sx, params);
        for (const auto& [sy, cy] : y) {
            check_symbol(sy, params);
            bracket_symbols(raw, sx, sy, cx * cy, params);
        }
    }
    return reduce_kassel_center(raw);
}

LinComb<MultiIndex> divergence(const TorCombination& x) {
    LinComb<MultiIndex> out;
    for (const auto& [sym, c] : x) {
        if (sym.kind != K::Der) throw ToroidalError("divergence: non-derivation symbol " + sym.str());
        if (sym.m[sym.index] != 0) out.add(sym.m, c * Rational(sym.m[sym.index]));
    }
    return out;
}

bool is_divergence_free(const TorCombination& x) { return divergence(x).is_zero(); }

namespace {

TorCombination der_part(const TorCombination& x) {
    TorCombination d;
    for (const auto& [sym, c] : x)
        if (sym.kind == K::Der) d.add(sym, c);
    return d;
}

}  // namespace

Rational invariant_form(const TorCombination& x, const TorCombination& y, const SimpleLieTable& table) {
    if (!is_divergence_free(der_part(x)) || !is_divergence_free(der_part(y)))
        throw ToroidalError("invariant form is only defined on divergence-free derivations");
    Rational total = 0;
    for (const auto& [sx, cx] : x)
        for (const auto& [sy, cy] : y) {
            if (sx.m != -sy.m) continue;
            if (sx.kind == K::Cur && sy.kind == K::Cur) {
                total += cx * cy * table.form[sx.index][sy.index];
            } else if ((sx.kind == K::Der && sy.kind == K::Cen) || (sx.kind == K::Cen && sy.kind == K::Der)) {
                if (sx.index == sy.index) total += cx * cy;
            }
        }
    return total;
}

std::string SpanningElement::str() const {
    std::ostringstream os;
    auto rs = [&] {
        std::string s = "(";
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
        return s + ")";
    };
    switch (kind) {
        case Kind::Center: os << "t0^" << j << " t^" << rs() << " k_" << a; break;
        case Kind::Current: os << "t0^" << j << " t^" << rs() << " g_" << a; break;
        case Kind::D0: os << "d_0"; break;
        case Kind::Dp: os << "t0^" << j << " d_" << a; break;
        case Kind::Dab: os << "d_{" << a << b << "}(" << j << "," << rs() << ")"; break;
        case Kind::Dhat: os << "dhat_" << a << "(" << j << "," << rs() << ")"; break;
    }
    return os.str();
}

TorElement spanning_value(const SpanningElement& e, const AlgebraParams& params, const Rational& c) {
    const MultiIndex m = e.degree();
    switch (e.kind) {
        case SpanningElement::Kind::Center:
            return reduce_kassel_center(cen(m, e.a));
        case SpanningElement::Kind::Current:
            return cur(m, e.a);
        case SpanningElement::Kind::D0:
            return der(MultiIndex::zero(params.N + 1), 0);
        case SpanningElement::Kind::Dp:
            return der(m, e.a);
        case SpanningElement::Kind::Dab:
            return der(m, e.a, Rational(m[e.b])) + der(m, e.b, -Rational(m[e.a]));
        case SpanningElement::Kind::Dhat: {
            if (c.is_zero()) throw ToroidalError("c must be nonzero");
            const Rational ra = m[e.a];
            const int n = params.N;
            // r_a (-t^m d_0 + mu (j + 1/2) t^m k_0) + j t^m d_a + r_a/(2cN) (N - 1 + mu c) t^m k_0
            Rational k0 = ra * params.mu * (Rational(e.j) + Rational(1, 2)) +
                          ra * (Rational(n - 1) + params.mu * c) / (Rational(2 * n) * c);
            TorCombination v = der(m, 0, -ra) + der(m, e.a, Rational(e.j)) + cen(m, 0, k0);
            return reduce_kassel_center(v);
        }
    }
    return {};
}

std::vector<SpanningElement> gdiv_spanning(const AlgebraParams& params, const Rational& c, const SpanningWindow& w) {
    if (c.is_zero()) throw ToroidalError("c must be nonzero");
    const int n = params.N;
    std::vector<SpanningElement> out;
    auto push = [&](SpanningElement e) {
        if (!spanning_value(e, params, c).is_zero()) out.push_back(std::move(e));
    };
    // enumerate r in [-R, R]^N
    std::vector<std::vector<int>> rs{{}};
    for (int p = 0; p < n; ++p) {
        std::vector<std::vector<int>> next;
        for (const auto& pre : rs)
            for (int x = -w.r_bound; x <= w.r_bound; ++x) {
                auto v = pre;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        rs = std::move(next);
    }
    using Kd = SpanningElement::Kind;
    push({Kd::D0, 0, std::vector<int>(n, 0), 0, 0});
    for (int j = -w.j_bound; j <= w.j_bound; ++j) {
        for (int p = 1; p <= n; ++p) push({Kd::Dp, j, std::vector<int>(n, 0), p, 0});
        for (const auto& r : rs) {
            const int pivot = MultiIndex::from(j, r).pivot();
            // the pivot center is a combination of the others
            for (int p = 0; p <= n; ++p)
                if (p != pivot) push({Kd::Center, j, r, p, 0});
            const bool r_zero = std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
            for (int i = 0; i < params.lie().dim(); ++i) push({Kd::Current, j, r, i, 0});
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) push({Kd::Dab, j, r, a, b});
            if (!r_zero)
                for (int a = 1; a <= n; ++a) push({Kd::Dhat, j, r, a, 0});
        }
    }
    return out;
}

std::vector<std::pair<SpanningElement, Rational>> decompose_gdiv(const TorElement& x, const AlgebraParams& params,
                                                                  const Rational& c) {
    using Kd = SpanningElement::Kind;
    const int n = params.N;
    std::map<MultiIndex, std::vector<Rational>> ders;  // m -> c_0..c_N
    std::map<std::pair<MultiIndex, int>, Rational> cens;
    std::vector<std::pair<SpanningElement, Rational>> out;
    for (const auto& [sym, coef] : x) {
        if (sym.m.size() != n + 1) throw ToroidalError("element does not match N");
        switch (sym.kind) {
            case K::Cur:
                out.push_back({{Kd::Current, sym.m[0], sym.m.spatial(), sym.index, 0}, coef});
                break;
            case K::Cen:
                cens[{sym.m, sym.index}] += coef;
                break;
            case K::Der: {
                auto& v = ders[sym.m];
                if (v.empty()) v.assign(n + 1, Rational(0));
                v[sym.index] += coef;
                break;
            }
        }
    }
    for (auto& [m, cs] : ders) {
        const int j = m[0];
        const auto r = m.spatial();
        int astar = -1;
        for (int a = n; a >= 1; --a)
            if (r[a - 1] != 0) {
                astar = a;
                break;
            }
        if (m.is_zero()) {
            if (!cs[0].is_zero()) out.push_back({{Kd::D0, 0, r, 0, 0}, cs[0]});
            for (int p = 1; p <= n; ++p)
                if (!cs[p].is_zero()) out.push_back({{Kd::Dp, 0, r, p, 0}, cs[p]});
            continue;
        }
        if (astar < 0) {
            if (!cs[0].is_zero()) throw ToroidalError("element is not in g_div: t_0^j d_0 with j != 0");
            for (int p = 1; p <= n; ++p)
                if (!cs[p].is_zero()) out.push_back({{Kd::Dp, j, r, p, 0}, cs[p]});
            continue;
        }
        const Rational rstar = r[astar - 1];
        if (!cs[0].is_zero()) {
            Rational lambda = -cs[0] / rstar;
            SpanningElement hat{Kd::Dhat, j, r, astar, 0};
            out.push_back({hat, lambda});
            // subtract the k_0 part carried by the d-hat element
            for (const auto& [sym, v] : spanning_value(hat, params, c))
                if (sym.kind == K::Cen) cens[{sym.m, sym.index}] -= lambda * v;
            cs[astar] -= lambda * Rational(j);
            cs[0] = 0;
        }
        Rational rest = cs[astar];
        for (int a = 1; a <= n; ++a) {
            if (a == astar || cs[a].is_zero()) continue;
            if (a < astar) {
                out.push_back({{Kd::Dab, j, r, a, astar}, cs[a] / rstar});
            } else {
                out.push_back({{Kd::Dab, j, r, astar, a}, -cs[a] / rstar});
            }
            rest += cs[a] * Rational(r[a - 1]) / rstar;
        }
        if (!rest.is_zero()) throw ToroidalError("element is not in g_div: derivation part has nonzero divergence");
    }
    for (const auto& [key, coef] : cens)
        if (!coef.is_zero()) out.push_back({{Kd::Center, key.first[0], key.first.spatial(), key.second, 0}, coef});
    return out;
}

nlohmann::json to_json(const TorCombination& x, const SimpleLieTable* table) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [sym, c] : x) {
        const char* kind = sym.kind == K::Cur ? "Cur" : (sym.kind == K::Cen ? "Cen" : "Der");
        nlohmann::json e{{"kind", kind}, {"m", sym.m.values()}, {"index", sym.index}, {"coeff", c.str()}};
        if (table && sym.kind == K::Cur && sym.index < table->dim()) e["symbol"] = table->basis[sym.index];
        arr.push_back(std::move(e));
    }
    return arr;
}

std::string to_string(const TorCombination& x, const SimpleLieTable* table) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [sym, c] : x) {
        if (!s.empty()) s += " + ";
        s += (c.is_one() ? std::string() : "(" + c.str() + ")") + sym.str(table);
    }
    return s;
}

}  // namespace toralg
