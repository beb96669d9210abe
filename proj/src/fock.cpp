#include "toralg/fock.hpp"

#include <algorithm>
#include <functional>

namespace toralg {

OscMonomial multiply(const OscMonomial& a, const OscMonomial& b) {
    OscMonomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

int monomial_depth(const OscMonomial& m) {
    int d = 0;
    for (const auto& [c, n] : m) d += n;
    return d;
}

std::size_t HypModule::KeyHash::operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::size_t x) { h = (h ^ x) * 1099511628211ull; };
    for (int x : k.s) mix(static_cast<std::size_t>(x + 1000));
    mix(77777);
    for (const auto& [c, n] : k.mono) mix(static_cast<std::size_t>(c * 4096 + n));
    return h;
}

std::size_t HypModule::MemoHash::operator()(const std::pair<std::vector<int>, std::pair<int, std::uint32_t>>& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::size_t x) { h = (h ^ x) * 1099511628211ull; };
    for (int x : k.first) mix(static_cast<std::size_t>(x + 1000));
    mix(static_cast<std::size_t>(k.second.first + 100000));
    mix(k.second.second);
    return h;
}

HypModule::HypModule(int n, std::vector<Rational> alpha, std::vector<int> beta)
    : n_(n), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (n_ < 1) throw FockError("lattice rank must be positive");
    if (alpha_.empty()) alpha_.assign(n_, Rational(0));
    if (beta_.empty()) beta_.assign(n_, 0);
    if (static_cast<int>(alpha_.size()) != n_ || static_cast<int>(beta_.size()) != n_)
        throw FockError("alpha and beta must have length N");
}

std::uint32_t HypModule::intern(const std::vector<int>& s, const OscMonomial& mono) {
    Key k{s, mono};
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    if (static_cast<int>(s.size()) != n_) throw FockError("lattice offset has wrong length");
    auto id = static_cast<std::uint32_t>(keys_.size());
    keys_.push_back(k);
    depth_.push_back(monomial_depth(mono));
    ids_.emplace(std::move(k), id);
    return id;
}

Rational HypModule::lattice_weight(std::uint32_t id) const {
    Rational w = 0;
    const auto& s = keys_[id].s;
    for (int p = 0; p < n_; ++p)
        if (beta_[p] != 0) w += (alpha_[p] + Rational(s[p])) * Rational(beta_[p]);
    return w;
}

int HypModule::pairing_beta(const std::vector<int>& r) const {
    int w = 0;
    for (int p = 0; p < n_; ++p) w += r[p] * beta_[p];
    return w;
}

SparseVec HypModule::oscillator_apply(int color, int n, std::uint32_t id) {
    const Key key = keys_[id];
    if (n < 0) {
        OscMonomial m = key.mono;
        m.insert(std::upper_bound(m.begin(), m.end(), std::make_pair(color, -n)), {color, -n});
        return SparseVec(intern(key.s, m));
    }
    if (n == 0) {
        // (x | alpha u + beta v + s u)
        const int p = color % n_;
        Rational ev = is_u(color) ? Rational(beta_[p]) : alpha_[p] + Rational(key.s[p]);
        return SparseVec(id, ev);
    }
    const std::pair<int, int> target{partner(color), n};
    auto lo = std::lower_bound(key.mono.begin(), key.mono.end(), target);
    auto hi = std::upper_bound(key.mono.begin(), key.mono.end(), target);
    const long long mult = hi - lo;
    if (mult == 0) return {};
    OscMonomial m = key.mono;
    m.erase(m.begin() + (lo - key.mono.begin()));
    return SparseVec(intern(key.s, m), Rational(static_cast<long long>(n) * mult));
}

SparseVec HypModule::oscillator_apply(const std::vector<Rational>& coords, int n, const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& [id, c] : v)
        for (int col = 0; col < colors(); ++col)
            if (!coords[col].is_zero()) acc.add(oscillator_apply(col, n, static_cast<std::uint32_t>(id)), c * coords[col]);
    return acc.take();
}

SparseVec HypModule::lattice_shift(const std::vector<int>& r, std::uint32_t id) {
    if (static_cast<int>(r.size()) != n_) throw FockError("shift has wrong length");
    std::vector<int> s = keys_[id].s;
    for (int p = 0; p < n_; ++p) s[p] += r[p];
    return SparseVec(intern(s, keys_[id].mono));
}

const OscPolynomial& HypModule::schur(const std::vector<int>& r, int b) {
    auto key = std::make_pair(r, b);
    if (auto it = schur_.find(key); it != schur_.end()) return it->second;
    OscPolynomial out;
    if (b == 0) {
        out[{}] = 1;
    } else {
        // b S_b = sum_{j=1}^b x_j S_{b-j}
        for (int j = 1; j <= b; ++j) {
            const OscPolynomial prev = schur(r, b - j);
            for (int p = 0; p < n_; ++p) {
                if (r[p] == 0) continue;
                const OscMonomial xj{{p, j}};
                for (const auto& [m, c] : prev) {
                    Rational& slot = out[multiply(m, xj)];
                    slot += c * Rational(r[p], b);
                }
            }
        }
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return schur_.emplace(std::move(key), std::move(out)).first->second;
}

SparseVec HypModule::exp_moment(const std::vector<int>& r, int p, std::uint32_t id) {
    auto memo_key = std::make_pair(r, std::make_pair(p, id));
    if (auto it = exp_memo_.find(memo_key); it != exp_memo_.end()) return it->second;

    const Key key = keys_[id];
    std::vector<int> s = key.s;
    for (int q = 0; q < n_; ++q) s[q] += r[q];
    const int rb = pairing_beta(r);

    // E^+ substitutes v_q(-j) -> v_q(-j) - r_q z^{-j}; group equal factors.
    struct Group {
        int color, mode, mult, rq;
    };
    std::vector<Group> groups;
    OscMonomial fixed;
    for (std::size_t k = 0; k < key.mono.size();) {
        std::size_t e = k;
        while (e < key.mono.size() && key.mono[e] == key.mono[k]) ++e;
        const auto [color, mode] = key.mono[k];
        const int rq = is_u(color) ? 0 : r[color - n_];
        if (rq == 0) {
            fixed.insert(fixed.end(), key.mono.begin() + k, key.mono.begin() + e);
        } else {
            groups.push_back({color, mode, static_cast<int>(e - k), rq});
        }
        k = e;
    }

    SparseAccumulator acc;
    std::vector<int> take(groups.size(), 0);
    std::function<void(std::size_t, Rational, int)> rec = [&](std::size_t g, Rational coef, int a) {
        if (g == groups.size()) {
            const int b = p - rb + a;
            if (b < 0) return;
            OscMonomial rest = fixed;
            for (std::size_t t = 0; t < groups.size(); ++t)
                for (int k = 0; k < groups[t].mult - take[t]; ++k)
                    rest.insert(std::upper_bound(rest.begin(), rest.end(), std::make_pair(groups[t].color, groups[t].mode)),
                                {groups[t].color, groups[t].mode});
            for (const auto& [m, c] : schur(r, b)) acc.add(intern(s, multiply(rest, m)), coef * c);
            return;
        }
        const Group& gr = groups[g];
        Rational c = coef;
        for (int i = 0; i <= gr.mult; ++i) {
            take[g] = i;
            rec(g + 1, c, a + i * gr.mode);
            // binom(mult, i+1)/binom(mult, i) = (mult - i)/(i + 1)
            c = c * Rational(static_cast<long long>(gr.mult - i) * -gr.rq, i + 1);
        }
        take[g] = 0;
    };
    rec(0, Rational(1), 0);
    SparseVec out = acc.take();
    exp_memo_.emplace(std::move(memo_key), out);
    return out;
}

std::vector<OscMonomial> HypModule::monomials(int d) const {
    // colored partitions of d with 2N colors, parts emitted in sorted order
    std::vector<std::pair<int, int>> atoms;
    for (int c = 0; c < colors(); ++c)
        for (int m = 1; m <= d; ++m) atoms.push_back({c, m});
    std::vector<OscMonomial> out;
    OscMonomial cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = start; k < atoms.size(); ++k) {
            if (atoms[k].second > left) continue;
            cur.push_back(atoms[k]);
            rec(k, left - atoms[k].second);
            cur.pop_back();
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
}

unsigned long long HypModule::count_monomials(int d) const {
    std::vector<int> sizes;
    for (int c = 0; c < colors(); ++c)
        for (int m = 1; m <= d; ++m) sizes.push_back(m);
    unsigned long long n = 0;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
            ++n;
            return;
        }
        for (std::size_t k = start; k < sizes.size(); ++k)
            if (sizes[k] <= left) rec(k, left - sizes[k]);
    };
    rec(0, d);
    return n;
}

std::vector<std::vector<int>> lattice_box(int n, int bound) {
    std::vector<std::vector<int>> out{{}};
    for (int p = 0; p < n; ++p) {
        std::vector<std::vector<int>> next;
        for (const auto& pre : out)
            for (int x = -bound; x <= bound; ++x) {
                auto v = pre;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<std::uint32_t> HypModule::enumerate_basis(int max_depth, int lattice_bound) {
    if (max_depth < 0 || lattice_bound < 0) throw FockError("empty window");
    std::vector<std::vector<OscMonomial>> by_depth;
    for (int d = 0; d <= max_depth; ++d) by_depth.push_back(monomials(d));
    std::vector<std::uint32_t> out;
    for (const auto& s : lattice_box(n_, lattice_bound))
        for (const auto& ms : by_depth)
            for (const auto& m : ms) out.push_back(intern(s, m));
    return out;
}

std::string HypModule::describe(std::uint32_t id) const {
    std::string out;
    for (const auto& [c, m] : keys_[id].mono)
        out += (is_u(c) ? "u" : "v") + std::to_string(c % n_ + 1) + "(" + std::to_string(-m) + ")";
    out += "e^{s=(";
    for (int p = 0; p < n_; ++p) out += (p ? "," : "") + std::to_string(keys_[id].s[p]);
    return out + ")}";
}

}  // namespace toralg
