#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toralg/lin_comb.hpp"
#include "toralg/rational.hpp"

namespace toralg {

/// Oscillator monomial: sorted (color, mode) pairs, mode >= 1 meaning x(-mode).
/// Colors 0..N-1 are u_1..u_N, colors N..2N-1 are v_1..v_N.
using OscMonomial = std::vector<std::pair<int, int>>;

OscMonomial multiply(const OscMonomial& a, const OscMonomial& b);
int monomial_depth(const OscMonomial& m);

/// Polynomial in the oscillators.
using OscPolynomial = std::map<OscMonomial, Rational>;

class FockError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The module M^+_Hyp(alpha, beta): basis x_1(-n_1)...x_k(-n_k) e^{alpha u + beta v + s u}.
/// alpha = beta = 0 gives the vertex algebra V^+_Hyp itself.
class HypModule {
public:
    HypModule(int n, std::vector<Rational> alpha, std::vector<int> beta);

    int rank() const { return n_; }
    int colors() const { return 2 * n_; }
    const std::vector<Rational>& alpha() const { return alpha_; }
    const std::vector<int>& beta() const { return beta_; }
    bool is_u(int color) const { return color < n_; }
    int partner(int color) const { return color < n_ ? color + n_ : color - n_; }

    std::uint32_t intern(const std::vector<int>& s, const OscMonomial& mono);
    std::uint32_t base(const std::vector<int>& s) { return intern(s, {}); }
    const std::vector<int>& lattice(std::uint32_t id) const { return keys_[id].s; }
    const OscMonomial& monomial(std::uint32_t id) const { return keys_[id].mono; }
    int depth(std::uint32_t id) const { return depth_[id]; }
    std::size_t size() const { return keys_.size(); }

    /// (alpha + s).beta
    Rational lattice_weight(std::uint32_t id) const;
    Rational conformal_weight(std::uint32_t id) const { return lattice_weight(id) + Rational(depth(id)); }
    int pairing_beta(const std::vector<int>& r) const;

    /// x(n) for the basis vector of the given color.
    SparseVec oscillator_apply(int color, int n, std::uint32_t id);
    /// x(n) for x = sum_c coords[c] * color_c.
    SparseVec oscillator_apply(const std::vector<Rational>& coords, int n, const SparseVec& v);
    /// Multiplication by e^{r u}; the group algebra cocycle is trivial on these directions.
    SparseVec lattice_shift(const std::vector<int>& r, std::uint32_t id);
    /// Coefficient of z^p in Y(e^{ru}, z) applied to a basis vector.
    SparseVec exp_moment(const std::vector<int>& r, int p, std::uint32_t id);

    /// Elementary Schur polynomial S_b in x_j = sum_p r_p u_p(-j).
    const OscPolynomial& schur(const std::vector<int>& r, int b);

    /// Basis vectors with |s|_inf <= lattice_bound and depth <= max_depth,
    /// ordered by s (lexicographic), then depth, then monomial.
    std::vector<std::uint32_t> enumerate_basis(int max_depth, int lattice_bound);
    /// Monomials of exact depth d (sorted).
    std::vector<OscMonomial> monomials(int d) const;
    /// Number of monomials of depth d, by the same enumeration without storing them.
    unsigned long long count_monomials(int d) const;

    std::string describe(std::uint32_t id) const;

private:
    struct Key {
        std::vector<int> s;
        OscMonomial mono;
        bool operator==(const Key& o) const { return s == o.s && mono == o.mono; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    struct MemoHash {
        std::size_t operator()(const std::pair<std::vector<int>, std::pair<int, std::uint32_t>>& k) const;
    };

    int n_;
    std::vector<Rational> alpha_;
    std::vector<int> beta_;
    std::vector<Key> keys_;
    std::vector<int> depth_;
    std::unordered_map<Key, std::uint32_t, KeyHash> ids_;
    std::map<std::pair<std::vector<int>, int>, OscPolynomial> schur_;
    std::unordered_map<std::pair<std::vector<int>, std::pair<int, std::uint32_t>>, SparseVec, MemoHash> exp_memo_;
};

/// All integer vectors of length n with entries in [-bound, bound], lexicographic.
std::vector<std::vector<int>> lattice_box(int n, int bound);

}  // namespace toralg
