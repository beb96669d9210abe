#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "toralg/fock.hpp"
#include "toralg/lin_comb.hpp"
#include "toralg/modes.hpp"
#include "toralg/rational.hpp"

namespace toralg {

class VertexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A node of the state grammar. Prod(a, b) is a_{(-1)} b, Deriv(a) is D a.
struct FieldNode {
    enum class Kind { Vacuum, Heis, Current, Vir, Exp, Prod, Deriv, Sum };
    Kind kind = Kind::Vacuum;
    std::vector<Rational> vec;                 // Heis: 2N coordinates; Current: block coordinates
    int block = 0;                             // Current
    std::vector<int> r;                        // Exp
    int a = -1, b = -1;                        // Prod / Deriv children
    std::vector<std::pair<Rational, int>> terms;  // Sum
    int wt = 0;                                // conformal weight of the state
    std::vector<int> charge;                   // lattice charge (multiple of u)
};

/// Hash-consed pool of field nodes; ids are stable.
class FieldPool {
public:
    explicit FieldPool(int n) : n_(n) {}
    int rank() const { return n_; }

    int vacuum();
    int heis(const std::vector<Rational>& coords);
    int u(int p);  // u_p, p in 1..N
    int v(int p);  // v_p, p in 1..N
    int current(int block, const std::vector<Rational>& coords);
    int vir();
    int exp(const std::vector<int>& r);
    int prod(int a, int b);
    int deriv(int a);
    int sum(const std::vector<std::pair<Rational, int>>& terms);
    /// Sum of u_p(-1) v_p(-1) 1 over p.
    int omega_hyp();

    const FieldNode& node(int id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    std::string str(int id) const;

private:
    int add(FieldNode n, const std::string& key);
    int n_;
    std::vector<FieldNode> nodes_;
    std::unordered_map<std::string, int> index_;
};

/// A state descriptor together with an affinization shift k (a (x) t^k).
struct FieldDescriptor {
    int node = 0;
    int shift = 0;
};

/// M^+_Hyp(alpha, beta) (x) M_fbar with packed basis ids (hyp << 32 | fbar).
/// When `fbar_trivial` is set the second factor is the trivial one-dimensional
/// module on which every current and Virasoro mode acts as zero.
class TensorModule {
public:
    TensorModule(std::shared_ptr<HypModule> hyp, std::shared_ptr<ModeModule> fbar, bool fbar_trivial);

    HypModule& hyp() { return *hyp_; }
    ModeModule& fbar() { return *fbar_; }
    const HypModule& hyp() const { return *hyp_; }
    const ModeModule& fbar() const { return *fbar_; }
    bool fbar_trivial() const { return trivial_; }

    static std::uint64_t pack(std::uint32_t h, std::uint32_t f) { return (static_cast<std::uint64_t>(h) << 32) | f; }
    static std::uint32_t hyp_part(std::uint64_t id) { return static_cast<std::uint32_t>(id >> 32); }
    static std::uint32_t fbar_part(std::uint64_t id) { return static_cast<std::uint32_t>(id & 0xffffffffu); }

    int depth(std::uint64_t id) const { return hyp_->depth(hyp_part(id)) + fbar_->depth(fbar_part(id)); }
    const std::vector<int>& lattice(std::uint64_t id) const { return hyp_->lattice(hyp_part(id)); }
    /// The weight of a basis vector relative to the top weight of the f-bar factor.
    Rational weight(std::uint64_t id) const;
    std::uint64_t vacuum();
    std::string describe(std::uint64_t id) const;

    /// Basis vectors with total depth <= max_depth and |s|_inf <= lattice_bound.
    std::vector<std::uint64_t> window(int max_depth, int lattice_bound);
    /// Basis vectors of one graded slice.
    std::vector<std::uint64_t> slice(int depth, const std::vector<int>& s);

private:
    std::shared_ptr<HypModule> hyp_;
    std::shared_ptr<ModeModule> fbar_;
    bool trivial_;
};

/// Moment engine: coefficient operators of z^k Y(a, z) on a TensorModule.
class VertexEngine {
public:
    VertexEngine(std::shared_ptr<FieldPool> pool, std::shared_ptr<TensorModule> module);

    FieldPool& pool() { return *pool_; }
    TensorModule& module() { return *module_; }

    /// Coefficient of z^power in Y(node, z) applied to a basis vector.
    SparseVec moment(int node, int power, std::uint64_t id);
    SparseVec moment(int node, int power, const SparseVec& v);
    /// Coefficient of z^power in z^shift Y(node, z).
    SparseVec moment(const FieldDescriptor& f, int power, const SparseVec& v) {
        return moment(f.node, power - f.shift, v);
    }

    /// Depth change of the moment (independent of the vector).
    int depth_shift(int node, int power) const;

    /// Memo statistics.
    std::size_t memo_size() const { return memo_.size(); }
    void clear_memo() { memo_.clear(); }

private:
    struct Key {
        int node;
        int power;
        std::uint64_t id;
        bool operator==(const Key& o) const { return node == o.node && power == o.power && id == o.id; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return (static_cast<std::size_t>(k.node) * 0x9e3779b97f4a7c15ull) ^ (static_cast<std::size_t>(k.power + 4096) << 40) ^
                   (k.id * 0xff51afd7ed558ccdull);
        }
    };
    SparseVec compute(int node, int power, std::uint64_t id);
    int charge_beta(int node) const;

    std::shared_ptr<FieldPool> pool_;
    std::shared_ptr<TensorModule> module_;
    std::unordered_map<Key, SparseVec, KeyHash> memo_;
};

/// The vertex algebra itself (alpha = beta = 0, vacuum module of f-bar)
/// with n-th products and descriptors for its basis vectors.
class VertexAlgebra {
public:
    VertexAlgebra(std::shared_ptr<FieldPool> pool, int n, const ModuleSpec& fbar_vacuum_spec, bool fbar_trivial);

    VertexEngine& engine() { return engine_; }
    /// The state of a descriptor: coefficient of z^0 in Y(a, z) 1.
    SparseVec state(int node);
    /// a_{(n)} b.
    SparseVec nth_product(int a, int b, int n);
    /// A descriptor whose state is the given basis vector (with coefficient 1).
    int node_of_basis(std::uint64_t id);

private:
    std::shared_ptr<FieldPool> pool_;
    std::shared_ptr<TensorModule> module_;
    VertexEngine engine_;
    std::unordered_map<std::uint64_t, int> basis_nodes_;
};

/// A shifted family a = sum_s a^s (x) t^{-s}.
using ShiftedFamily = std::vector<std::pair<int, int>>;  // (s, node)

/// c^{n,j} of the commutator expansion, as states of the vertex algebra: result[n][j].
std::vector<std::map<int, SparseVec>> bracket_expand(VertexAlgebra& voa, const ShiftedFamily& a, const ShiftedFamily& b);

/// Coefficient of z^power in Y(state, z) applied to w, for a state of the vertex algebra.
SparseVec state_moment(VertexAlgebra& voa, VertexEngine& engine, const SparseVec& state, int power, const SparseVec& w);

/// [A_P, B_Q] predicted from the expansion, applied to v on the module of `engine`.
SparseVec reassembled_commutator(VertexAlgebra& voa, VertexEngine& engine, const std::vector<std::map<int, SparseVec>>& c,
                                 int P, int Q, const SparseVec& v);
/// The coefficient of z^P of sum_s z^{-s} Y(a^s, z) applied to v.
SparseVec family_moment(VertexEngine& engine, const ShiftedFamily& a, int P, const SparseVec& v);

/// Operator identity check on basis vectors. Each side is a list of products
/// of at most two moments with coefficients.
struct MomentFactor {
    FieldDescriptor field;
    int power = 0;
};
struct MomentProduct {
    Rational coeff = 1;
    std::vector<MomentFactor> factors;  // applied right to left
};
struct IdentityReport {
    bool pass = true;
    std::size_t checked = 0;
    std::uint64_t witness = 0;
    SparseVec residual;
};
IdentityReport field_identity_check(VertexEngine& engine, const std::vector<MomentProduct>& lhs,
                                    const std::vector<MomentProduct>& rhs, const std::vector<std::uint64_t>& vectors);

SparseVec apply_products(VertexEngine& engine, const std::vector<MomentProduct>& side, const SparseVec& v);

}  // namespace toralg
