#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "toralg/lie_table.hpp"
#include "toralg/lin_comb.hpp"
#include "toralg/rational.hpp"

namespace toralg {

/// Mode symbols of the Virasoro-Heisenberg-affine family of algebras.
/// Ordered by (mode, family, block, index); this order is also the PBW order.
struct ModeSym {
    enum class Fam : int { Vir = 0, VirBar = 1, Heis = 2, Cur = 3, Central = 4 };
    int mode = 0;
    Fam fam = Fam::Vir;
    int block = 0;
    int index = 0;

    friend auto operator<=>(const ModeSym&, const ModeSym&) = default;
    friend bool operator==(const ModeSym&, const ModeSym&) = default;
    std::string str() const;
};

/// Central symbol indices (ModeSym::index for Fam::Central).
enum CentralKind : int { kCVir = 0, kCVirBar = 1, kCVH = 2, kCHei = 3, kLevel0 = 4 };

inline ModeSym L(int n) { return {n, ModeSym::Fam::Vir, 0, 0}; }
inline ModeSym Lbar(int n) { return {n, ModeSym::Fam::VirBar, 0, 0}; }
inline ModeSym I(int n) { return {n, ModeSym::Fam::Heis, 0, 0}; }
inline ModeSym X(int block, int index, int n) { return {n, ModeSym::Fam::Cur, block, index}; }
inline ModeSym central(int kind) { return {0, ModeSym::Fam::Central, 0, kind}; }
inline ModeSym level(int block) { return central(kLevel0 + block); }

using ModeComb = LinComb<ModeSym>;

/// Which generators are present. Current blocks carry their own Lie table;
/// the level of block b is the central symbol level(b).
struct ModeAlgebra {
    bool vir = false;
    bool virbar = false;
    bool heis = false;
    std::vector<std::shared_ptr<const SimpleLieTable>> blocks;

    /// HVir (L, I and the three centrals).
    static ModeAlgebra hvir();
    /// Vir-bar semidirect with the given current blocks.
    static ModeAlgebra fbar(std::vector<std::shared_ptr<const SimpleLieTable>> blocks);
    /// Current blocks only (affine algebra).
    static ModeAlgebra affine(std::vector<std::shared_ptr<const SimpleLieTable>> blocks);

    bool contains(const ModeSym& s) const;
};

/// Bracket of two mode symbols.
ModeComb mode_bracket(const ModeSym& a, const ModeSym& b, const ModeAlgebra& alg);
/// Bilinear extension.
ModeComb hvir_bracket(const ModeComb& x, const ModeComb& y, const ModeAlgebra& alg);

/// The embedding of Vir-bar into HVir twisted by sigma; identity on currents and levels.
ModeComb rho_sigma(const ModeComb& x, const Rational& sigma);

struct CentralCharacter {
    Rational c_g, c_sl, c_hei, c_vh, c_vir;
    friend bool operator==(const CentralCharacter&, const CentralCharacter&) = default;
};

/// The toroidal central character gamma_0.
CentralCharacter central_character_gamma0(const Rational& c, const Rational& mu, int n);

struct BarredCharges {
    Rational h_shift;
    Rational cbar_vir;
};
BarredCharges barred_charges(const CentralCharacter& gamma, const Rational& sigma);
/// Closed form of cbar_vir at sigma = 1/N.
Rational cbar_closed_form(const Rational& mu, const Rational& c, int n);

class CriticalLevelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SugawaraCharges {
    Rational c_prime;
    Rational h_prime;
    Rational omega_v;
    Rational omega_w;
};
/// Coset central charge and conformal weight. V and W are Dynkin labels for
/// the finite algebra of `table` and for sl_N.
SugawaraCharges sugawara_charges(const Rational& c_g, const Rational& c_sl, const Rational& cbar_vir,
                                 const SimpleLieTable& table, const std::vector<int>& v_labels, int n,
                                 const std::vector<int>& w_labels, const Rational& hbar);
/// Closed form of c' at the toroidal point.
Rational cprime_closed_form(const Rational& mu, const Rational& c, int n, const SimpleLieTable& table);

/// Finite-dimensional top space: a tensor product of one representation per block.
struct TopSpace {
    int dim = 1;
    std::vector<std::vector<Matrix>> rep;  // rep[block][i] is dim x dim
    std::vector<std::vector<int>> labels;  // Dynkin labels per block

    enum class Rep { Trivial, Adjoint };
    static TopSpace make(const std::vector<std::shared_ptr<const SimpleLieTable>>& blocks, const std::vector<Rep>& reps);
};

struct ModuleSpec {
    ModeAlgebra alg;
    std::map<int, Rational> central;  // CentralKind or level index -> value
    Rational h = 0;                   // L(0) / Lbar(0) on the top
    Rational h_hei = 0;
    TopSpace top;
    bool vacuum = false;  // the vacuum module: Vir starts at -2 and L(-1) kills the top

    Rational central_value(int kind) const;
};

/// Generalized Verma module (or vacuum module) in a PBW basis. Basis vectors
/// are interned; applying modes is exact and never truncates.
class ModeModule {
public:
    explicit ModeModule(ModuleSpec spec);

    const ModuleSpec& spec() const { return spec_; }
    std::uint32_t top_id(int t = 0);
    std::uint32_t intern(const std::vector<ModeSym>& mono, int top);
    const std::vector<ModeSym>& monomial(std::uint32_t id) const { return keys_[id].mono; }
    int top_index(std::uint32_t id) const { return keys_[id].top; }
    int depth(std::uint32_t id) const { return depth_[id]; }
    std::size_t size() const { return keys_.size(); }

    bool is_creation(const ModeSym& s) const;
    /// Creation symbols of the given depth, in PBW order.
    std::vector<ModeSym> creation_symbols(int depth) const;

    SparseVec apply(const ModeSym& x, std::uint32_t id);
    SparseVec apply(const ModeSym& x, const SparseVec& v);
    SparseVec apply(const ModeComb& x, const SparseVec& v);

    /// All basis vectors of depth <= max_depth (deterministic order).
    std::vector<std::uint32_t> basis(int max_depth);
    /// Basis vectors of exactly the given depth.
    std::vector<std::uint32_t> basis_at(int depth);

    std::string describe(std::uint32_t id) const;

private:
    struct Key {
        std::vector<ModeSym> mono;
        int top;
        bool operator==(const Key& o) const { return top == o.top && mono == o.mono; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    struct MemoKey {
        ModeSym s;
        std::uint32_t id;
        bool operator==(const MemoKey& o) const { return id == o.id && s == o.s; }
    };
    struct MemoHash {
        std::size_t operator()(const MemoKey& k) const;
    };

    SparseVec act_top(const ModeSym& x, int t);
    void enumerate(int depth, int max_part, std::size_t start, std::vector<ModeSym>& cur,
                   std::vector<std::vector<ModeSym>>& out);

    ModuleSpec spec_;
    std::vector<Key> keys_;
    std::vector<int> depth_;
    std::unordered_map<Key, std::uint32_t, KeyHash> ids_;
    std::unordered_map<MemoKey, SparseVec, MemoHash> memo_;
};

/// Sugawara L(n) built from current block `block` of the module.
SparseVec sugawara_apply(ModeModule& module, int block, int n, const SparseVec& v);

/// Degree-wise PBW counts of a module: coefficient d = number of basis
/// vectors at depth d (times the top dimension).
std::vector<long long> pbw_dimensions(const ModeModule& module, int max_depth);

}  // namespace toralg
