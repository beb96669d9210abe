#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toralg/fock.hpp"
#include "toralg/modes.hpp"
#include "toralg/toroidal.hpp"
#include "toralg/vertex.hpp"

namespace toralg {

class ActionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ActionParams {
    int N = 2;
    Rational mu = 0;
    Rational c = 1;
    std::shared_ptr<const SimpleLieTable> table;  // the finite simple algebra; null means (0)
    std::vector<Rational> alpha;                  // empty means 0
    std::vector<int> beta;                        // empty means 0
    TopSpace::Rep v_rep = TopSpace::Rep::Trivial;
    TopSpace::Rep w_rep = TopSpace::Rep::Trivial;
    Rational hbar = 0;
    bool rank_zero = false;          // rank-zero specialization on V^+_Hyp
    bool fbar_trivial = false;   // trivial one-dimensional f-bar factor
    Rational d0_shift = 0;
    bool drop_omega_summand = false;  // falsification fixture: omit u_1(-1)v_1(-1) from omega
    bool unchecked = false;           // skip the parameter-point checks of the rank-zero mode

    /// The rank-zero point: N = 12, mu = c = 1, trivial f-bar factor, d_0 shifted by +1.
    static ActionParams rank_zero_point(int n = 12);
    /// Throws ActionError if the parameters are inconsistent.
    void validate() const;
    nlohmann::json to_json() const;
};

/// sum coeff * (coefficient of z^power in Y(node, z)) + identity * Id
struct LinearOp {
    struct Term {
        Rational coeff;
        int node;
        int power;
    };
    std::vector<Term> terms;
    Rational identity = 0;

    void add(const LinearOp& o, const Rational& scale);
    bool empty() const { return terms.empty() && identity.is_zero(); }
};

/// Depth and lattice shift of an operator homogeneous of degree (j, r).
struct Grade {
    int depth = 0;
    std::vector<int> s;
    Grade operator+(const Grade& o) const;
};

/// Everything needed to represent g_div on one truncated module.
class ActionContext {
public:
    explicit ActionContext(ActionParams params);

    const ActionParams& params() const { return params_; }
    const AlgebraParams& algebra() const { return alg_; }
    TensorModule& module() { return *module_; }
    VertexEngine& engine() { return *engine_; }
    FieldPool& pool() { return *pool_; }
    const CentralCharacter& gamma0() const { return gamma0_; }
    const Rational& cbar_vir() const { return cbar_; }
    std::shared_ptr<const SimpleLieTable> sl_table() const { return sl_; }
    const ModuleSpec& fbar_spec() const { return module_->fbar().spec(); }

    int omega_total();
    int omega_hyp();

    /// The operator of a spanning element (general formulas or the rank-zero ones).
    const LinearOp& spanning_operator(const SpanningElement& e);
    /// The general assignment with the f-bar factor, independent of rank_zero.
    LinearOp general_operator(const SpanningElement& e);
    /// The rank-zero assignment.
    LinearOp rank_zero_operator(const SpanningElement& e);
    LinearOp represent(const TorElement& x);

    SparseVec apply(const LinearOp& op, const SparseVec& v);
    SparseVec apply(const SpanningElement& e, const SparseVec& v) { return apply(spanning_operator(e), v); }

    Grade grade(const SpanningElement& e) const;
    Grade grade(int j, const std::vector<int>& r) const;

private:
    std::vector<Rational> sl_vector(const Matrix& m) const;
    int current_node(int block, const std::vector<Rational>& coords);

    ActionParams params_;
    AlgebraParams alg_;
    std::shared_ptr<const SimpleLieTable> sl_;
    CentralCharacter gamma0_;
    Rational cbar_;
    std::shared_ptr<FieldPool> pool_;
    std::shared_ptr<TensorModule> module_;
    std::unique_ptr<VertexEngine> engine_;
    std::map<SpanningElement, LinearOp> ops_;
    int omega_total_ = -1;
    int omega_hyp_ = -1;
};

/// Builds the modules and returns the context; windows are applied by WindowIndex.
std::unique_ptr<ActionContext> build_module(const ActionParams& params);

/// Basis of the truncated module grouped by graded slice.
class WindowIndex {
public:
    WindowIndex(TensorModule& module, int max_depth, int lattice_bound);
    /// Restricted to the given lattice points only.
    WindowIndex(TensorModule& module, int max_depth, int lattice_bound, const std::vector<std::vector<int>>& points);

    int max_depth() const { return max_depth_; }
    int lattice_bound() const { return bound_; }
    std::size_t size() const { return total_; }
    const std::map<std::pair<int, std::vector<int>>, std::vector<std::uint64_t>>& slices() const { return slices_; }
    std::vector<std::uint64_t> all() const;

    bool inside(int depth, const std::vector<int>& s) const;
    /// Vectors whose images under x, y and the composite stay inside the window.
    std::vector<std::uint64_t> safe_zone(const Grade& gx, const Grade& gy) const;
    /// Number of safe vectors without materializing them.
    std::size_t safe_count(const Grade& gx, const Grade& gy) const;
    /// The safe slices.
    std::vector<const std::vector<std::uint64_t>*> safe_slices(const Grade& gx, const Grade& gy) const;

private:
    int max_depth_;
    int bound_;
    std::size_t total_ = 0;
    std::map<std::pair<int, std::vector<int>>, std::vector<std::uint64_t>> slices_;
};

struct CommutatorReport {
    SpanningElement x, y;
    std::size_t safe_count = 0;
    std::size_t checked = 0;
    bool residual_zero = true;
    bool skipped = false;  // empty safe zone
    std::optional<std::uint64_t> witness;
    std::string witness_text;
    std::string residual_text;

    nlohmann::json to_json() const;
};

/// [rho(x), rho(y)] = rho([x, y]) on the given vectors.
CommutatorReport verify_commutator(ActionContext& ctx, const SpanningElement& x, const SpanningElement& y,
                                   const std::vector<std::uint64_t>& vectors);
/// Same, with vectors taken from the safe zone of the window (all of them, or a
/// seeded sample of at most `sample` vectors when sample > 0).
CommutatorReport verify_commutator(ActionContext& ctx, const SpanningElement& x, const SpanningElement& y,
                                   const WindowIndex& window, std::size_t sample, std::uint64_t seed);

struct VirasoroRankReport {
    Rational expected;  // total central charge / 2
    std::vector<Rational> observed;
    std::size_t checked = 0;
    bool pass = true;
    std::string failure;
    nlohmann::json to_json() const;
};
/// ([L(2), L(-2)] - 4 L(0)) v = (c_total / 2) v on the given vectors, with c_total = 2N + cbar_Vir.
VirasoroRankReport verify_virasoro_rank(ActionContext& ctx, const std::vector<std::uint64_t>& vectors);

struct SingularCandidate {
    int depth = 0;
    std::vector<int> s;
    SparseVec vector;
    std::string text;
};

struct SingularScanReport {
    int max_degree = 0;
    std::size_t slices = 0;
    std::size_t raising_operators = 0;
    std::vector<SingularCandidate> candidates;
    nlohmann::json to_json() const;
};

/// For each slice (d, s) with 1 <= d <= max_degree, solves for vectors killed by
/// every depth-lowering spanning operator with |j| <= max_degree + r_bound, |r| <= r_bound.
SingularScanReport singular_scan(ActionContext& ctx, int max_degree, const std::vector<std::vector<int>>& points,
                                 int r_bound = 1);

/// Singular vectors of an f-bar (or any mode-algebra) module for a list of raising modes.
SingularScanReport singular_scan_modes(ModeModule& module, const std::vector<ModeSym>& raising, int max_degree);

/// Null combinations of columns: returns a basis of {x : sum_k x_k cols[k] = 0}.
std::vector<std::vector<Rational>> column_nullspace(const std::vector<std::vector<std::pair<std::uint64_t, Rational>>>& cols);

std::string describe_state(TensorModule& module, const SparseVec& v, std::size_t max_terms = 6);

}  // namespace toralg
