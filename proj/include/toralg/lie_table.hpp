#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toralg/rational.hpp"

namespace toralg {

using Matrix = std::vector<std::vector<Rational>>;

class LieTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional simple Lie algebra given by structure constants in a
/// fixed basis, together with its invariant form (normalized so that the
/// highest root has square length 2) and enough weight data to evaluate
/// (lambda | lambda + 2 rho).
struct SimpleLieTable {
    using Bracket = std::vector<std::pair<int, Rational>>;  // (k, c_ij^k)

    std::string name;
    std::vector<std::string> basis;
    std::vector<std::vector<Bracket>> brackets;  // brackets[i][j] = [g_i, g_j]
    Matrix form;                                 // (g_i | g_j)
    int dual_coxeter = 0;
    Matrix fundamental_form;                     // (omega_i | omega_j)
    std::vector<int> highest_root;               // Dynkin labels of theta

    int dim() const { return static_cast<int>(basis.size()); }
    int rank() const { return static_cast<int>(fundamental_form.size()); }
    bool empty() const { return basis.empty(); }

    const Bracket& bracket(int i, int j) const { return brackets.at(i).at(j); }
    /// Coefficient c_ij^k.
    Rational structure_constant(int i, int j, int k) const;
    /// Inverse of the form matrix; throws if the form is singular.
    Matrix inverse_form() const;
    /// ad(g_i) as a dim x dim matrix acting on column coordinate vectors.
    Matrix adjoint_matrix(int i) const;
    int index_of(const std::string& symbol) const;
};

/// Loads the JSON definition format (fields basis, brackets, form,
/// dual_coxeter, weights). Rationals are strings "p" or "p/q".
SimpleLieTable load_lie_table(const std::filesystem::path& path);
SimpleLieTable parse_lie_table(const std::string& json_text);
std::string lie_table_to_json(const SimpleLieTable& table);

/// sl_N in the basis E_ab (a != b, lexicographic) followed by
/// H_i = E_ii - E_{i+1,i+1}, with the trace form.
SimpleLieTable make_sl(int n);
/// The zero algebra (rank 0).
SimpleLieTable make_zero_algebra();

/// Coordinates of a traceless N x N matrix in the make_sl(N) basis.
std::vector<Rational> sl_coordinates(const Matrix& traceless, int n);
/// The N x N matrix of make_sl(N) basis element `index`.
Matrix sl_basis_matrix(int index, int n);

struct LieValidationReport {
    bool ok = true;
    bool rank_zero = false;
    std::vector<std::string> violations;
};

/// Checks antisymmetry, the Jacobi identity, symmetry/invariance and
/// non-degeneracy of the form. Every failing triple is listed.
LieValidationReport validate_lie_table(const SimpleLieTable& table);

/// (lambda | lambda + 2 rho) for the highest weight with the given Dynkin labels.
Rational casimir_eigenvalue(const SimpleLieTable& table, const std::vector<int>& dynkin_labels);

/// Exact Gaussian elimination helpers shared by the scanning code.
Matrix invert(const Matrix& m);
Rational determinant(Matrix m);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix identity_matrix(int n);

}  // namespace toralg
