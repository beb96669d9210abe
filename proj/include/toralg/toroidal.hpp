#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "toralg/lie_table.hpp"
#include "toralg/lin_comb.hpp"
#include "toralg/rational.hpp"

namespace toralg {

/// Exponent vector r = (r_0, r_1, ..., r_N) of the Laurent monomial t^r.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> v) : v_(std::move(v)) {}
    static MultiIndex zero(int n_plus_one) { return MultiIndex(std::vector<int>(n_plus_one, 0)); }
    /// (j, r_1..r_N)
    static MultiIndex from(int j, const std::vector<int>& spatial);

    int size() const { return static_cast<int>(v_.size()); }
    int operator[](int p) const { return v_.at(p); }
    int& operator[](int p) { return v_.at(p); }
    bool is_zero() const;
    /// max{p : r_p != 0}, or -1 for the zero index.
    int pivot() const;
    std::vector<int> spatial() const { return {v_.begin() + 1, v_.end()}; }
    const std::vector<int>& values() const { return v_; }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator-(const MultiIndex& a);
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    std::string str() const;

private:
    std::vector<int> v_;
};

/// t^m g_i, t^m k_p or t^m d_a.
struct TorSymbol {
    enum class Kind : int { Cur = 0, Cen = 1, Der = 2 };
    Kind kind;
    MultiIndex m;
    int index;

    friend auto operator<=>(const TorSymbol&, const TorSymbol&) = default;
    friend bool operator==(const TorSymbol&, const TorSymbol&) = default;
    std::string str(const SimpleLieTable* table = nullptr) const;
};

using TorCombination = LinComb<TorSymbol>;
/// A TorCombination held in K-canonical form (pivot center symbols eliminated).
using TorElement = TorCombination;

inline TorCombination cur(const MultiIndex& m, int i, Rational c = 1) { return {TorSymbol{TorSymbol::Kind::Cur, m, i}, c}; }
inline TorCombination cen(const MultiIndex& m, int p, Rational c = 1) { return {TorSymbol{TorSymbol::Kind::Cen, m, p}, c}; }
inline TorCombination der(const MultiIndex& m, int a, Rational c = 1) { return {TorSymbol{TorSymbol::Kind::Der, m, a}, c}; }

class ToroidalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlgebraParams {
    int N = 1;
    Rational mu = 0;
    std::shared_ptr<const SimpleLieTable> table;

    AlgebraParams(int n, Rational m, std::shared_ptr<const SimpleLieTable> t);
    const SimpleLieTable& lie() const { return *table; }
};

/// Eliminates, for every r != 0, the coefficient of t^r k_{p*} with
/// p* = pivot(r) using sum_p r_p t^r k_p = 0. Idempotent.
TorElement reduce_kassel_center(const TorCombination& x);

/// Lie bracket of g(mu), K-canonically reduced.
TorElement bracket(const TorCombination& x, const TorCombination& y, const AlgebraParams& params);

/// For sum_a f_a t^r d_a returns sum_r (sum_a f_a r_a) t^r; the input may contain Der symbols only.
LinComb<MultiIndex> divergence(const TorCombination& x);
bool is_divergence_free(const TorCombination& x);

/// The symmetric invariant form on g_div. Errors if the Der part of an
/// argument is not divergence free.
Rational invariant_form(const TorCombination& x, const TorCombination& y, const SimpleLieTable& table);

/// Labels of the spanning set of g_div.
struct SpanningElement {
    enum class Kind { Center, Current, D0, Dp, Dab, Dhat };
    Kind kind;
    int j = 0;               // t_0 power
    std::vector<int> r;      // spatial multi-index (length N)
    int a = 0;               // k_p / g index / d_p / d_ab first / d-hat index
    int b = 0;               // d_ab second index

    MultiIndex degree() const { return MultiIndex::from(j, r); }
    std::string str() const;
    friend auto operator<=>(const SpanningElement&, const SpanningElement&) = default;
    friend bool operator==(const SpanningElement&, const SpanningElement&) = default;
};

struct SpanningWindow {
    int j_bound = 1;  // |j| <= j_bound
    int r_bound = 1;  // |r|_inf <= r_bound
};

/// The element of g_div named by a spanning label. `c` enters only the k_0 correction of d-hat.
TorElement spanning_value(const SpanningElement& e, const AlgebraParams& params, const Rational& c);

/// All nonzero spanning elements in the window (centers, currents, d_0,
/// t_0^j d_p, d_ab with a<b, d-hat_a). Throws if c == 0.
std::vector<SpanningElement> gdiv_spanning(const AlgebraParams& params, const Rational& c, const SpanningWindow& window);

/// Writes x as a combination of spanning elements. Throws if x is not in g_div.
std::vector<std::pair<SpanningElement, Rational>> decompose_gdiv(const TorElement& x, const AlgebraParams& params,
                                                                  const Rational& c);

nlohmann::json to_json(const TorCombination& x, const SimpleLieTable* table = nullptr);
std::string to_string(const TorCombination& x, const SimpleLieTable* table = nullptr);

}  // namespace toralg
