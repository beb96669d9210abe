#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "toralg/fock.hpp"
#include "toralg/rational.hpp"
#include "toralg/vertex.hpp"

namespace toralg {

/// Graded dimensions keyed by (depth n, lattice point s). The d_0 eigenvalue
/// of an entry is d0_top - n - (alpha + s).beta; the table stores n >= 0.
struct CharacterTable {
    struct Entry {
        long long dim = 0;
        Rational d0;
    };
    int rank = 0;
    Rational d0_top = 0;
    std::map<std::pair<int, std::vector<int>>, Entry> entries;

    long long total() const;
    long long at(int n, const std::vector<int>& s) const;
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Character of the oscillator-lattice module in the window depth <= max_depth, |s|_inf <= bound.
CharacterTable graded_character(HypModule& module, int max_depth, int lattice_bound, const Rational& d0_top = 0);
/// Same on the given lattice points; slices deeper than `materialize_depth`
/// are counted by enumeration without interning basis vectors.
CharacterTable graded_character(HypModule& module, int max_depth, const std::vector<std::vector<int>>& points,
                                const Rational& d0_top, int materialize_depth);
/// Character of a tensor module (both factors contribute to the depth).
CharacterTable graded_character(TensorModule& module, int max_depth, int lattice_bound, const Rational& d0_top = 0);

/// Coefficients of prod_{k>=1} (1 - q^k)^(-colors) up to q^max_n.
struct SeriesExpansion {
    int colors = 0;
    std::vector<mpz_class> coeffs;  // index n = power of q

    std::vector<std::string> str() const;
};

/// Expands the product factor by factor.
SeriesExpansion series_direct(int colors, int max_n);
/// n a_n = colors * sum_k sigma(k) a_{n-k}.
SeriesExpansion series_euler(int colors, int max_n);
/// Both algorithms; throws std::logic_error if they disagree.
SeriesExpansion colored_partition_series(int colors, int max_n);

struct CharacterComparison {
    bool pass = true;
    std::size_t checked = 0;
    std::string mismatch;  // first failing location
    nlohmann::json to_json() const;
};

/// table(n, s) == series(n) for every entry of the table with n within the series.
CharacterComparison compare_character(const CharacterTable& table, const SeriesExpansion& series);

}  // namespace toralg
