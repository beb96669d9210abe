#include "toralg/characters.hpp"

#include <sstream>
#include <stdexcept>

namespace toralg {

long long CharacterTable::total() const {
    long long t = 0;
    for (const auto& [k, e] : entries) t += e.dim;
    return t;
}

long long CharacterTable::at(int n, const std::vector<int>& s) const {
    auto it = entries.find({n, s});
    return it == entries.end() ? 0 : it->second.dim;
}

std::string CharacterTable::to_csv() const {
    std::ostringstream out;
    // depth n counts down from the top d_0 eigenvalue
    out << "depth,d0";
    for (int p = 1; p <= rank; ++p) out << ",s" << p;
    out << ",dim\n";
    for (const auto& [key, e] : entries) {
        out << key.first << "," << e.d0.str();
        for (int x : key.second) out << "," << x;
        out << "," << e.dim << "\n";
    }
    return out.str();
}

nlohmann::json CharacterTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, e] : entries) rows.push_back({{"depth", key.first}, {"s", key.second}, {"d0", e.d0.str()}, {"dim", e.dim}});
    return {{"convention", "depth n >= 0; d0 = d0_top - n - (alpha+s).beta"},
            {"d0_top", d0_top.str()},
            {"total", total()},
            {"entries", rows}};
}

CharacterTable graded_character(HypModule& module, int max_depth, int lattice_bound, const Rational& d0_top) {
    CharacterTable t;
    t.rank = module.rank();
    t.d0_top = d0_top;
    for (auto id : module.enumerate_basis(max_depth, lattice_bound)) {
        auto& e = t.entries[{module.depth(id), module.lattice(id)}];
        if (e.dim == 0) e.d0 = d0_top - module.conformal_weight(id);
        ++e.dim;
    }
    return t;
}

CharacterTable graded_character(HypModule& module, int max_depth, const std::vector<std::vector<int>>& points,
                                const Rational& d0_top, int materialize_depth) {
    CharacterTable t;
    t.rank = module.rank();
    t.d0_top = d0_top;
    std::vector<long long> counted(max_depth + 1, 0);
    for (int d = materialize_depth + 1; d <= max_depth; ++d) counted[d] = static_cast<long long>(module.count_monomials(d));
    for (const auto& s : points)
        for (int d = 0; d <= max_depth; ++d) {
            auto& e = t.entries[{d, s}];
            if (d <= materialize_depth) {
                for (const auto& m : module.monomials(d)) {
                    auto id = module.intern(s, m);
                    if (e.dim == 0) e.d0 = d0_top - module.conformal_weight(id);
                    ++e.dim;
                }
            } else {
                e.dim = counted[d];
                e.d0 = d0_top - module.conformal_weight(module.base(s)) - Rational(d);
            }
            if (e.dim == 0) t.entries.erase({d, s});
        }
    return t;
}

CharacterTable graded_character(TensorModule& module, int max_depth, int lattice_bound, const Rational& d0_top) {
    CharacterTable t;
    t.rank = module.hyp().rank();
    t.d0_top = d0_top;
    for (const auto& s : lattice_box(t.rank, lattice_bound))
        for (int d = 0; d <= max_depth; ++d) {
            auto ids = module.slice(d, s);
            if (ids.empty()) continue;
            auto& e = t.entries[{d, s}];
            e.dim = static_cast<long long>(ids.size());
            e.d0 = d0_top - module.weight(ids.front());
        }
    return t;
}

std::vector<std::string> SeriesExpansion::str() const {
    std::vector<std::string> out;
    for (const auto& c : coeffs) out.push_back(c.get_str());
    return out;
}

SeriesExpansion series_direct(int colors, int max_n) {
    if (max_n < 0 || colors < 0) throw std::invalid_argument("series needs max_n >= 0 and colors >= 0");
    SeriesExpansion s{colors, std::vector<mpz_class>(max_n + 1, 0)};
    s.coeffs[0] = 1;
    for (int k = 1; k <= max_n; ++k)
        for (int c = 0; c < colors; ++c)
            for (int n = k; n <= max_n; ++n) s.coeffs[n] += s.coeffs[n - k];
    return s;
}

SeriesExpansion series_euler(int colors, int max_n) {
    if (max_n < 0 || colors < 0) throw std::invalid_argument("series needs max_n >= 0 and colors >= 0");
    std::vector<mpz_class> sigma(max_n + 1, 0);
    for (int d = 1; d <= max_n; ++d)
        for (int m = d; m <= max_n; m += d) sigma[m] += d;
    SeriesExpansion s{colors, std::vector<mpz_class>(max_n + 1, 0)};
    s.coeffs[0] = 1;
    for (int n = 1; n <= max_n; ++n) {
        mpz_class acc = 0;
        for (int k = 1; k <= n; ++k) acc += sigma[k] * s.coeffs[n - k];
        acc *= colors;
        if (acc % n != 0) throw std::logic_error("Euler recurrence produced a non-integer");
        s.coeffs[n] = acc / n;
    }
    return s;
}

SeriesExpansion colored_partition_series(int colors, int max_n) {
    auto a = series_direct(colors, max_n);
    auto b = series_euler(colors, max_n);
    if (a.coeffs != b.coeffs) throw std::logic_error("series algorithms disagree");
    return a;
}

nlohmann::json CharacterComparison::to_json() const {
    nlohmann::json j{{"pass", pass}, {"checked", checked}};
    if (!pass) j["mismatch"] = mismatch;
    return j;
}

CharacterComparison compare_character(const CharacterTable& table, const SeriesExpansion& series) {
    CharacterComparison r;
    for (const auto& [key, e] : table.entries) {
        const auto& [n, s] = key;
        if (n >= static_cast<int>(series.coeffs.size())) continue;
        ++r.checked;
        if (series.coeffs[n] != mpz_class(static_cast<long>(e.dim))) {
            r.pass = false;
            std::ostringstream m;
            m << "depth " << n << " at s=(";
            for (std::size_t p = 0; p < s.size(); ++p) m << (p ? "," : "") << s[p];
            m << "): table " << e.dim << ", series " << series.coeffs[n].get_str();
            r.mismatch = m.str();
            break;
        }
    }
    return r;
}

}  // namespace toralg
