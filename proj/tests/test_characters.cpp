#include <doctest.h>

#include <functional>

#include "toralg/characters.hpp"
#include "toralg/rep.hpp"
#include "toralg/suites.hpp"

using namespace toralg;

namespace {

// multisets of colored parts summing to n, counted by brute recursion
long long brute_colored(int colors, int n) {
    std::function<long long(int, int)> go = [&](int rest, int max_part) -> long long {
        if (rest == 0) return 1;
        long long total = 0;
        for (int part = std::min(rest, max_part); part >= 1; --part) {
            // choose how many parts of this size, as a multiset over colors
            for (int k = 1; k * part <= rest; ++k) {
                long long ways = 1;  // C(colors + k - 1, k)
                for (int t = 1; t <= k; ++t) ways = ways * (colors + k - t) / t;
                total += ways * go(rest - k * part, part - 1);
            }
        }
        return total;
    };
    return go(n, n);
}

}  // namespace

TEST_CASE("24-color series") {
    auto s = colored_partition_series(24, 8);
    CHECK(s.str()[0] == "1");
    CHECK(s.str()[1] == "24");
    CHECK(s.str()[2] == "324");
    CHECK(s.str()[3] == "3200");
    for (int n = 0; n <= 6; ++n) CHECK(s.coeffs[n] == mpz_class(static_cast<long>(brute_colored(24, n))));
}

TEST_CASE("one color gives partitions") {
    auto s = colored_partition_series(1, 12);
    CHECK(s.coeffs[5] == 7);
    CHECK(s.coeffs[12] == 77);
    for (int colors : {2, 3, 5})
        for (int n = 0; n <= 7; ++n) CHECK(series_euler(colors, 7).coeffs[n] == mpz_class(static_cast<long>(brute_colored(colors, n))));
    CHECK(series_direct(0, 3).coeffs == std::vector<mpz_class>{1, 0, 0, 0});
    CHECK_THROWS(series_direct(-1, 3));
}

TEST_CASE("large coefficients stay exact") {
    auto a = series_direct(24, 60);
    auto b = series_euler(24, 60);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs[60] > mpz_class("1000000000000000000000000"));
}

TEST_CASE("rank-zero character against the series") {
    HypModule m(12, {}, {});
    auto t = graded_character(m, 3, 0, Rational(1));
    auto cmp = compare_character(t, colored_partition_series(24, 3));
    CHECK(cmp.pass);
    CHECK(cmp.checked == 4u);
    auto wrong = compare_character(t, colored_partition_series(23, 3));
    CHECK_FALSE(wrong.pass);
    CHECK(wrong.mismatch == "depth 1 at s=(0,0,0,0,0,0,0,0,0,0,0,0): table 24, series 23");
    CHECK(t.at(2, std::vector<int>(12, 0)) == 324);
    CHECK(t.entries.at({2, std::vector<int>(12, 0)}).d0 == Rational(-1));
}

TEST_CASE("N = 2 lattice factor against 4 colors, totals match the basis") {
    HypModule m(2, {}, {});
    auto t = graded_character(m, 5, 1, Rational(0));
    CHECK(compare_character(t, colored_partition_series(4, 5)).pass);
    CHECK(t.total() == static_cast<long long>(m.enumerate_basis(5, 1).size()));
    auto single = graded_character(m, 0, 0, Rational(0));
    CHECK(single.entries.size() == 1u);
    CHECK(single.total() == 1);
}

TEST_CASE("counted slices agree with materialized ones") {
    HypModule m(3, {}, {});
    std::vector<std::vector<int>> pts{{0, 0, 0}, {1, -1, 0}};
    auto a = graded_character(m, 5, pts, Rational(1), 5);
    auto b = graded_character(m, 5, pts, Rational(1), 1);
    REQUIRE(a.entries.size() == b.entries.size());
    for (const auto& [k, e] : a.entries) {
        CHECK(b.entries.at(k).dim == e.dim);
        CHECK(b.entries.at(k).d0 == e.d0);
    }
}

TEST_CASE("tensor module character is the product of both factors") {
    ActionParams p;
    p.N = 2;
    p.table = std::make_shared<const SimpleLieTable>(make_sl(2));
    ActionContext ctx(p);
    // 4 oscillators and 7 f-bar creation families (Lbar plus two sl2 current blocks)
    auto t = graded_character(ctx.module(), 3, 0, Rational(0));
    CHECK(compare_character(t, series_direct(11, 3)).pass);
}

TEST_CASE("CSV and JSON export") {
    HypModule m(1, {}, {});
    auto t = graded_character(m, 2, 0, Rational(1));
    CHECK(t.to_csv() == "depth,d0,s1,dim\n0,1,0,1\n1,0,0,2\n2,-1,0,5\n");
    CHECK(t.to_json()["total"] == 8);
}

TEST_CASE("character suite") {
    CharacterSuiteConfig c;
    c.depth = 6;
    c.lattice_samples = 3;
    CharacterTable table;
    auto r = character_suite(c, &table);
    CHECK(r.pass());
    CHECK(table.at(4, std::vector<int>(12, 1)) == 25650);
}
