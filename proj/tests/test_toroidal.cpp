#include <doctest.h>

#include <random>

#include "toralg/suites.hpp"
#include "toralg/toroidal.hpp"

using namespace toralg;

namespace {

using Kd = SpanningElement::Kind;
MultiIndex M(std::vector<int> v) { return MultiIndex(std::move(v)); }
auto sl2() { return std::make_shared<const SimpleLieTable>(make_sl(2)); }
constexpr int e = 0, f = 1, h = 2;  // make_sl(2) basis E12, E21, H1

TorCombination der_only(const TorCombination& v) {
    TorCombination d;
    for (const auto& [sym, c] : v)
        if (sym.kind == TorSymbol::Kind::Der) d.add(sym, c);
    return d;
}

}  // namespace

TEST_CASE("bracket: derivation on a current") {
    AlgebraParams p(2, 0, sl2());
    CHECK(bracket(der(M({1, 0, 2}), 1), cur(M({0, 3, 1}), e), p) == cur(M({1, 3, 3}), e, 3));
}

TEST_CASE("bracket: currents pick up the Kassel term") {
    AlgebraParams p(1, 0, sl2());
    auto got = bracket(cur(M({1, 0}), e), cur(M({-1, 0}), f), p);
    CHECK(got == cur(M({0, 0}), h) + cen(M({0, 0}), 0));
}

TEST_CASE("bracket: d_0 with d_1 including the mu cocycle") {
    for (const Rational& mu : {Rational(0), Rational(1), Rational(1, 2), Rational(-7, 3)}) {
        AlgebraParams p(1, mu, sl2());
        auto got = bracket(der(M({0, 1}), 0), der(M({1, -1}), 1), p);
        // unreduced: d_1 - d_0 + mu k_0 - mu k_1; at (1,0) the relation is k_0 = 0
        TorCombination raw = der(M({1, 0}), 1) - der(M({1, 0}), 0) + cen(M({1, 0}), 0, mu) - cen(M({1, 0}), 1, mu);
        CHECK(got == reduce_kassel_center(raw));
        CHECK(got == der(M({1, 0}), 1) - der(M({1, 0}), 0) - cen(M({1, 0}), 1, mu));
    }
}

TEST_CASE("bracket: derivation on a center") {
    AlgebraParams p(2, 0, sl2());
    CHECK(bracket(der(M({0, 1, 0}), 1), cen(M({2, 0, 1}), 1), p) == cen(M({2, 1, 1}), 1));
}

TEST_CASE("reduce_kassel_center examples") {
    CHECK(reduce_kassel_center(cen(M({1, 0}), 0, 2)).is_zero());
    CHECK(reduce_kassel_center(cen(M({0, 0}), 1)) == cen(M({0, 0}), 1));
    CHECK(reduce_kassel_center(cen(M({1, 1}), 1)) == cen(M({1, 1}), 0, -1));
    CHECK(reduce_kassel_center(cen(M({1, 1}), 0)) == cen(M({1, 1}), 0));
    // idempotent and kills every d(t^m)
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        std::vector<int> m(3);
        for (auto& x : m) x = static_cast<int>(rng() % 7) - 3;
        TorCombination dm;
        for (int q = 0; q < 3; ++q) dm.add(TorSymbol{TorSymbol::Kind::Cen, M(m), q}, Rational(m[q]));
        CHECK(reduce_kassel_center(dm).is_zero());
        TorCombination x = cen(M(m), static_cast<int>(rng() % 3), Rational(static_cast<int>(rng() % 5) + 1));
        auto once = reduce_kassel_center(x);
        CHECK(reduce_kassel_center(once) == once);
    }
}

TEST_CASE("invariant form examples") {
    auto t = make_sl(2);
    TorCombination x = der(M({1, 2}), 1) - der(M({1, 2}), 0, 2);
    CHECK(invariant_form(x, cen(M({-1, -2}), 1), t) == Rational(1));
    CHECK(invariant_form(x, cen(M({-1, -2}), 0), t) == Rational(-2));
    // same values after reducing the center argument
    CHECK(invariant_form(x, reduce_kassel_center(cen(M({-1, -2}), 1)), t) == Rational(1));
    CHECK(invariant_form(cur(M({1, 0}), e), cur(M({-1, 0}), f), t) == Rational(1));
    CHECK(invariant_form(cur(M({1, 0}), e), cur(M({-1, 1}), f), t) == Rational(0));
    // sum a_p t^r d_p against d(t^-r) vanishes when a.r = 0
    TorCombination y = der(M({2, -1}), 0) + der(M({2, -1}), 1, 2);
    TorCombination dm = cen(M({-2, 1}), 0, -2) + cen(M({-2, 1}), 1, 1);
    CHECK(invariant_form(y, dm, t) == Rational(0));
    CHECK_THROWS_AS(invariant_form(der(M({1, 1}), 1), cen(M({-1, -1}), 1), t), ToroidalError);
}

TEST_CASE("divergence examples") {
    std::vector<int> r{2, 3};
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            TorCombination x = der(M({1, 2, 3}), a, r[b - 1]) - der(M({1, 2, 3}), b, r[a - 1]);
            CHECK(divergence(x).is_zero());
        }
    CHECK(is_divergence_free(der(M({4, 0, 0}), 2)));
    auto dv = divergence(der(M({1, 1}), 1));
    CHECK(dv.size() == 1);
    CHECK(dv.coeff(M({1, 1})) == Rational(1));
    CHECK_THROWS_AS(divergence(cen(M({1, 1}), 1)), ToroidalError);
}

TEST_CASE("d-hat example and degenerate spanning labels") {
    AlgebraParams p(2, 1, sl2());
    auto got = spanning_value({Kd::Dhat, 1, {1, 0}, 1, 0}, p, 1);
    // mu (j + 1/2) + (N - 1 + mu c) / (2 c N) = 3/2 + 1/2
    TorCombination want = -der(M({1, 1, 0}), 0) + der(M({1, 1, 0}), 1) + cen(M({1, 1, 0}), 0, 2);
    CHECK(got == reduce_kassel_center(want));
    CHECK(is_divergence_free(der_only(got)));
    CHECK(spanning_value({Kd::Dhat, 0, {0, 0}, 1, 0}, p, 1).is_zero());
    CHECK(spanning_value({Kd::Dab, 1, {1, 2}, 2, 2}, p, 1).is_zero());
    CHECK_THROWS(spanning_value({Kd::Dhat, 1, {1, 0}, 1, 0}, p, 0));
    CHECK_THROWS(gdiv_spanning(p, 0, {1, 1}));
}

TEST_CASE("spanning set: divergence free, nonzero, decomposes to itself") {
    for (const Rational& mu : {Rational(0), Rational(1, 2)}) {
        AlgebraParams p(2, mu, sl2());
        auto span = gdiv_spanning(p, 1, {2, 1});
        CHECK(span.size() > 100);
        for (const auto& s : span) {
            auto v = spanning_value(s, p, 1);
            REQUIRE_FALSE(v.is_zero());
            CHECK(is_divergence_free(der_only(v)));
            TorElement back;
            for (const auto& [lbl, c] : decompose_gdiv(v, p, 1)) back.add(spanning_value(lbl, p, 1), c);
            CHECK(back == v);
        }
    }
    AlgebraParams p(2, 0, sl2());
    CHECK_THROWS_AS(decompose_gdiv(der(M({1, 1, 0}), 1), p, 1), ToroidalError);
}

TEST_CASE("centrality of degree-zero k_p") {
    std::mt19937_64 rng(11);
    AlgebraParams p(2, Rational(1, 2), sl2());
    for (int i = 0; i < 200; ++i) {
        TorSymbol s = random_symbol(p, 3, 2, rng);
        TorCombination x(s);
        for (int q = 0; q <= 2; ++q) CHECK(bracket(x, cen(M({0, 0, 0}), q), p).is_zero());
    }
}

TEST_CASE("axiom suites on a small sample, N = 1 and sl3") {
    for (int n : {1, 3}) {
        ToroidalSuiteConfig c;
        c.N = n;
        c.mu = Rational(1, 3);
        c.table = std::make_shared<const SimpleLieTable>(make_sl(n == 1 ? 2 : 3));
        c.samples = 60;
        c.j_bound = 2;
        c.r_bound = 1;
        auto a = toroidal_suite(c);
        auto b = form_suite(c);
        CHECK(a.pass());
        CHECK(b.pass());
    }
}

TEST_CASE("JSON form of elements is stable") {
    auto j = to_json(cur(M({1, 0}), e, Rational(3, 2)), nullptr);
    CHECK(j.dump() == to_json(cur(M({1, 0}), e, Rational(3, 2)), nullptr).dump());
    CHECK_FALSE(to_string(cen(M({0, 1}), 1)).empty());
}
