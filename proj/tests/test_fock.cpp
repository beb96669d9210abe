#include <doctest.h>

#include <random>

#include "toralg/characters.hpp"
#include "toralg/fock.hpp"

using namespace toralg;

TEST_CASE("oscillator examples") {
    HypModule m(1, {}, {});
    auto vac = m.base({0});
    auto v1 = m.intern({0}, {{1, 1}});  // v_1(-1) e^0
    CHECK(m.oscillator_apply(0, 1, v1) == SparseVec(vac));
    CHECK(m.oscillator_apply(0, 2, vac).is_zero());
    CHECK(m.oscillator_apply(1, 1, v1).is_zero());  // (v|v) = 0
    CHECK(m.oscillator_apply(0, -1, vac) == SparseVec(m.intern({0}, {{0, 1}})));
}

TEST_CASE("zero modes on lattice vectors") {
    const std::vector<Rational> alpha{Rational(1, 3), Rational(1, 5)};
    HypModule m(2, alpha, {1, 0});
    for (const auto& s : lattice_box(2, 2)) {
        auto id = m.base(s);
        for (int p = 0; p < 2; ++p) {
            // v_p(0) -> alpha_p + s_p, u_p(0) -> beta_p
            CHECK(m.oscillator_apply(2 + p, 0, id) == SparseVec(id, alpha[p] + Rational(s[p])));
            Rational b = p == 0 ? 1 : 0;
            CHECK(m.oscillator_apply(p, 0, id) == SparseVec(id, b));
        }
    }
}

TEST_CASE("lattice shift") {
    HypModule m(2, {Rational(1, 3), Rational(1, 5)}, {1, 0});
    auto id = m.intern({0, 1}, {{0, 2}});
    CHECK(m.lattice_shift({0, 0}, id) == SparseVec(id));
    CHECK(m.lattice_shift({1, 0}, m.base({0, 0})) == SparseVec(m.base({1, 0})));
    CHECK(m.lattice_shift({1, -1}, id) == SparseVec(m.intern({1, 0}, {{0, 2}})));
}

TEST_CASE("conformal weights") {
    HypModule m(2, {}, {});
    CHECK(m.conformal_weight(m.intern({0, 0}, {{0, 2}, {3, 1}})) == Rational(3));
    HypModule a(2, {Rational(1, 3), Rational(1, 5)}, {2, -1});
    // (alpha + s).beta
    CHECK(a.conformal_weight(a.base({1, 1})) == Rational(4, 3) * Rational(2) - Rational(6, 5));
    CHECK(a.conformal_weight(a.intern({0, 0}, {{1, 3}})) == Rational(2, 3) - Rational(1, 5) + Rational(3));
}

TEST_CASE("basis enumeration counts") {
    HypModule m12(12, {}, {});
    CHECK(m12.enumerate_basis(1, 0).size() == 25u);
    HypModule m2(2, {}, {});
    CHECK(m2.enumerate_basis(2, 0).size() == 19u);
    CHECK(m2.enumerate_basis(0, 0).size() == 1u);
    CHECK(m2.enumerate_basis(1, 1).size() == 9u * 5);
    for (int d = 0; d <= 6; ++d) {
        CHECK(m2.count_monomials(d) == m2.monomials(d).size());
        CHECK(mpz_class(static_cast<unsigned long>(m2.count_monomials(d))) == series_euler(4, 6).coeffs[d]);
    }
    CHECK(lattice_box(2, 1).front() == std::vector<int>{-1, -1});
    CHECK(lattice_box(3, 1).size() == 27u);
}

TEST_CASE("Heisenberg relations on random vectors") {
    HypModule m(2, {Rational(1, 3), Rational(1, 5)}, {1, 0});
    std::mt19937_64 rng(5);
    auto rnd = [&] {
        std::vector<Rational> c(4);
        for (auto& x : c) x = Rational(static_cast<int>(rng() % 7) - 3);
        return c;
    };
    auto pair = [](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational s = 0;
        for (int p = 0; p < 2; ++p) s += x[p] * y[2 + p] + x[2 + p] * y[p];
        return s;
    };
    auto basis = m.enumerate_basis(2, 1);
    for (int trial = 0; trial < 60; ++trial) {
        auto x = rnd(), y = rnd();
        int n = static_cast<int>(rng() % 7) - 3, k = static_cast<int>(rng() % 7) - 3;
        SparseVec v(basis[rng() % basis.size()]);
        SparseVec lhs = m.oscillator_apply(x, n, m.oscillator_apply(y, k, v));
        lhs.add_scaled(m.oscillator_apply(y, k, m.oscillator_apply(x, n, v)), Rational(-1));
        SparseVec rhs;
        if (n + k == 0) rhs.add_scaled(v, Rational(n) * pair(x, y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("vertex operator of e^{u_1} on e^{2 v_1}") {
    HypModule m(1, {}, {2});
    auto vac = m.base({0});
    auto shifted = m.base({1});
    CHECK(m.exp_moment({1}, 2, vac) == SparseVec(shifted));
    CHECK(m.exp_moment({1}, 3, vac) == SparseVec(m.intern({1}, {{0, 1}})));
    CHECK(m.exp_moment({1}, 1, vac).is_zero());
    // z^4: u(-2)/2 + u(-1)^2/2
    SparseVec want(m.intern({1}, {{0, 2}}), Rational(1, 2));
    want.add_scaled(SparseVec(m.intern({1}, {{0, 1}, {0, 1}})), Rational(1, 2));
    CHECK(m.exp_moment({1}, 4, vac) == want);
}

TEST_CASE("elementary Schur polynomials") {
    HypModule m(2, {}, {});
    const auto& s2 = m.schur({1, 0}, 2);
    CHECK(s2.at({{0, 1}, {0, 1}}) == Rational(1, 2));
    CHECK(s2.at({{0, 2}}) == Rational(1, 2));
    const auto& s1 = m.schur({2, -1}, 1);
    CHECK(s1.at({{0, 1}}) == Rational(2));
    CHECK(s1.at({{1, 1}}) == Rational(-1));
    CHECK(m.schur({0, 0}, 3).empty());
}
