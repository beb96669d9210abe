#include <doctest.h>

#include "toralg/modes.hpp"
#include "toralg/suites.hpp"

using namespace toralg;

namespace {

auto sl2() { return std::make_shared<const SimpleLieTable>(make_sl(2)); }
ModeComb mc(const ModeSym& s, Rational c = 1) { return ModeComb(s, c); }

ModeModule hvir_verma(const Rational& h, const Rational& c_hei) {
    ModuleSpec s;
    s.alg = ModeAlgebra::hvir();
    s.central[kCVir] = Rational(26);
    s.central[kCHei] = c_hei;
    s.central[kCVH] = Rational(1, 3);
    s.h = h;
    s.top = TopSpace::make({}, {});
    return ModeModule(std::move(s));
}

ModeModule affine_sl2(const Rational& level, TopSpace::Rep rep) {
    ModuleSpec s;
    s.alg = ModeAlgebra::affine({sl2()});
    s.central[kLevel0] = level;
    s.top = TopSpace::make({sl2()}, {rep});
    return ModeModule(std::move(s));
}

}  // namespace

TEST_CASE("HVir bracket examples") {
    auto hv = ModeAlgebra::hvir();
    CHECK(mode_bracket(L(2), I(-2), hv) == mc(I(0), 2) + mc(central(kCVH), -6));
    CHECK(mode_bracket(I(3), I(-3), hv) == mc(central(kCHei), 3));
    CHECK(mode_bracket(L(1), L(-1), hv) == mc(L(0), 2));
    // (n^3 - n)/12 at n = 3
    CHECK(mode_bracket(L(3), L(-3), hv) == mc(L(0), 6) + mc(central(kCVir), 2));
    CHECK(mode_bracket(I(2), I(3), hv).is_zero());
    CHECK(mode_bracket(L(-1), I(4), hv) == mc(I(3), -4));
    CHECK(hvir_bracket(mc(L(1)), mc(L(1)), hv).is_zero());
}

TEST_CASE("rho_sigma examples") {
    const Rational s(1, 12);
    CHECK(rho_sigma(mc(Lbar(0)), s) == mc(L(0)) + mc(central(kCVH), s) + mc(central(kCHei), -s * s / Rational(2)));
    for (int n = -3; n <= 3; ++n) CHECK(rho_sigma(mc(Lbar(n)), 0) == mc(L(n)));
    auto hv = ModeAlgebra::hvir();
    auto fb = ModeAlgebra::fbar({});
    for (const Rational& sig : {Rational(1, 12), Rational(1, 2), Rational(-2, 3)})
        for (int n = -4; n <= 4; ++n)
            for (int m = -4; m <= 4; ++m) {
                auto lhs = hvir_bracket(rho_sigma(mc(Lbar(n)), sig), rho_sigma(mc(Lbar(m)), sig), hv);
                auto rhs = rho_sigma(hvir_bracket(mc(Lbar(n)), mc(Lbar(m)), fb), sig);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("embedding suite, including the current block") {
    EmbeddingSuiteConfig c;
    c.mode_bound = 4;
    CHECK(embedding_suite(c).pass());
}

TEST_CASE("gamma_0 values") {
    CHECK(central_character_gamma0(1, 1, 12) == CentralCharacter{1, 0, 0, 6, -12});
    CHECK(central_character_gamma0(1, 0, 2) == CentralCharacter{1, 1, 2, 1, -4});
    CHECK(central_character_gamma0(0, Rational(5, 7), 3) == CentralCharacter{0, 1, 3, Rational(3, 2), -6});
}

TEST_CASE("barred central charge") {
    auto g12 = central_character_gamma0(1, 1, 12);
    CHECK(barred_charges(g12, Rational(1, 12)).cbar_vir == Rational(0));
    auto g2 = central_character_gamma0(1, 0, 2);
    CHECK(barred_charges(g2, Rational(1, 2)).cbar_vir == Rational(2));
    CHECK(barred_charges(g2, 0).cbar_vir == g2.c_vir);
    // cbar = c_vir + 24 sigma c_vh - 12 sigma^2 c_hei, independently
    for (const Rational& sig : {Rational(1, 3), Rational(-2, 5)})
        CHECK(barred_charges(g2, sig).cbar_vir == g2.c_vir + Rational(24) * sig * g2.c_vh - Rational(12) * sig * sig * g2.c_hei);
    CHECK(cbar_closed_form(1, 1, 12) == Rational(0));
    CHECK(cbar_closed_form(0, 1, 2) == Rational(2));
}

TEST_CASE("coset charges") {
    auto t = make_sl(2);
    auto g = central_character_gamma0(1, 0, 2);
    auto triv = sugawara_charges(g.c_g, g.c_sl, Rational(2), t, {0}, 2, {0}, 0);
    CHECK(triv.h_prime == Rational(0));
    // c' = cbar - k dim/(k + h^v) for both affine blocks: 2 - 1 - 1
    CHECK(triv.c_prime == Rational(0));
    CHECK(cprime_closed_form(0, 1, 2, t) == Rational(0));
    auto adj = sugawara_charges(g.c_g, g.c_sl, Rational(2), t, {2}, 2, {0}, 0);
    CHECK(adj.omega_v == Rational(4));
    CHECK(adj.h_prime == Rational(-2, 3));
    CHECK_THROWS_AS(sugawara_charges(Rational(-2), g.c_sl, 0, t, {0}, 2, {0}, 0), CriticalLevelError);
}

TEST_CASE("charge suite") { CHECK(charge_suite({}).pass()); }

TEST_CASE("Verma module relations") {
    const Rational h(5, 3), chei(3, 2);
    auto m = hvir_verma(h, chei);
    auto top = m.top_id();
    CHECK(m.apply(L(1), top).is_zero());
    CHECK(m.apply(I(2), top).is_zero());
    auto l1 = m.intern({L(-1)}, 0);
    CHECK(m.apply(L(0), SparseVec(l1)) == SparseVec(l1, h + Rational(1)));
    auto i1 = m.intern({I(-1)}, 0);
    CHECK(m.apply(I(1), SparseVec(i1)) == SparseVec(top, chei));
    // L(1) L(-1) hw = 2h hw
    CHECK(m.apply(L(1), SparseVec(l1)) == SparseVec(top, Rational(2) * h));
    CHECK(m.basis_at(2).size() == 5u);  // L(-2), I(-2), L(-1)^2, L(-1)I(-1), I(-1)^2
}

TEST_CASE("PBW dimensions of an sl2 level-1 Verma module") {
    auto m = affine_sl2(1, TopSpace::Rep::Trivial);
    // 3 colors of parts: 1, 3, 9, 22
    auto d = pbw_dimensions(m, 3);
    CHECK(d == std::vector<long long>{1, 3, 9, 22});
}

TEST_CASE("Sugawara operators on a level-1 sl2 Verma module") {
    auto m = affine_sl2(1, TopSpace::Rep::Adjoint);
    for (int t = 0; t < 3; ++t) {
        SparseVec hw(m.top_id(t));
        CHECK(sugawara_apply(m, 0, 0, hw) == SparseVec(m.top_id(t), Rational(2, 3)));
        CHECK(sugawara_apply(m, 0, 1, hw).is_zero());
        SparseVec ev = m.apply(X(0, 0, -1), hw);
        SparseVec comm = sugawara_apply(m, 0, 0, ev);
        comm.add_scaled(m.apply(X(0, 0, -1), sugawara_apply(m, 0, 0, hw)), Rational(-1));
        CHECK(comm == ev);
    }
    SugawaraSuiteConfig c;
    c.depth = 2;
    c.mode_bound = 1;
    CHECK(sugawara_suite(c).pass());
}

TEST_CASE("top spaces carry the right Casimir") {
    auto top = TopSpace::make({sl2()}, {TopSpace::Rep::Adjoint});
    CHECK(top.dim == 3);
    auto t = make_sl(2);
    Matrix inv = invert(t.form);
    Matrix cas(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Matrix p = multiply(top.rep[0][i], top.rep[0][j]);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) cas[a][b] += inv[i][j] * p[a][b];
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(cas[a][b] == Rational(a == b ? 4 : 0));
}
