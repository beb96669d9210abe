#include <doctest.h>

#include "toralg/rep.hpp"
#include "toralg/suites.hpp"

using namespace toralg;

namespace {

using Kd = SpanningElement::Kind;

ActionParams generic(const Rational& mu, const Rational& c = 1) {
    ActionParams p;
    p.N = 2;
    p.mu = mu;
    p.c = c;
    p.table = std::make_shared<const SimpleLieTable>(make_sl(2));
    p.alpha = {Rational(1, 3), Rational(1, 5)};
    p.beta = {1, 0};
    p.hbar = Rational(2, 7);
    return p;
}

SpanningElement center(int j, std::vector<int> r, int a) { return {Kd::Center, j, std::move(r), a, 0}; }

}  // namespace

TEST_CASE("parameter validation") {
    auto p = generic(1, 0);
    CHECK_THROWS_WITH_AS(p.validate(), "c must be nonzero", ActionError);
    CHECK_THROWS_AS(ActionContext{p}, ActionError);
    auto q = ActionParams::rank_zero_point(2);
    CHECK_THROWS_AS(q.validate(), ActionError);
    q.unchecked = true;
    CHECK_NOTHROW(q.validate());
    CHECK_NOTHROW(ActionParams::rank_zero_point().validate());
    auto r = generic(0);
    r.alpha = {Rational(1)};
    CHECK_THROWS_AS(r.validate(), ActionError);
}

TEST_CASE("degree-zero k_0 acts as c, other k_0 modes vanish") {
    const Rational c(3, 2);
    ActionContext ctx(generic(1, c));
    WindowIndex win(ctx.module(), 2, 1);
    for (auto id : win.all()) {
        CHECK(ctx.apply(center(0, {0, 0}, 0), SparseVec(id)) == SparseVec(id, c));
        CHECK(ctx.apply(center(1, {0, 0}, 0), SparseVec(id)).is_zero());
        CHECK(ctx.apply(center(-2, {0, 0}, 0), SparseVec(id)).is_zero());
    }
}

TEST_CASE("zero modes on base vectors") {
    const Rational c(5, 4);
    auto p = generic(Rational(1, 2), c);
    ActionContext ctx(p);
    WindowIndex win(ctx.module(), 0, 2);
    for (auto id : win.all()) {
        const auto& s = ctx.module().lattice(id);
        for (int a = 1; a <= 2; ++a) {
            // t_0^0 d_a -> v_a(0): alpha_a + s_a
            CHECK(ctx.apply({Kd::Dp, 0, {0, 0}, a, 0}, SparseVec(id)) == SparseVec(id, p.alpha[a - 1] + Rational(s[a - 1])));
            // t^0 k_a -> c u_a(0): c beta_a
            CHECK(ctx.apply(center(0, {0, 0}, a), SparseVec(id)) == SparseVec(id, c * Rational(p.beta[a - 1])));
        }
    }
}

TEST_CASE("d_0 eigenvalues") {
    auto p = ActionParams::rank_zero_point();
    p.d0_shift = 0;
    ActionContext plain(p);
    const SpanningElement d0{Kd::D0, 0, std::vector<int>(12, 0), 0, 0};
    auto vac = plain.module().vacuum();
    // -omega_(1) alone kills the vacuum; the rank-zero formula carries its own Id
    CHECK(plain.apply(plain.general_operator(d0), SparseVec(vac)).is_zero());
    CHECK(plain.apply(plain.rank_zero_operator(d0), SparseVec(vac)) == SparseVec(vac));
    ActionContext shifted(ActionParams::rank_zero_point());
    CHECK(shifted.apply(d0, SparseVec(shifted.module().vacuum())) == SparseVec(shifted.module().vacuum()));
    // general point: d_0 = -(weight) - hbar
    ActionContext g(generic(0));
    WindowIndex win(g.module(), 2, 1);
    for (auto id : win.all())
        CHECK(g.apply({Kd::D0, 0, {0, 0}, 0, 0}, SparseVec(id)) == SparseVec(id, -g.module().weight(id) - Rational(2, 7)));
}

TEST_CASE("window sizes") {
    ActionContext t(ActionParams::rank_zero_point());
    CHECK(WindowIndex(t.module(), 2, 0).size() == 349u);
    CHECK(WindowIndex(t.module(), 0, 0).size() == 1u);
    ActionContext g(generic(0));
    // hyp factor 1 + 4; f-bar factor at depth 1: Lbar(-1) plus 3 + 3 currents
    CHECK(WindowIndex(g.module(), 1, 0).size() == 5u + 7u);
    CHECK(WindowIndex(g.module(), 0, 0).size() == 1u);
}

TEST_CASE("commutator spot checks") {
    ActionContext ctx(generic(1));
    WindowIndex win(ctx.module(), 3, 1);
    const SpanningElement x{Kd::Dab, 1, {1, -1}, 1, 2};
    auto same = verify_commutator(ctx, x, x, win, 0, 0);
    CHECK(same.residual_zero);
    CHECK(same.checked > 0);
    auto k = verify_commutator(ctx, center(1, {0, 0}, 0), {Kd::Dhat, -1, {1, 0}, 1, 0}, win, 0, 0);
    CHECK(k.residual_zero);
    // t_0 d_1 against t_0^{-1} d_1
    auto dd = verify_commutator(ctx, {Kd::Dp, 1, {0, 0}, 1, 0}, {Kd::Dp, -1, {0, 0}, 1, 0}, win, 0, 0);
    CHECK(dd.residual_zero);
    CHECK(dd.checked > 100);
    auto cur = verify_commutator(ctx, {Kd::Current, 1, {0, 1}, 0, 0}, {Kd::Current, -1, {0, -1}, 1, 0}, win, 0, 0);
    CHECK(cur.residual_zero);
}

TEST_CASE("small action suites") {
    for (const Rational& mu : {Rational(0), Rational(1)}) {
        ActionSuiteConfig c;
        c.params = generic(mu);
        c.max_depth = 2;
        c.lattice_bound = 1;
        c.j_bound = 1;
        c.r_bound = 1;
        c.pair_samples = 400;
        c.vectors_per_pair = 3;
        c.exhaustive_pairs = 5;
        CHECK(action_suite(c).pass());
    }
}

TEST_CASE("a wrong operator is caught") {
    // d_0 without the hbar shift breaks [d_0, x] = j x only through grading; drop
    // the omega summand instead, which must break commutators involving d_0
    auto p = ActionParams::rank_zero_point();
    p.drop_omega_summand = true;
    ActionContext ctx(p);
    WindowIndex win(ctx.module(), 2, 0);
    auto r = verify_commutator(ctx, {Kd::D0, 0, std::vector<int>(12, 0), 0, 0}, {Kd::Dp, 1, std::vector<int>(12, 0), 1, 0}, win, 0,
                               0);
    CHECK_FALSE(r.residual_zero);
    CHECK(r.witness.has_value());
}

TEST_CASE("Virasoro rank") {
    std::vector<std::vector<int>> origin12{std::vector<int>(12, 0)};
    auto a = virasoro_suite(ActionParams::rank_zero_point(), 1, origin12);
    CHECK(a.pass());
    CHECK(a.checks[0].detail["expected"] == "12");
    auto b = virasoro_suite(generic(0), 2, {{0, 0}, {1, -1}});
    CHECK(b.pass());
    CHECK(b.checks[0].detail["expected"] == "3");
    auto bad = ActionParams::rank_zero_point();
    bad.drop_omega_summand = true;
    CHECK_FALSE(virasoro_suite(bad, 1, origin12).pass());
    // rank-zero formulas away from N = 12: the trivial f-bar factor misses cbar
    auto off = ActionParams::rank_zero_point(2);
    off.unchecked = true;
    CHECK_FALSE(virasoro_suite(off, 2, {{0, 0}}).pass());
}

TEST_CASE("singular scan: planted fixture, integral and generic levels") {
    // non-integral levels: nothing above the top
    auto p = generic(Rational(1, 2), Rational(1, 3));
    auto r = singular_suite(p, 2, {{0, 0}, {1, -1}});
    CHECK(r.pass());
    // integral levels (c = mu = 1): the trivial-top Verma factor has null vectors at degree 1
    ActionContext ctx(generic(1));
    auto scan = singular_scan(ctx, 1, {{0, 0}});
    CHECK_FALSE(scan.candidates.empty());
    for (const auto& cand : scan.candidates) CHECK(cand.depth >= 1);
}

TEST_CASE("rank-zero operators agree with the general ones") {
    ActionContext ctx(ActionParams::rank_zero_point());
    WindowIndex win(ctx.module(), 2, 0);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i) {
        auto e = random_spanning(ctx.algebra(), 1, 2, 1, rng, true);
        auto gen = ctx.general_operator(e);
        auto rz = ctx.rank_zero_operator(e);
        for (auto id : win.all()) CHECK(ctx.apply(gen, SparseVec(id)) == ctx.apply(rz, SparseVec(id)));
    }
}

TEST_CASE("column nullspace") {
    using Col = std::vector<std::pair<std::uint64_t, Rational>>;
    std::vector<Col> cols{{{0, 1}, {1, 2}}, {{0, 2}, {1, 4}}, {{2, 1}}};
    auto ns = column_nullspace(cols);
    REQUIRE(ns.size() == 1u);
    CHECK(ns[0][0] * Rational(1) + ns[0][1] * Rational(2) == Rational(0));
    CHECK(ns[0][2] == Rational(0));
    CHECK(column_nullspace({{{0, 1}}, {{1, 1}}}).empty());
}
