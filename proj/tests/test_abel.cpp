#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "taydom/abel.hpp"
#include "taydom/rng.hpp"

using namespace taydom;

namespace {
AbelEquation riccati() {  // p = 1, q = 0 on [0, 1]: y' = y^2
    return {PolyQ::constant(Rat(1)), PolyQ(), Rat(0), Rat(1)};
}
}  // namespace

TEST_CASE("poincare coefficients: closed form for y' = y^2 is v_k = (-x)^{k-1}") {
    auto exp = poincare_coefficients(riccati(), 12);
    CHECK(exp.defining_identity_ok());
    for (long k = 2; k <= 12; ++k) {
        PolyQ want = PolyQ({Rat(0), Rat(-1)}).pow(static_cast<unsigned long>(k - 1));
        CHECK(exp.v[static_cast<std::size_t>(k)] == want);
    }
}

TEST_CASE("poincare coefficients: degenerate and odd cases") {
    AbelEquation zero{PolyQ(), PolyQ(), Rat(0), Rat(1)};
    auto ez = poincare_coefficients(zero, 8);
    for (long k = 2; k <= 8; ++k) CHECK(ez.v[static_cast<std::size_t>(k)].is_zero());

    // p = 0, q = 1: v_2 = 0, v_3 = -x, v_4 = 0 (dv_4/dx = -3 p v_3 - 2 q v_2 = 0)
    AbelEquation cubic{PolyQ(), PolyQ::constant(Rat(1)), Rat(0), Rat(1)};
    auto ec = poincare_coefficients(cubic, 6);
    CHECK(ec.defining_identity_ok());
    CHECK(ec.v[2].is_zero());
    CHECK(ec.v[3] == PolyQ({Rat(0), Rat(-1)}));
    CHECK(ec.v[4].is_zero());

    // a != 0 normalizes by translation and records the shift
    AbelEquation shifted{PolyQ::constant(Rat(1)), PolyQ(), Rat(1, 2), Rat(3, 2)};
    auto es = poincare_coefficients(shifted, 6);
    CHECK(es.shift == Rat(1, 2));
    CHECK(es.length == Rat(1));
    CHECK(es.defining_identity_ok());
}

TEST_CASE("return map eval: geometric resummation and guards") {
    auto exp = poincare_coefficients(riccati(), 25);
    // G_1(y) = y/(1+y) at y = 1/10: 1/11
    Rat g = return_map_eval(exp, Rat(1), Rat(1, 10));
    CHECK((g - Rat(1, 11)).abs() < Rat(10).pow(-24));  // truncation tail ~ 1e-26

    CHECK(return_map_eval(exp, Rat(1), Rat(0)).is_zero());

    auto ident = poincare_coefficients(AbelEquation{PolyQ(), PolyQ(), Rat(0), Rat(1)}, 8);
    CHECK(return_map_eval(ident, Rat(1), Rat(1, 7)) == Rat(1, 7));

    CHECK_THROWS(return_map_eval(exp, Rat(1), Rat(2)));  // tail heuristic trips
}

TEST_CASE("ode oracle: exact solution of y' = y^2 and inverse consistency") {
    auto exp = poincare_coefficients(riccati(), 5);
    // forward transport 0 -> 1 from y = 1/10: y/(1 - y) = 1/9
    BF fwd = ode_transport(exp.p, exp.q, Rat(0), Rat(1), BF(Rat(1, 10), MPFR_RNDN, 512));
    BF want = div(BF(1), BF(9), MPFR_RNDN, 512);
    CHECK(abs(fwd - want).to_double() < 1e-80);

    // y = 0 is invariant
    BF z = ode_transport(exp.p, exp.q, Rat(0), Rat(1), BF(0));
    CHECK(z.is_zero());

    // backward from 1/9 returns to 1/10
    BF back = ode_transport(exp.p, exp.q, Rat(1), Rat(0), want);
    CHECK(abs(back - BF(Rat(1, 10), MPFR_RNDN, 512)).to_double() < 1e-80);
}

TEST_CASE("oracle group property: composing [0,c] and [c,L] equals [0,L]") {
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        PolyQ p({rng.rational(2, 2), rng.rational(2, 2)});
        PolyQ q({rng.rational(2, 2)});
        BF y0(Rat(1, 50), MPFR_RNDN, 512);
        BF direct = ode_transport(p, q, Rat(0), Rat(1), y0);
        BF mid = ode_transport(p, q, Rat(0), Rat(1, 3), y0);
        BF composed = ode_transport(p, q, Rat(1, 3), Rat(1), mid);
        CHECK(abs(direct - composed).to_double() < 1e-75);
    }
}

TEST_CASE("truncated map agrees with the oracle to order K+1") {
    auto exp = poincare_coefficients(riccati(), 20);
    // mismatch |G_trunc(y) - oracle(y)| ~ C y^{21}: the log-log slope across
    // y = 1e-2, 1e-3, 1e-4 must be >= K + 1 - 0.5
    std::vector<double> lx, ly;
    for (int e = 2; e <= 4; ++e) {
        Rat y = Rat(1, 1).pow(0) / Rat(10).pow(e);
        Rat trunc = return_map_eval(exp, Rat(1), y);
        BF oracle = ode_oracle(exp, Rat(1), BF(y, MPFR_RNDN, 512));
        BF mism = abs(BF(trunc, MPFR_RNDN, 512) - oracle);
        REQUIRE(!mism.is_zero());
        lx.push_back(-static_cast<double>(e) * std::log(10.0));
        ly.push_back(log(mism, MPFR_RNDN).to_double());
    }
    double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
    CHECK(slope >= 20.5);
    CHECK(slope <= 22.5);
}

TEST_CASE("moment-like sequences") {
    AbelEquation e1{PolyQ::constant(Rat(1)), PolyQ::constant(Rat(1)), Rat(0), Rat(1)};
    auto m1 = moment_like(e1, 10);
    for (long k = 0; k <= 10; ++k) CHECK(m1[k] == Rat(1, k + 1));

    AbelEquation e0{PolyQ::constant(Rat(1)), PolyQ(), Rat(0), Rat(1)};
    auto m0 = moment_like(e0, 6);
    CHECK(m0.all_zero());

    AbelEquation e2{PolyQ({Rat(0), Rat(2)}), PolyQ::constant(Rat(1)), Rat(0), Rat(1)};
    auto m2 = moment_like(e2, 10);
    for (long k = 0; k <= 10; ++k) CHECK(m2[k] == Rat(1, 2 * k + 1));
}

TEST_CASE("fixed point count") {
    auto ident = poincare_coefficients(AbelEquation{PolyQ(), PolyQ(), Rat(0), Rat(1)}, 10);
    auto fc = fixed_point_count(ident, Rat(1), Rat(1, 20));
    CHECK(fc.center);

    auto exp = poincare_coefficients(riccati(), 20);
    auto fc2 = fixed_point_count(exp, Rat(1), Rat(1, 20));
    CHECK(!fc2.center);
    CHECK(fc2.count.count == 2);  // y = 0 with multiplicity 2 (leading term -y^2)
    CHECK(fc2.count.reliable);

    // generic random (p, q): the count equals the index of the first nonzero v_k
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        PolyQ p({rng.rational(2, 2), rng.rational(2, 2)});
        PolyQ q({rng.rational(2, 2), rng.rational(2, 2)});
        auto ex = poincare_coefficients(AbelEquation{p, q, Rat(0), Rat(1)}, 16);
        long first = 0;
        for (long k = 2; k <= 16; ++k)
            if (!ex.v[static_cast<std::size_t>(k)].eval(Rat(1)).is_zero()) {
                first = k;
                break;
            }
        if (first == 0) continue;
        auto f = fixed_point_count(ex, Rat(1), Rat(1, 100));
        CHECK(f.count.count == first);
    }
}
