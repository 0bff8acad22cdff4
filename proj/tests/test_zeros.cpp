#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "taydom/rng.hpp"
#include "taydom/zeros.hpp"

using namespace taydom;

TEST_CASE("count_zeros on small polynomials") {
    // 1 + 2z has its zero at -1/2: inside r=0.6
    auto zc = count_zeros({Rat(1), Rat(2)}, Rat(3, 5));
    CHECK(zc.count == 1);
    CHECK(zc.reliable);
    CHECK(zc.residual < 0.05);

    // 1 + z^2 has zeros at +-i: none inside r=0.5
    auto z2 = count_zeros({Rat(1), Rat(0), Rat(1)}, Rat(1, 2));
    CHECK(z2.count == 0);

    // constant: no zeros, no quadrature needed
    auto zc0 = count_zeros({Rat(5)}, Rat(1));
    CHECK(zc0.count == 0);

    CHECK_THROWS(count_zeros({Rat(0), Rat(0)}, Rat(1)));
    // zero exactly on the contour
    CHECK_THROWS_AS(count_zeros({Rat(-1), Rat(1)}, Rat(1)), NearContourZero);
}

TEST_CASE("count_zeros on the truncated Fibonacci generating function") {
    // z/(1 - z - z^2) truncated at order 50; the only zero in |z| < phi^{-1}
    // is the one at the origin.
    RecurrenceSpec fib = RecurrenceSpec::constant({Rat(1), Rat(1)});
    auto seq = generate(fib, {Rat(0), Rat(1)}, 50);
    auto zc = count_zeros(seq.values, Rat(3, 10));
    CHECK(zc.count == 1);
    CHECK(zc.reliable);
}

TEST_CASE("count_zeros matches the constructed root count") {
    Rng rng(505);
    for (int trial = 0; trial < 15; ++trial) {
        long deg = rng.integer(1, 6);
        PolyQ p = PolyQ::constant(Rat(1));
        long inside = 0;
        Rat r(rng.integer(2, 5), 2);
        for (long i = 0; i < deg; ++i) {
            Rat root = rng.rational_nonzero(40, 7);
            // keep roots clearly off the contour
            Rat gap = (root.abs() - r).abs();
            if (gap < Rat(1, 10)) {
                root += Rat(1, 2);
                if ((root.abs() - r).abs() < Rat(1, 10)) root += Rat(1, 2);
            }
            if (root.abs() < r) ++inside;
            p = p * PolyQ({-root, Rat(1)});
        }
        auto zc = count_zeros(p.coeffs(), r);
        CHECK(zc.count == inside);
        CHECK(zc.reliable);
    }
}

TEST_CASE("zero_bound certifies the constant-series cases") {
    // f = 1 with cert (0, 1, C=1): T(r*) = C x/(1-x) > 0 but min|P_0| = 1
    DominationCertificate cert;
    cert.N = 0;
    cert.R = Rat(1);
    cert.s_rule = SRule::constant_rule(Rat(1));
    auto zb = zero_bound(cert, {Rat(1)}, Rat(1, 2));
    // T(r*) at small r* is below 1 only for x/(1-x) < 1, i.e. x < 1/2: the
    // grid must find such r* between 0.5 and 1? x = r*/R in (1/2, 1) gives
    // T >= 1... so certification must come from r* close to R' where T < 1.
    // r* in (0.5, 1): x in (0.5, 1): T = x/(1-x) > 1 = min|P|. Not certifiable
    // at R' = 1/2 with C = 1 -- so expect "not certified" here...
    // With R' = 0.1 instead, r* near 0.12 gives T ~ 0.14 < 1: certified.
    auto zb2 = zero_bound(cert, {Rat(1)}, Rat(1, 10));
    CHECK(zb2.certified);
    CHECK(zb2.N == 0);
    (void)zb;

    // geometric series against its Turan certificate at R'/R = 0.01
    RecurrenceSpec geo = RecurrenceSpec::constant({Rat(1)});
    auto cert_t = cert_turan(geo);
    auto seq = generate(geo, {Rat(1)}, 60);
    Rat Rp = Rat(1, 100);  // R = 1, so R'/R = 0.01
    auto g = zero_bound(cert_t, seq.values, Rp);
    CHECK(g.certified);

    auto far = zero_bound(cert_t, seq.values, Rat(9, 10));
    CHECK(!far.certified);  // consistent with M -> infinity as R'/R -> 1
}

TEST_CASE("zero_bound certification is monotone in R'") {
    RecurrenceSpec geo = RecurrenceSpec::constant({Rat(1)});
    auto cert_t = cert_turan(geo);
    auto seq = generate(geo, {Rat(1)}, 60);
    bool prev_certified = false;
    // scan R' from large to small: once certified, smaller R' stays certified
    for (long num = 40; num >= 1; num -= 3) {
        auto zb = zero_bound(cert_t, seq.values, Rat(num, 100));
        if (prev_certified) CHECK(zb.certified);
        prev_certified = prev_certified || zb.certified;
    }
    CHECK(prev_certified);
}

TEST_CASE("zero_bound cross-check: certified N bounds the counted zeros") {
    Rng rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        int d = static_cast<int>(rng.integer(1, 3));
        RecurrenceSpec s;
        s.d = d;
        bool nz = false;
        for (int j = 0; j < d; ++j) {
            s.constant_part.push_back(rng.rational(3, 2));
            nz = nz || !s.constant_part.back().is_zero();
        }
        if (!nz) continue;
        std::vector<Rat> init;
        bool init_nz = false;
        for (int j = 0; j < d; ++j) {
            init.push_back(rng.rational(3, 2));
            init_nz = init_nz || !init.back().is_zero();
        }
        if (!init_nz) init[0] = Rat(1);
        auto seq = generate(s, init, 80);
        auto cert = cert_turan(s);
        Rat Rp = rat_from_bf(mul(param_bf(cert.R, MPFR_RNDD), BF(0.02), MPFR_RNDD));
        if (Rp.sign() <= 0) continue;
        auto zb = zero_bound(cert, seq.values, Rp);
        if (!zb.certified) continue;
        ZeroCount zc;
        try {
            zc = count_zeros(seq.values, Rp);
        } catch (const NearContourZero&) {
            continue;
        }
        if (!zc.reliable) continue;
        CHECK(zc.count <= zb.N);
    }
}

TEST_CASE("valency growth probe") {
    // f = z: polynomial, trivially consistent
    CoefficientSequence z;
    z.values.assign(40, Rat(0));
    z.values[1] = Rat(1);
    auto probe = valency_growth_probe(z, Rat(1), 1);
    CHECK(probe.polynomial);
    CHECK(probe.pass);

    // Koebe-like: a_k = k on the unit disk, slope ~= 1 <= 2p + 0.5
    CoefficientSequence koebe;
    for (long k = 0; k <= 200; ++k) koebe.values.push_back(Rat(k));
    auto kp = valency_growth_probe(koebe, Rat(1), 1);
    CHECK(!kp.polynomial);
    CHECK(kp.slope == doctest::Approx(1.0).epsilon(0.02));
    CHECK(kp.pass);

    // f = z^p on R=1 would be polynomial; use a geometric p-valent-like probe
    CoefficientSequence flat;
    for (long k = 0; k <= 100; ++k) flat.values.push_back(Rat(1));
    auto fp = valency_growth_probe(flat, Rat(1), 2);
    CHECK(fp.slope == doctest::Approx(0.0).epsilon(0.01));
    CHECK(fp.pass);

    CoefficientSequence tiny;
    tiny.values.assign(40, Rat(0));
    tiny.values[25] = Rat(1);  // a nonzero term inside the window, but only one
    CHECK_THROWS(valency_growth_probe(tiny, Rat(1), 1));
}
