#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "taydom/recurrence.hpp"
#include "taydom/rng.hpp"

using namespace taydom;

static RecurrenceSpec fibonacci() { return RecurrenceSpec::constant({Rat(1), Rat(1)}); }

TEST_CASE("generate: Fibonacci") {
    auto seq = generate(fibonacci(), {Rat(0), Rat(1)}, 10);
    std::vector<long> want{0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
    REQUIRE(seq.size() == 11);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(seq.values[i] == Rat(want[i]));
}

TEST_CASE("generate: d=1 with psi = 1/k, hand-unrolled") {
    RecurrenceSpec s;
    s.d = 1;
    s.constant_part = {Rat(1)};
    s.perturbation = {SeqRule::rational(PolyQ::constant(Rat(1)), PolyQ({Rat(0), Rat(1)}, "k"))};
    auto seq = generate(s, {Rat(1)}, 3);
    CHECK(seq.values[1] == Rat(2));
    CHECK(seq.values[2] == Rat(3));
    CHECK(seq.values[3] == Rat(4));
}

TEST_CASE("generate: zero initial data stays zero; bad inputs throw") {
    RecurrenceSpec s = fibonacci();
    s.perturbation = {SeqRule::geometric(Rat(1), Rat(1, 2)), SeqRule::zero()};
    auto seq = generate(s, {Rat(0), Rat(0)}, 40);
    CHECK(seq.all_zero());

    CHECK_THROWS(generate(s, {Rat(1)}, 10));       // wrong init length
    CHECK_THROWS(generate(s, {Rat(1), Rat(1)}, 1));  // horizon < d

    // perturbation undefined at k = 3 (denominator k - 3)
    RecurrenceSpec bad;
    bad.d = 1;
    bad.constant_part = {Rat(1)};
    bad.perturbation = {SeqRule::rational(PolyQ::constant(Rat(1)), PolyQ({Rat(-3), Rat(1)}, "k"))};
    CHECK_THROWS(generate(bad, {Rat(1)}, 10));
}

TEST_CASE("characteristic data: Fibonacci, roots of unity, d=1") {
    auto cd = characteristic_data(fibonacci());
    CHECK(cd.rho.to_double() == doctest::Approx(1.6180339887498949));

    RecurrenceSpec unity = RecurrenceSpec::constant({Rat(0), Rat(0), Rat(0), Rat(1)});
    auto cd4 = characteristic_data(unity);
    CHECK(cd4.rho.to_double() == doctest::Approx(1.0));
    CHECK(cd4.roots.total_multiplicity() == 4);

    auto cd1 = characteristic_data(RecurrenceSpec::constant({Rat(3)}));
    CHECK(cd1.rho.to_double() == doctest::Approx(3.0));

    CHECK_THROWS(characteristic_data(RecurrenceSpec::constant({Rat(0), Rat(0)})));
}

TEST_CASE("radius estimate: Fibonacci at K=500 within 1e-2 of phi") {
    auto cd = characteristic_data(fibonacci());
    auto seq = generate(fibonacci(), {Rat(0), Rat(1)}, 500);
    auto est = radius_estimate(seq, 100, &cd.roots);
    CHECK(!est.eventually_zero);
    REQUIRE(est.has_match);
    CHECK(est.matched_root_modulus == doctest::Approx(1.6180339887498949));
    CHECK(est.relative_gap < 1e-2);
}

TEST_CASE("radius estimate: zero sequence and linear growth") {
    CoefficientSequence zeros;
    zeros.values.assign(50, Rat(0));
    CHECK(radius_estimate(zeros, 10).eventually_zero);

    // c=(1), psi_1(k) = 1/k gives a_k ~ k a_0: estimate tends to 1
    RecurrenceSpec s;
    s.d = 1;
    s.constant_part = {Rat(1)};
    s.perturbation = {SeqRule::rational(PolyQ::constant(Rat(1)), PolyQ({Rat(0), Rat(1)}, "k"))};
    auto cd = characteristic_data(s);
    auto seq = generate(s, {Rat(1)}, 500);
    auto est = radius_estimate(seq, 100, &cd.roots);
    CHECK(est.relative_gap < 0.02);
    CHECK(est.matched_root_modulus == doctest::Approx(1.0));

    CHECK_THROWS(radius_estimate(zeros, 100));  // window too long
}

TEST_CASE("fit_bounded_recurrence recovers exact relations") {
    auto seq = generate(fibonacci(), {Rat(0), Rat(1)}, 40);
    auto fit = fit_bounded_recurrence(seq, 2);
    REQUIRE(fit.ok);
    // the fitted coefficients satisfy the recurrence identity at every k
    for (long k = 2; k <= 40; ++k) {
        Rat acc(0);
        for (int j = 1; j <= 2; ++j) acc += fit.spec.perturbation[j - 1].eval(k) * seq[k - j];
        CHECK(acc == seq[k]);
    }

    // geometric: minimal-norm c for d=1 is the exact ratio
    CoefficientSequence geo;
    for (long k = 0; k <= 20; ++k) geo.values.push_back(Rat(2).pow(k));
    auto gfit = fit_bounded_recurrence(geo, 1);
    REQUIRE(gfit.ok);
    for (long k = 1; k <= 20; ++k) CHECK(gfit.spec.perturbation[0].eval(k) == Rat(2));

    // zero window followed by a nonzero term is impossible
    CoefficientSequence imp;
    imp.values = {Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)};
    auto bad = fit_bounded_recurrence(imp, 1);
    CHECK(!bad.ok);
    CHECK(bad.failure_k == 4);
}

TEST_CASE("generate is linear in the initial data") {
    Rng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        int d = static_cast<int>(rng.integer(1, 4));
        RecurrenceSpec s;
        s.d = d;
        for (int j = 0; j < d; ++j) s.constant_part.push_back(rng.rational(5, 3));
        for (int j = 0; j < d; ++j) {
            if (rng.coin())
                s.perturbation.push_back(SeqRule::zero());
            else
                s.perturbation.push_back(
                    SeqRule::rational(PolyQ::constant(rng.rational(3, 2)), PolyQ({Rat(0), Rat(1)}, "k")));
        }
        std::vector<Rat> u, v;
        for (int j = 0; j < d; ++j) {
            u.push_back(rng.rational(4, 3));
            v.push_back(rng.rational(4, 3));
        }
        Rat alpha = rng.rational(3, 2), beta = rng.rational(3, 2);
        std::vector<Rat> w;
        for (int j = 0; j < d; ++j) w.push_back(alpha * u[j] + beta * v[j]);

        auto su = generate(s, u, 25), sv = generate(s, v, 25), sw = generate(s, w, 25);
        for (long k = 0; k <= 25; ++k) CHECK(sw[k] == alpha * su[k] + beta * sv[k]);
    }
}

TEST_CASE("shift property: subsequences still satisfy a bounded recurrence with no larger coefficients") {
    // Solutions of a bounded-coefficient recurrence, shifted by m, are fitted
    // by tabulated coefficients whose bound profile never exceeds the source
    // profile by more than the fitting tolerance.
    Rng rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        int d = static_cast<int>(rng.integer(1, 3));
        RecurrenceSpec s;
        s.d = d;
        for (int j = 0; j < d; ++j) s.constant_part.push_back(rng.rational(3, 2));
        std::vector<Rat> init;
        for (int j = 0; j < d; ++j) init.push_back(rng.rational_nonzero(3, 2));
        auto seq = generate(s, init, 60);

        long m = rng.integer(1, 10);
        CoefficientSequence shifted;
        shifted.values.assign(seq.values.begin() + m, seq.values.end());
        auto fit = fit_bounded_recurrence(shifted, d);
        if (!fit.ok) continue;  // an exact zero window can occur; the failure is legitimate
        for (long k = d; k < shifted.size(); ++k) {
            Rat acc(0), fit_norm2(0), src_norm2(0);
            for (int j = 1; j <= d; ++j) {
                Rat cj = fit.spec.perturbation[j - 1].eval(k);
                acc += cj * shifted[k - j];
                fit_norm2 += cj * cj;
                Rat sj = s.constant_part[j - 1];  // the source solves the same constraint
                src_norm2 += sj * sj;
            }
            CHECK(acc == shifted[k]);
            // minimum-norm solution: never larger (in l2) than the source row
            CHECK(fit_norm2 <= src_norm2);
        }
    }
}

TEST_CASE("lipschitz families: zero tail, saturated bound, contracting average") {
    LipschitzFamilyConfig cfg;
    cfg.d = 1;
    cfg.C = Rat(2);
    cfg.delta = Rat(1);
    cfg.phi = [](long, const std::vector<CF>&) { return CF(0.0, 0.0); };
    auto z = generate_lipschitz(cfg, {CF(0.25, 0.0), CF(0.1, 0.0)}, 12);
    CHECK(z.bound_ok);
    for (std::size_t i = 2; i < z.values.size(); ++i) CHECK(z.values[i].is_zero());

    // phi_k(w) = C^k w_0 saturates |phi_k(w)| <= C^k |w|
    LipschitzFamilyConfig sat = cfg;
    sat.phi = [&](long k, const std::vector<CF>& w) {
        CF scale(pow_ui(BF(2L), static_cast<unsigned long>(k), MPFR_RNDN), BF(0.0));
        return scale * w[0];
    };
    auto s = generate_lipschitz(sat, {CF(0.25, 0.0), CF(0.1, 0.0)}, 12);
    CHECK(s.bound_ok);

    LipschitzFamilyConfig avg;
    avg.d = 1;
    avg.C = Rat(1);
    avg.delta = Rat(1);
    avg.phi = [](long, const std::vector<CF>& w) {
        CF sum = w[0] + w[1];
        return CF(sum.re * BF(0.5), sum.im * BF(0.5));
    };
    auto a = generate_lipschitz(avg, {CF(0.3, 0.1), CF(0.2, -0.2)}, 30);
    CHECK(a.bound_ok);

    // violation reported with the offending k
    LipschitzFamilyConfig viol = avg;
    viol.phi = [](long, const std::vector<CF>&) { return CF(100.0, 0.0); };
    auto v = generate_lipschitz(viol, {CF(0.3, 0.1), CF(0.2, -0.2)}, 10);
    CHECK(!v.bound_ok);
    CHECK(v.first_violation == 2);

    CHECK_THROWS(generate_lipschitz(avg, {CF(5.0, 0.0), CF(0.0, 0.0)}, 5));  // |w| > delta
}
