#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "taydom/matrix.hpp"
#include "taydom/multipoly.hpp"
#include "taydom/poly.hpp"
#include "taydom/rng.hpp"
#include "taydom/roots.hpp"

using namespace taydom;

TEST_CASE("rational canonical form and arithmetic") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(1, -2).to_string() == "-1/2");
    CHECK(Rat(6, 3).to_string() == "2");
    CHECK(Rat::from_string("-7/21") == Rat(-1, 3));
    CHECK(Rat(3, 7).pow(3) == Rat(27, 343));
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
    CHECK(Rat(5).pow(0) == Rat(1));
    CHECK_THROWS(Rat(1, 0));
    CHECK_THROWS(Rat::from_string("abc"));
    CHECK(Rat(-9, 4).floor_long() == -3);
    CHECK(Rat::from_string("5/1").to_string() == "5");
}

TEST_CASE("poly_eval matches the worked values") {
    PolyQ one_plus_z({Rat(1), Rat(1)}, "z");
    CHECK(one_plus_z.eval(Rat(0)) == Rat(1));

    PolyQ fib_char({Rat(-1), Rat(-1), Rat(1)}, "s");  // s^2 - s - 1
    CHECK(fib_char.eval(Rat(2)) == Rat(1));

    PolyQ cube = PolyQ::monomial(3, Rat(1));
    CHECK(cube.eval(Rat(3, 7)) == Rat(27, 343));
}

TEST_CASE("falling factorial") {
    PolyQ k({Rat(0), Rat(1)}, "k");
    PolyQ k_plus_2({Rat(2), Rat(1)}, "k");
    CHECK(falling_factorial(k_plus_2, 2) == PolyQ({Rat(2), Rat(3), Rat(1)}, "k"));
    CHECK(falling_factorial(Rat(5), 0) == Rat(1));
    CHECK(falling_factorial(k, 3) == PolyQ({Rat(0), Rat(2), Rat(-3), Rat(1)}, "k"));
}

TEST_CASE("poly ring laws hold exactly on random triples") {
    Rng rng(42);
    auto rand_poly = [&] {
        long deg = rng.integer(0, 6);
        std::vector<Rat> c;
        for (long i = 0; i <= deg; ++i) c.push_back(rng.rational(9, 5));
        return PolyQ(std::move(c));
    };
    for (int it = 0; it < 50; ++it) {
        PolyQ f = rand_poly(), g = rand_poly(), h = rand_poly();
        CHECK((f + g) * h == f * h + g * h);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * g == g * f);
    }
}

TEST_CASE("roots of the Fibonacci characteristic polynomial") {
    PolyQ p({Rat(-1), Rat(-1), Rat(1)}, "s");
    RootSet rs = poly_roots(p);
    REQUIRE(rs.roots.size() == 2);
    BF sqrt5 = sqrt(BF(5L), MPFR_RNDN);
    BF phi = (BF(1L) + sqrt5) / BF(2L);
    BF other = (BF(1L) - sqrt5) / BF(2L);
    // sorted by modulus: -1/phi first
    CHECK(abs(rs.roots[0].value.re - other).to_double() < 1e-40);
    CHECK(abs(rs.roots[1].value.re - phi).to_double() < 1e-40);
    CHECK(rs.roots[0].value.im.to_double() == doctest::Approx(0.0).epsilon(1e-30));
    CHECK(rs.max_modulus().to_double() == doctest::Approx(1.618033988749895));
}

TEST_CASE("roots: symmetric quadratic and a double root") {
    RootSet pm1 = poly_roots(PolyQ({Rat(-1), Rat(0), Rat(1)}));
    REQUIRE(pm1.roots.size() == 2);
    CHECK(pm1.roots[0].value.re.to_double() == doctest::Approx(-1.0));
    CHECK(pm1.roots[1].value.re.to_double() == doctest::Approx(1.0));

    // (s - 2)^2 = s^2 - 4s + 4
    RootSet dbl = poly_roots(PolyQ({Rat(4), Rat(-4), Rat(1)}));
    REQUIRE(dbl.roots.size() == 1);
    CHECK(dbl.roots[0].multiplicity == 2);
    CHECK(dbl.roots[0].value.re.to_double() == doctest::Approx(2.0));
}

TEST_CASE("roots reconstruct the monic input to 1e-12") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        long deg = rng.integer(2, 8);
        // well-separated rational roots
        std::vector<Rat> roots;
        for (long i = 0; i < deg; ++i) roots.push_back(Rat(rng.integer(-40, 40)) + Rat(i * 17, 7));
        PolyQ p = PolyQ::constant(Rat(1));
        for (auto& r : roots) p = p * PolyQ({-r, Rat(1)});
        RootSet rs = poly_roots(p);
        CHECK(rs.total_multiplicity() == deg);
        // reconstruct and compare coefficients
        std::vector<CF> rec{CF(1.0, 0.0)};
        for (auto& root : rs.roots)
            for (int m = 0; m < root.multiplicity; ++m) {
                std::vector<CF> next(rec.size() + 1, CF(0.0, 0.0));
                for (std::size_t i = 0; i < rec.size(); ++i) {
                    next[i + 1] += rec[i];
                    next[i] -= rec[i] * root.value;
                }
                rec = next;
            }
        for (std::size_t i = 0; i < rec.size(); ++i) {
            double want = p.coeff(i).to_double();
            double got = rec[i].re.to_double();
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("root helpers: zero roots, errors, integer and rational roots") {
    CHECK_THROWS(poly_roots(PolyQ()));
    CHECK_THROWS(poly_roots(PolyQ::constant(Rat(3))));

    // z^2 (1 + z)
    RootSet rs = poly_roots(PolyQ({Rat(0), Rat(0), Rat(1), Rat(1)}));
    CHECK(rs.total_multiplicity() == 3);
    CHECK(rs.roots[0].value.is_zero());
    CHECK(rs.roots[0].multiplicity == 2);

    PolyQ q({Rat(6), Rat(-5), Rat(1)});  // (x-2)(x-3)
    CHECK(largest_positive_integer_root(q).value() == 3);
    CHECK(!largest_positive_integer_root(PolyQ({Rat(1), Rat(1)})).has_value());
    CHECK(order_at(q, Rat(2)) == 1);
    CHECK(order_at(q * q, Rat(3)) == 2);
    CHECK(order_at(q, Rat(7)) == 0);

    auto rr = rational_root_near(q, CF(2.0000000001, 0.0));
    REQUIRE(rr.has_value());
    CHECK(*rr == Rat(2));
}

TEST_CASE("multipoly arithmetic commutes with specialization") {
    Rng rng(11);
    auto rand_mp = [&](int nv) {
        MultiPoly p(nv);
        int terms = static_cast<int>(rng.integer(1, 5));
        for (int t = 0; t < terms; ++t) {
            MultiPoly::Exp e(nv);
            for (int i = 0; i < nv; ++i) e[i] = static_cast<std::uint32_t>(rng.integer(0, 3));
            p = p + MultiPoly::monomial(nv, e, rng.rational(5, 3));
        }
        return p;
    };
    for (int it = 0; it < 30; ++it) {
        int nv = static_cast<int>(rng.integer(1, 3));
        MultiPoly f = rand_mp(nv), g = rand_mp(nv);
        std::vector<Rat> pt;
        for (int i = 0; i < nv; ++i) pt.push_back(rng.rational(4, 3));
        CHECK((f * g).eval(pt) == f.eval(pt) * g.eval(pt));
        CHECK((f + g).eval(pt) == f.eval(pt) + g.eval(pt));
    }
}

TEST_CASE("exact matrix: characteristic polynomial, rank, kernel") {
    MatQ a(2, 2);
    a.at(0, 0) = Rat(3);
    a.at(0, 1) = Rat(-2);
    a.at(1, 0) = Rat(1);
    a.at(1, 1) = Rat(0);
    // companion-like matrix with eigenvalues 1 and 2: char poly x^2 - 3x + 2
    CHECK(char_poly(a) == PolyQ({Rat(2), Rat(-3), Rat(1)}));

    MatQ b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b.at(i, j) = Rat(i + j);
    CHECK(rank(b) == 2);
    auto ker = kernel(b);
    REQUIRE(ker.size() == 1);
    auto img = b.apply(ker[0]);
    for (auto& v : img) CHECK(v.is_zero());
}

TEST_CASE("bigfloat directed rounding brackets the true value") {
    Rat third(1, 3);
    BF lo(third, MPFR_RNDD);
    BF hi(third, MPFR_RNDU);
    CHECK(lo < hi);
    BF e_lo = BF::euler_e(MPFR_RNDD);
    BF e_hi = BF::euler_e(MPFR_RNDU);
    CHECK(e_lo < e_hi);
    CHECK(e_lo.to_double() == doctest::Approx(2.718281828459045));
    CHECK(BF::pow2(-5).to_double() == 0.03125);
    BF x(Rat(7, 5));
    CHECK(BF::from_hex_string(x.to_hex_string(), x.precision()) == x);
}
