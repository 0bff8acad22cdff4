#pragma once

#include <string>
#include <vector>

#include "taydom/domination.hpp"

namespace taydom {

struct ZeroCount {
    Rat radius;
    long count = 0;
    double residual = 0;  // distance of the winding integral to the nearest integer
    long nodes = 0;
    bool reliable = true;  // residual < 0.1 (invariant; flagged, not thrown)
};

struct NearContourZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Winding number of f over |z| = r by trapezoidal quadrature of f'/f
/// (nodes double from 2^12 until the residual falls under 0.05, cap 2^16).
/// The coefficients are pre-scaled exactly by r^k so the quadrature runs on
/// the unit circle. Throws NearContourZero when the min-modulus pre-scan
/// estimates a zero within 1e-6 * r of the contour.
ZeroCount count_zeros(const std::vector<Rat>& coeffs, const Rat& r, long min_nodes = 1L << 12);

struct ZeroBoundCertificate {
    int N = 0;
    Rat R_prime;
    Param R = Rat(1);
    bool certified = false;
    // witness data at the certifying intermediate radius
    BF r_star, tail_bound, min_modulus;
    std::string note;
};

/// Explicit Rouche realization of the domination zero bound: searches
/// r* on a geometric grid in (R', R) for min_{|z|=r*} |P_N| > T(r*) with
/// T(r*) a rigorously up-summed tail bound; on success f has at most N
/// zeros in D_{R'}. Never returns a wrong bound: failure to certify is
/// reported as such. Requires a summable S-rule (constant or Turan).
ZeroBoundCertificate zero_bound(const DominationCertificate& cert, const std::vector<Rat>& prefix,
                                const Rat& R_prime);

struct ValencyProbe {
    bool polynomial = false;  // finitely many nonzero terms: trivially consistent
    double slope = 0;         // log-log regression of |a_k| R^k against k
    double threshold = 0;     // 2p + 0.5
    bool pass = false;
    long points = 0;
};

/// Empirical growth-exponent check against the p-valent prediction k^{2p}.
/// (The classical constant is non-explicit, so this is a probe, not a
/// certificate.) Throws on fewer than 5 usable points unless the sequence
/// is a polynomial.
ValencyProbe valency_growth_probe(const CoefficientSequence& seq, const Rat& R, int p);

}  // namespace taydom
