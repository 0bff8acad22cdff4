#include "taydom/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace taydom {

namespace {

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
    std::complex<double> acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

}  // namespace

ZeroCount count_zeros(const std::vector<Rat>& coeffs, const Rat& r, long min_nodes) {
    if (r.sign() <= 0) throw std::invalid_argument("count_zeros: radius must be positive");

    // Exact substitution w = z/r: b_k = a_k r^k, then normalize by max |b_k|.
    std::vector<Rat> b;
    b.reserve(coeffs.size());
    Rat rk(1), scale(0);
    for (auto& a : coeffs) {
        b.push_back(a * rk);
        Rat ab = b.back().abs();
        if (ab > scale) scale = ab;
        rk *= r;
    }
    while (!b.empty() && b.back().is_zero()) b.pop_back();
    if (b.empty()) throw std::invalid_argument("count_zeros: zero function");

    std::vector<std::complex<double>> f;
    f.reserve(b.size());
    for (auto& v : b) f.emplace_back((v / scale).to_double(), 0.0);
    std::vector<std::complex<double>> df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<double>(i));

    ZeroCount out;
    out.radius = r;
    if (df.empty()) {  // nonzero constant
        out.count = 0;
        out.nodes = 0;
        out.residual = 0;
        return out;
    }

    long nodes = std::max(min_nodes, 8L);
    const long cap = 1L << 16;
    for (;; nodes *= 2) {
        // min-modulus pre-scan: Newton-style distance estimate |f| / |f'|
        double min_dist = 1e300;
        for (long t = 0; t < nodes; ++t) {
            double th = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(nodes);
            std::complex<double> z(std::cos(th), std::sin(th));
            double fv = std::abs(horner(f, z));
            double dv = std::abs(horner(df, z));
            min_dist = std::min(min_dist, fv / std::max(dv, 1e-300));
        }
        if (min_dist < 1e-6)
            throw NearContourZero("count_zeros: estimated zero within 1e-6*r of the contour");

        std::complex<double> s(0, 0);
        for (long t = 0; t < nodes; ++t) {
            double th = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(nodes);
            std::complex<double> z(std::cos(th), std::sin(th));
            s += horner(df, z) / horner(f, z) * z;
        }
        std::complex<double> integral = s / static_cast<double>(nodes);
        long count = std::lround(integral.real());
        double residual = std::abs(integral - std::complex<double>(static_cast<double>(count), 0));
        out.count = count;
        out.residual = residual;
        out.nodes = nodes;
        if (residual < 0.05 || nodes >= cap) break;
    }
    out.reliable = out.residual < 0.1;
    if (out.count < 0) out.reliable = false;  // winding of an analytic function cannot be negative
    return out;
}

namespace {

/// Rigorous upper bound for sum_{k > N} S(k) x^k, directed rounding.
/// Returns false when the sum cannot be bounded (not summable at x).
bool tail_sum_upper(const SRule& s, int N, const BF& x_up, BF& out) {
    if (!(x_up < BF(1.0))) return false;
    if (s.kind == SRule::Kind::constant) {
        // C x^{N+1} / (1 - x)
        BF C = param_bf(s.C, MPFR_RNDU);
        BF num = mul(C, pow_ui(x_up, static_cast<unsigned long>(N + 1), MPFR_RNDU), MPFR_RNDU);
        BF den = sub(BF(1L), x_up, MPFR_RNDD);
        if (den.sign() <= 0) return false;
        out = div(num, den, MPFR_RNDU);
        return true;
    }
    if (s.kind == SRule::Kind::turan) {
        const int d = s.turan_d;
        BF total(0.0);
        BF term = s.eval(N + 1, MPFR_RNDU);
        term = mul(term, pow_ui(x_up, static_cast<unsigned long>(N + 1), MPFR_RNDU), MPFR_RNDU);
        long k = N + 1;
        const long iter_cap = 200000;
        for (long it = 0; it < iter_cap; ++it, ++k) {
            total = add(total, term, MPFR_RNDU);
            // ratio S(k+1)/S(k) * x = ((k+1+d)/(k+d))^d * x, decreasing in k
            BF ratio = mul(pow_ui(div(BF(k + 1 + d), BF(k + d), MPFR_RNDU), static_cast<unsigned long>(d),
                                  MPFR_RNDU),
                           x_up, MPFR_RNDU);
            if (ratio < BF(1.0 - 1e-6)) {
                // geometric comparison from here on
                BF next = mul(term, ratio, MPFR_RNDU);
                BF rem = div(next, sub(BF(1L), ratio, MPFR_RNDD), MPFR_RNDU);
                out = add(total, rem, MPFR_RNDU);
                return true;
            }
            term = mul(term, ratio, MPFR_RNDU);
        }
        return false;
    }
    return false;  // tabulated rules carry no infinite tail
}

/// Lower bound for min_{|z| = r} |P(z)| by dense sampling plus a Lipschitz
/// correction over each arc.
BF min_modulus_lower(const std::vector<Rat>& prefix, const BF& r) {
    const long n = static_cast<long>(prefix.size()) - 1;
    const long M = std::max(4096L, 64 * (n + 1));

    // Lip = sum k |a_k| r^{k-1}, rounded up.
    BF lip(0.0), rk(1.0);
    for (long k = 1; k <= n; ++k) {
        BF a(prefix[static_cast<std::size_t>(k)].abs(), MPFR_RNDU);
        lip = add(lip, mul(mul(BF(k), a, MPFR_RNDU), rk, MPFR_RNDU), MPFR_RNDU);
        rk = mul(rk, r, MPFR_RNDU);
    }

    BF min_sample(1e300);
    mpfr_t th, sn, cs;
    mpfr_init2(th, BF::default_precision());
    mpfr_init2(sn, BF::default_precision());
    mpfr_init2(cs, BF::default_precision());
    for (long t = 0; t < M; ++t) {
        mpfr_const_pi(th, MPFR_RNDN);
        mpfr_mul_si(th, th, 2 * t, MPFR_RNDN);
        mpfr_div_si(th, th, M, MPFR_RNDN);
        mpfr_sin_cos(sn, cs, th, MPFR_RNDN);
        BF c(0.0), s(0.0);
        mpfr_set(c.raw(), cs, MPFR_RNDN);
        mpfr_set(s.raw(), sn, MPFR_RNDN);
        CF z(r * c, r * s);
        CF acc(BF(prefix.back(), MPFR_RNDN), BF(0.0));
        for (long i = n - 1; i >= 0; --i)
            acc = acc * z + CF(BF(prefix[static_cast<std::size_t>(i)], MPFR_RNDN), BF(0.0));
        BF m = acc.abs();
        if (m < min_sample) min_sample = m;
    }
    mpfr_clear(th);
    mpfr_clear(sn);
    mpfr_clear(cs);

    // arc length between samples is 2*pi*r/M; max distance to a sample is half
    BF pi_up(0.0);
    mpfr_const_pi(pi_up.raw(), MPFR_RNDU);
    BF h = div(mul(pi_up, r, MPFR_RNDU), BF(M), MPFR_RNDU);
    BF slack = mul(lip, h, MPFR_RNDU);
    // absorb round-to-nearest evaluation error
    BF fuzz = mul(min_sample, BF::pow2(-static_cast<long>(BF::default_precision() / 2)), MPFR_RNDU);
    return sub(sub(min_sample, slack, MPFR_RNDD), fuzz, MPFR_RNDD);
}

}  // namespace

ZeroBoundCertificate zero_bound(const DominationCertificate& cert, const std::vector<Rat>& prefix,
                                const Rat& R_prime) {
    if (static_cast<long>(prefix.size()) < cert.N + 1)
        throw std::invalid_argument("zero_bound: prefix must contain a_0..a_N");
    if (cert.s_rule.kind == SRule::Kind::tabulated)
        throw std::invalid_argument("zero_bound: S rule carries no summable tail (tabulated)");

    ZeroBoundCertificate out;
    out.N = cert.N;
    out.R_prime = R_prime;
    out.R = cert.R;

    bool prefix_zero = true;
    for (int i = 0; i <= cert.N; ++i)
        if (!prefix[static_cast<std::size_t>(i)].is_zero()) prefix_zero = false;
    if (prefix_zero) throw std::domain_error("zero_bound: a_0..a_N identically zero");

    BF R_dn = param_bf(cert.R, MPFR_RNDD);
    BF Rp(R_prime, MPFR_RNDU);
    if (!(Rp < R_dn)) throw std::invalid_argument("zero_bound: R' must be strictly less than R");

    // M = max_{i<=N} |a_i| R^i, rounded up (it scales the tail).
    BF M_up(0.0), Ri(1.0);
    BF R_up = param_bf(cert.R, MPFR_RNDU);
    for (int i = 0; i <= cert.N; ++i) {
        BF t = mul(BF(prefix[static_cast<std::size_t>(i)].abs(), MPFR_RNDU), Ri, MPFR_RNDU);
        if (t > M_up) M_up = t;
        Ri = mul(Ri, R_up, MPFR_RNDU);
    }

    std::vector<Rat> p(prefix.begin(), prefix.begin() + cert.N + 1);

    const int grid = 32;
    BF lnq = log(div(R_dn, Rp, MPFR_RNDN), MPFR_RNDN);
    for (int m = 1; m <= grid; ++m) {
        // r* = R' * (R/R')^{m/(grid+1)}
        BF frac = div(BF(m), BF(grid + 1), MPFR_RNDN);
        BF rstar = mul(Rp, exp(mul(lnq, frac, MPFR_RNDN), MPFR_RNDN), MPFR_RNDN);
        if (!(rstar > Rp) || !(rstar < R_dn)) continue;

        BF x_up = div(rstar, R_dn, MPFR_RNDU);
        BF tail;
        if (!tail_sum_upper(cert.s_rule, cert.N, x_up, tail)) continue;
        tail = mul(tail, M_up, MPFR_RNDU);
        // T(r*) so far is sum S(k) M x^k; the tail of f in |z| <= r* needs
        // |a_k| r*^k <= S(k) M (r*/R)^k, which is exactly this sum.
        BF minmod = min_modulus_lower(p, rstar);
        if (minmod > tail) {
            out.certified = true;
            out.r_star = rstar;
            out.tail_bound = tail;
            out.min_modulus = minmod;
            out.note = "Rouche inequality established";
            return out;
        }
    }
    out.note = "not certified (no r* in the grid satisfied the Rouche inequality)";
    return out;
}

ValencyProbe valency_growth_probe(const CoefficientSequence& seq, const Rat& R, int p) {
    if (p < 1) throw std::invalid_argument("valency_growth_probe: p >= 1 required");
    const long K = seq.size() - 1;
    if (K < 8) throw std::invalid_argument("valency_growth_probe: sequence too short");

    ValencyProbe out;
    out.threshold = 2.0 * p + 0.5;

    long last_nonzero = -1;
    for (long k = 0; k <= K; ++k)
        if (!seq[k].is_zero()) last_nonzero = k;

    std::vector<double> xs, ys;
    BF logR = log(BF(R, MPFR_RNDN), MPFR_RNDN);
    for (long k = K / 2; k <= K; ++k) {
        if (seq[k].is_zero()) continue;
        BF ly = log(BF(seq[k].abs(), MPFR_RNDN), MPFR_RNDN) + BF(k) * logR;
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(ly.to_double());
    }
    out.points = static_cast<long>(xs.size());

    if (out.points < 5) {
        if (last_nonzero < K / 2) {
            out.polynomial = true;  // finite Taylor expansion: trivially consistent
            out.pass = true;
            return out;
        }
        throw std::invalid_argument("valency_growth_probe: too few nonzero terms in the window");
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(xs.size());
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.pass = out.slope <= out.threshold;
    return out;
}

}  // namespace taydom
