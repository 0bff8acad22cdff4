#include "taydom/abel.hpp"

#include <algorithm>
#include <cmath>

namespace taydom {

bool PoincareExpansion::defining_identity_ok() const {
    if (v.size() < 2 || !v[0].is_zero() || !(v[1] == PolyQ::constant(Rat(1)))) return false;
    for (std::size_t k = 2; k < v.size(); ++k) {
        PolyQ rhs = (Rat(-(static_cast<long>(k) - 1)) * p) * v[k - 1] +
                    (Rat(-(static_cast<long>(k) - 2)) * q) * v[k - 2];
        if (!(v[k].derivative() == rhs)) return false;
        if (!v[k].eval(Rat(0)).is_zero()) return false;
    }
    return true;
}

PoincareExpansion poincare_coefficients(const AbelEquation& eq, long K) {
    eq.validate();
    if (K < 2) throw std::invalid_argument("poincare_coefficients: K >= 2 required");

    PoincareExpansion exp;
    exp.shift = eq.a;
    exp.length = eq.b - eq.a;
    exp.p = eq.a.is_zero() ? eq.p : eq.p.shifted(eq.a);
    exp.q = eq.a.is_zero() ? eq.q : eq.q.shifted(eq.a);

    exp.v.resize(static_cast<std::size_t>(K) + 1);
    exp.v[0] = PolyQ();
    exp.v[1] = PolyQ::constant(Rat(1));
    for (long k = 2; k <= K; ++k) {
        PolyQ rhs = (Rat(-(k - 1)) * exp.p) * exp.v[static_cast<std::size_t>(k - 1)] +
                    (Rat(-(k - 2)) * exp.q) * exp.v[static_cast<std::size_t>(k - 2)];
        exp.v[static_cast<std::size_t>(k)] = rhs.antiderivative();  // v_k(0) = 0
    }
    return exp;
}

Rat return_map_eval(const PoincareExpansion& exp, const Rat& x_star, const Rat& y, double tail_tol) {
    if (exp.order() < 2) throw std::invalid_argument("return_map_eval: expansion too short");
    const long K = exp.order();
    Rat last = exp.v[static_cast<std::size_t>(K)].eval(x_star) * y.pow(K);
    if (std::abs(last.to_double()) > tail_tol)
        throw std::runtime_error("return_map_eval: truncation-tail heuristic tripped (|y| too large)");
    Rat acc(0);
    for (long k = K; k >= 1; --k) acc = (acc + exp.v[static_cast<std::size_t>(k)].eval(x_star)) * y;
    return acc;
}

namespace {

using PolyBF = UniPoly<BF>;

PolyBF to_bf(const PolyQ& p, unsigned prec) {
    std::vector<BF> c;
    c.reserve(p.coeffs().size());
    for (auto& q : p.coeffs()) c.emplace_back(q, MPFR_RNDN, prec);
    return PolyBF(std::move(c));
}

}  // namespace

BF ode_transport(const PolyQ& p, const PolyQ& q, const Rat& x_from, const Rat& x_to, const BF& y0,
                 unsigned prec, int log10_tol) {
    if (prec == 0) prec = std::max(BF::default_precision(), 512u);
    const int M = 32;  // series order per step

    BF tol = exp(mul(BF(log10_tol), log(BF(10), MPFR_RNDN, prec), MPFR_RNDN, prec), MPFR_RNDN, prec);
    PolyBF P = to_bf(p, prec), Q = to_bf(q, prec);

    BF x(Rat(x_from), MPFR_RNDN, prec);
    BF x_end(Rat(x_to), MPFR_RNDN, prec);
    BF y = y0;
    int dir = x_from < x_to ? 1 : (x_to < x_from ? -1 : 0);
    if (dir == 0) return y;

    const BF h_floor(1e-12);
    long guard = 0;
    BF h = abs(x_end - x);  // first try: the whole interval

    while ((dir > 0 && x < x_end) || (dir < 0 && x > x_end)) {
        if (++guard > 200000) throw std::runtime_error("ode_transport: step count exceeded");
        BF remaining = abs(x_end - x);
        if (remaining < BF::pow2(-static_cast<long>(prec) + 40)) break;  // endpoint snap
        if (h > remaining) h = remaining;

        // Taylor coefficients of the local solution y(x + dir*s), s in [0, h]:
        // recurrence c_{m+1} = [s^m](P~ Y^2 + Q~ Y^3) * dir / (m+1)
        std::vector<BF> Ps(static_cast<std::size_t>(M) + 1, BF(0)), Qs(Ps);
        {
            // shifted coefficients of P(x + dir*s), Q(x + dir*s) in s
            BF sgn(dir);
            // evaluate derivatives: P(x + t)= sum P^{(u)}(x) t^u / u!
            PolyBF cur = P;
            Rat fact(1);
            for (int u = 0; cur.degree() >= 0 && u <= M; ++u) {
                if (u > 0) fact *= Rat(u);
                Ps[static_cast<std::size_t>(u)] =
                    mul(cur.eval(x), div(pow_ui(sgn, static_cast<unsigned long>(u), MPFR_RNDN, prec),
                                         BF(fact, MPFR_RNDN, prec), MPFR_RNDN, prec),
                        MPFR_RNDN, prec);
                cur = cur.derivative();
            }
            cur = Q;
            fact = Rat(1);
            for (int u = 0; cur.degree() >= 0 && u <= M; ++u) {
                if (u > 0) fact *= Rat(u);
                Qs[static_cast<std::size_t>(u)] =
                    mul(cur.eval(x), div(pow_ui(sgn, static_cast<unsigned long>(u), MPFR_RNDN, prec),
                                         BF(fact, MPFR_RNDN, prec), MPFR_RNDN, prec),
                        MPFR_RNDN, prec);
                cur = cur.derivative();
            }
        }

        std::vector<BF> c(static_cast<std::size_t>(M) + 1, BF(0));
        std::vector<BF> y2(c), y3(c);
        c[0] = y;
        y2[0] = y * y;
        y3[0] = y2[0] * y;
        for (int m = 0; m < M; ++m) {
            // rhs_m = sum_u Ps[u] y2[m-u] + Qs[u] y3[m-u]
            BF rhs(0);
            for (int u = 0; u <= m; ++u) {
                rhs = rhs + Ps[static_cast<std::size_t>(u)] * y2[static_cast<std::size_t>(m - u)] +
                      Qs[static_cast<std::size_t>(u)] * y3[static_cast<std::size_t>(m - u)];
            }
            c[static_cast<std::size_t>(m + 1)] = mul(rhs, BF(dir), MPFR_RNDN, prec) / BF(m + 1);
            // extend the cached powers: y2[m+1] = sum_i c_i c_{m+1-i}, etc.
            BF s2(0);
            for (int i = 0; i <= m + 1; ++i)
                s2 = s2 + c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(m + 1 - i)];
            y2[static_cast<std::size_t>(m + 1)] = s2;
            BF s3(0);
            for (int i = 0; i <= m + 1; ++i)
                s3 = s3 + c[static_cast<std::size_t>(i)] * y2[static_cast<std::size_t>(m + 1 - i)];
            y3[static_cast<std::size_t>(m + 1)] = s3;
        }

        // local error estimate: the last two series terms at step h
        BF hM = pow_ui(h, static_cast<unsigned long>(M - 1), MPFR_RNDN, prec);
        BF tail = abs(c[static_cast<std::size_t>(M)]) * hM * h + abs(c[static_cast<std::size_t>(M - 1)]) * hM;
        if (tail > tol) {
            if (h <= h_floor) throw std::runtime_error("ode_transport: step floor reached (blow-up?)");
            h = h * BF(0.5);
            continue;
        }

        BF ynew(0);
        for (int m = M; m >= 0; --m) ynew = ynew * h + c[static_cast<std::size_t>(m)];
        y = ynew;
        x = dir > 0 ? x + h : x - h;
        if (tail < tol * BF::pow2(-20)) h = h * BF(1.5);
    }
    return y;
}

BF ode_oracle(const PoincareExpansion& exp, const Rat& x_star, const BF& y0, unsigned prec, int log10_tol) {
    return ode_transport(exp.p, exp.q, x_star, Rat(0), y0, prec, log10_tol);
}

CoefficientSequence moment_like(const AbelEquation& eq, long K) {
    eq.validate();
    PolyQ p = eq.a.is_zero() ? eq.p : eq.p.shifted(eq.a);
    PolyQ q = eq.a.is_zero() ? eq.q : eq.q.shifted(eq.a);
    Rat L = eq.b - eq.a;

    PolyQ P = p.antiderivative();  // P(0) = 0
    CoefficientSequence out;
    out.provenance = "abel moment-like sequence";
    PolyQ Pk = PolyQ::constant(Rat(1));
    for (long k = 0; k <= K; ++k) {
        out.values.push_back(integrate(Pk * q, Rat(0), L));
        Pk = Pk * P;
    }
    return out;
}

FixedPointCount fixed_point_count(const PoincareExpansion& exp, const Rat& x_star, const Rat& r) {
    FixedPointCount out;
    out.order_used = exp.order();
    std::vector<Rat> h(static_cast<std::size_t>(exp.order()) + 1, Rat(0));
    bool any = false;
    for (long k = 2; k <= exp.order(); ++k) {
        h[static_cast<std::size_t>(k)] = exp.v[static_cast<std::size_t>(k)].eval(x_star);
        any = any || !h[static_cast<std::size_t>(k)].is_zero();
    }
    if (!any) {
        out.center = true;  // identically zero to this order: center case, no count
        return out;
    }
    out.count = count_zeros(h, r);
    return out;
}

}  // namespace taydom
