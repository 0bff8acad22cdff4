#pragma once

#include "taydom/zeros.hpp"

namespace taydom {

/// y' = p(x) y^2 + q(x) y^3 on [a, b], rational polynomial coefficients.
struct AbelEquation {
    PolyQ p, q;
    Rat a, b;

    void validate() const {
        if (!(a < b)) throw std::invalid_argument("AbelEquation: need a < b");
    }
};

/// Poincare coefficients v_k of the transport map toward the left endpoint:
/// G_x(y) = y + sum_{k>=2} v_k(x) y^k sends the value y at x to the
/// solution's value at 0 (normalized coordinates; orientation pinned by the
/// ODE oracle and recorded in `orientation`).
struct PoincareExpansion {
    PolyQ p, q;             // translated so the interval starts at 0
    Rat shift;              // original left endpoint a
    Rat length;             // b - a
    std::vector<PolyQ> v;   // v[0] = 0, v[1] = 1, v[k] for k <= order
    std::string orientation = "transport x -> 0 (inverse of the left-to-right return map)";

    long order() const { return static_cast<long>(v.size()) - 1; }

    /// Re-derives the defining differential recurrence for every stored k
    /// (the stored polynomials are re-checked, not trusted).
    bool defining_identity_ok() const;
};

/// v_k via antidifferentiation with v_k(0) = 0, exact. K >= 2.
PoincareExpansion poincare_coefficients(const AbelEquation& eq, long K);

/// sum_{k=1}^K v_k(x*) y^k, exact; x* in normalized coordinates [0, length].
/// Throws when the last-term tail heuristic exceeds tail_tol.
Rat return_map_eval(const PoincareExpansion& exp, const Rat& x_star, const Rat& y,
                    double tail_tol = 1e-6);

/// High-order Taylor-method integration of the Abel equation between two
/// points (normalized coordinates), local tolerance ~10^log10_tol at the
/// given precision. Throws on suspected blow-up (step-size floor).
BF ode_transport(const PolyQ& p, const PolyQ& q, const Rat& x_from, const Rat& x_to, const BF& y0,
                 unsigned prec = 0, int log10_tol = -90);

/// Convenience: the oracle for the expansion's own map (x* -> 0).
BF ode_oracle(const PoincareExpansion& exp, const Rat& x_star, const BF& y0, unsigned prec = 0,
              int log10_tol = -90);

/// m_k = int_0^L P^k(x) q(x) dx with P = int p, P(0) = 0 (exact).
CoefficientSequence moment_like(const AbelEquation& eq, long K);

struct FixedPointCount {
    bool center = false;  // G(y) - y identically zero to this order
    ZeroCount count;
    long order_used = 0;
};

/// Zeros of G(y) - y in |y| < r via the argument principle on the truncation.
FixedPointCount fixed_point_count(const PoincareExpansion& exp, const Rat& x_star, const Rat& r);

}  // namespace taydom
