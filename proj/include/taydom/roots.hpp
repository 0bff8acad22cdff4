#pragma once

#include <optional>
#include <vector>

#include "taydom/bigfloat.hpp"
#include "taydom/poly.hpp"

namespace taydom {

struct Root {
    CF value;
    int multiplicity = 1;
    double error_estimate = 0.0;  // cluster spread + last correction
};

/// All complex roots of a polynomial, with multiplicities from clustering
/// and a residual certificate checked at construction.
struct RootSet {
    std::vector<Root> roots;

    long total_multiplicity() const {
        long s = 0;
        for (auto& r : roots) s += r.multiplicity;
        return s;
    }
    /// max_j |root_j|; 0 for an empty set.
    BF max_modulus() const;
    /// min |root_j| over nonzero roots; throws if all roots are zero.
    BF min_modulus_nonzero() const;
    bool has_nonzero() const;
};

/// Aberth-Ehrlich simultaneous iteration at the given MPFR precision
/// (default precision if 0), followed by relative-distance clustering at
/// 1e-8 and residual certification against the coefficient size.
/// Throws std::invalid_argument on the zero polynomial or degree 0.
RootSet poly_roots(const UniPoly<Rat>& p, unsigned prec = 0);
RootSet poly_roots(const std::vector<CF>& coeffs, unsigned prec = 0);

/// Multiplicity of (x - xi) in p, by exact synthetic division. 0 if p(xi) != 0.
long order_at(const PolyQ& p, const Rat& xi);

/// Exact quotient p / (x - xi); requires p(xi) == 0.
PolyQ divide_linear(const PolyQ& p, const Rat& xi);

/// Largest positive integer root of p (exact scan up to the Cauchy bound);
/// nullopt when there is none.
std::optional<long> largest_positive_integer_root(const PolyQ& p);

/// Reconstructs a small-denominator rational close to a root approximation
/// and verifies it exactly; nullopt if no exact rational root is nearby.
std::optional<Rat> rational_root_near(const PolyQ& p, const CF& approx, unsigned long den_cap = 1000000);

}  // namespace taydom
