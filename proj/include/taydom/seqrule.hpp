#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "taydom/bigfloat.hpp"
#include "taydom/poly.hpp"

namespace taydom {

/// A scalar sequence rule in closed form: f(k) = (num(k)/den(k)) * q^k,
/// or a tabulated list with an optional declared tail bound.
///
/// Closed forms are the serializable carriers of perturbations psi_j(k) and
/// delta sequences; the tail machinery below makes "for all k > n" claims
/// about them decidable rather than sampled.
class SeqRule {
public:
    enum class Kind { closed, tabulated };

    struct Unbounded : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    static SeqRule zero() { return constant(Rat(0)); }
    static SeqRule constant(Rat c) {
        return closed(PolyQ::constant(std::move(c)), PolyQ::constant(Rat(1)), Rat(1));
    }
    /// num(k)/den(k); den must have no integer zero at evaluation points.
    static SeqRule rational(PolyQ num, PolyQ den) { return closed(std::move(num), std::move(den), Rat(1)); }
    /// c * q^k.
    static SeqRule geometric(Rat c, Rat q) {
        return closed(PolyQ::constant(std::move(c)), PolyQ::constant(Rat(1)), std::move(q));
    }
    static SeqRule closed(PolyQ num, PolyQ den, Rat q);
    static SeqRule tabulated(long start, std::vector<Rat> values, std::optional<Rat> tail_bound);

    Kind kind() const { return kind_; }
    bool is_zero_rule() const;
    bool defined_at(long k) const;
    Rat eval(long k) const;

    /// True if f(k) -> 0 is certifiable (Poincare class membership).
    bool tends_to_zero() const;
    /// True if sup-type claims about the infinite tail are decidable.
    bool has_certifiable_tail() const;

    /// Rigorous upper bound for sup_{k >= k0} |f(k)| (exact rational).
    /// Throws Unbounded when no finite bound exists or is derivable.
    Rat sup_abs_from(long k0) const;

    /// Largest k >= k_min with |f(k)| > bound, or k_min - 1 when the
    /// inequality |f(k)| <= bound holds for ALL k >= k_min (a certified
    /// all-k statement, not a sampled one). `bound` is compared exactly
    /// against rational values via mpfr_cmp_q, so a round-down bound stays
    /// sound. Throws Unbounded if |f| exceeds the bound cofinally.
    long last_violation(long k_min, const BF& bound) const;

    // Serialization accessors.
    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }
    const Rat& geom() const { return q_; }
    long table_start() const { return start_; }
    const std::vector<Rat>& table() const { return table_; }
    const std::optional<Rat>& tail_bound() const { return tail_; }

private:
    SeqRule() = default;

    /// First index H such that num, den and (num' den - num den') have no
    /// zeros with |z| >= H - 1; |num/den| is monotone on [H, inf).
    long monotone_horizon() const;

    Kind kind_ = Kind::closed;
    PolyQ num_, den_;
    Rat q_ = Rat(1);
    long start_ = 0;
    std::vector<Rat> table_;
    std::optional<Rat> tail_;
};

}  // namespace taydom
