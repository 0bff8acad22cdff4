#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taydom/domination.hpp"
#include "taydom/matrix.hpp"
#include "taydom/recurrence.hpp"

namespace taydom {

/// Op = sum_{j=0}^n p_j(x) (d/dx)^j with polynomial coefficients, p_n != 0.
struct DifferentialOperator {
    int n = 0;
    std::vector<PolyQ> p;  // p_0..p_n

    long deg(int j) const { return p[static_cast<std::size_t>(j)].degree(); }
    /// alpha_j = d_j - j for present (nonzero) p_j.
    long alpha_j(int j) const { return deg(j) - j; }
    /// alpha = max over nonzero p_j of alpha_j.
    long alpha() const;
    void validate() const;
};

/// Apply Op to a polynomial (exact).
PolyQ apply(const DifferentialOperator& op, const PolyQ& f);

/// One-sided data of g at a single jump point: values of g, g', .., g^{(n-1)}.
struct JumpData {
    Rat x;
    std::vector<Rat> left;   // g^{(i)}(x^-); zeros at the left endpoint
    std::vector<Rat> right;  // g^{(i)}(x^+); zeros at the right endpoint
};

struct PiecewiseData {
    Rat a, b;
    std::vector<JumpData> points;  // a = x_0 < x_1 < ... < x_{p+1} = b

    int jumps() const { return static_cast<int>(points.size()) - 2; }  // p
    void validate(int n) const;
};

/// eps_k as an exponential polynomial sum_s x_s^k w_s(k) plus a finite-support
/// correction (contributed by a jump point at x = 0).
struct EpsilonRule {
    struct Term {
        Rat x;     // nonzero
        PolyQ w;   // weight polynomial in k, degree < n
    };
    std::vector<Term> terms;
    std::vector<std::pair<long, Rat>> corrections;

    Rat eval(long k) const;
};

/// The homogeneous side sum_{ell=-n}^{alpha} q_ell(k) m_{k+ell}.
struct MomentRecurrence {
    int n = 0;
    long alpha = 0;
    std::vector<PolyQ> q;  // index ell + n

    const PolyQ& q_of(long ell) const { return q[static_cast<std::size_t>(ell + n)]; }
    /// sum_ell q_ell(k) m_{k+ell} over indices with k+ell >= 0 (coefficients
    /// at negative moment indices vanish identically; asserted).
    Rat lhs(const std::vector<Rat>& moments, long k) const;
};

/// q_ell(k) = sum_{i-j=ell} a_{i,j} (-1)^j (k+i)(k+i-1)...(k+i-j+1), the
/// integration-by-parts kernel; sign conventions frozen by the g == 1 oracle.
MomentRecurrence moment_recurrence(const DifferentialOperator& op);

/// Boundary contributions at the jump points (the right-hand side eps_k).
EpsilonRule epsilon_rule(const DifferentialOperator& op, const PiecewiseData& pw);

struct OperatorAnalysis {
    bool poincare_ok = false;  // alpha_n >= alpha_j for all j: regular (at most) at infinity
    long alpha = 0;
    long tau = 0;              // n (p + 2)
    PolyQ indicial;            // q_alpha(k)
    long Lambda = 0;           // largest positive integer root of q_alpha, 0 if none
    std::vector<CF> Z_A;       // roots of p_n union jump points (with multiplicity, flattened)
};

OperatorAnalysis analyze_operator(const DifferentialOperator& op, const PiecewiseData& pw,
                                  unsigned prec = 0);

/// Homogeneous one-step system w(k+1) = (A + B(k)) w(k) on the stacked state
/// w(k) = (m_{k-n}, .., m_{k+alpha-1}, eps_k, .., eps_{k+tau-1}).
struct MomentSystem {
    int n = 0;
    long alpha = 0, tau = 0, dim = 0, mdim = 0;
    bool poincare_ok = false;
    MomentRecurrence rec;
    EpsilonRule eps;
    std::vector<Rat> annihilator;  // monic coefficients of prod_s (E - x_s)^n
    MatQ A;

    /// Exact step matrix M(k); throws std::domain_error when q_alpha(k) = 0
    /// (at integer indicial roots the one-step advance is not defined).
    MatQ step_matrix(long k) const;
    MatQ B(long k) const;

    /// w(k) assembled from a moment sequence and the eps rule (k >= n).
    std::vector<Rat> state(const std::vector<Rat>& moments, long k) const;
};

MomentSystem companion_system(const DifferentialOperator& op, const PiecewiseData& pw);

struct FuchsianReport {
    bool fuchsian = false;
    bool regular_at_infinity = false;
    std::vector<std::string> notes;
};

/// Regularity at every finite singular point (roots of p_n) and at infinity.
/// Rational singular points are checked exactly; irrational ones numerically
/// (noted in the report).
FuchsianReport fuchsian_check(const DifferentialOperator& op, unsigned prec = 0);

struct VanishingBound {
    long bound = 0;
    int case_tag = 0;  // 1: some discontinuity with p_n(xi) != 0; 2: indicial route
    std::string note;
};

/// Moment-vanishing bound for nonzero solutions: case 1 gives tau + d_n - n,
/// case 2 gives Lambda + 1 + d_n - n. Refuses non-Fuchsian operators.
/// Endpoints count as discontinuities by default (g jumps to 0 outside).
VanishingBound vanishing_bound(const DifferentialOperator& op, const PiecewiseData& pw,
                               bool include_endpoints = true);

struct StieltjesParams {
    long N = 0;
    Param R_star = Rat(1);  // min over nonzero xi in Z_A of 1/|xi|; exact when identifiable
    long tau = 0, Lambda = 0;
};

/// N >= max(tau - 1, Lambda) + d_n - n and R* from the spectrum (nonzero
/// members; a 0 in Z_A contributes no constraint). Throws when Z_A has no
/// nonzero member.
StieltjesParams stieltjes_params(const DifferentialOperator& op, const PiecewiseData& pw,
                                 unsigned prec = 0);

/// Stieltjes-transform domination certificate: the parameters above with the
/// tabulated trivial S-rule frozen from an actual moment sequence.
DominationCertificate stieltjes_certificate(const DifferentialOperator& op, const PiecewiseData& pw,
                                            const CoefficientSequence& moments, unsigned prec = 0);

// ---------------------------------------------------------------------------
// Built-in test-function family: piecewise polynomial (exact moments) and
// piecewise exponential-polynomial (high-precision moments).

struct Piece {
    PolyQ poly;
    std::optional<Rat> exp_mu;  // piece is poly(x) * e^{mu x} when set
};

struct PieceFun {
    Rat a, b;
    std::vector<Rat> cuts;      // interior jump locations, strictly increasing
    std::vector<Piece> pieces;  // cuts.size() + 1

    bool polynomial() const;
    void validate() const;
};

/// m_k = int_a^b x^k g(x) dx for k <= K, exact. Requires polynomial pieces.
CoefficientSequence direct_moments(const PieceFun& g, long K);

/// Same with exponential-polynomial pieces allowed; error below 2^-(prec/2).
std::vector<BF> direct_moments_float(const PieceFun& g, long K, unsigned prec = 0);

/// One-sided values of g..g^{(n-1)} at every jump point (polynomial pieces).
PiecewiseData piecewise_data(const PieceFun& g, int n);

/// Op g = 0 on every piece, checked exactly (polynomial pieces).
bool annihilates(const DifferentialOperator& op, const PieceFun& g);

/// Polynomial solutions of Op f = 0 with deg f <= max_deg (exact kernel).
std::vector<PolyQ> polynomial_solutions(const DifferentialOperator& op, long max_deg);

}  // namespace taydom
