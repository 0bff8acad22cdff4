#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "taydom/roots.hpp"
#include "taydom/seqrule.hpp"

namespace taydom {

/// Declared uniform coefficient bounds |c_j(k)| <= K * rho^j.
struct DeclaredBounds {
    Rat K;
    Rat rho;
};

/// A linear non-stationary recurrence a_k = sum_j c_j(k) a_{k-j} with
/// c_j(k) = c_j + psi_j(k). psi identically zero is the constant-coefficient
/// class; psi -> 0 is the Poincare class.
struct RecurrenceSpec {
    int d = 0;
    std::vector<Rat> constant_part;    // c_1..c_d
    std::vector<SeqRule> perturbation; // psi_1..psi_d; empty means all zero
    std::optional<DeclaredBounds> declared_bounds;
    std::optional<SeqRule> delta;      // |psi_j(k)| <= delta_k * rho^j

    static RecurrenceSpec constant(std::vector<Rat> c);

    bool perturbation_is_zero() const;
    bool constant_part_is_zero() const;
    /// Effective coefficient c_j(k) for j in 1..d (exact).
    Rat coefficient(int j, long k) const;
    /// sigma^d - sum c_j sigma^{d-j}, the characteristic polynomial of the
    /// constant part.
    PolyQ characteristic_poly() const;
    void validate() const;
};

struct CoefficientSequence {
    std::vector<Rat> values;  // a_0..a_K
    std::string provenance;

    long size() const { return static_cast<long>(values.size()); }
    const Rat& operator[](long k) const { return values[static_cast<std::size_t>(k)]; }
    bool all_zero() const;
};

/// a_k for k <= horizon from d initial values, exact.
/// Throws if a perturbation rule is undefined at some step.
CoefficientSequence generate(const RecurrenceSpec& spec, const std::vector<Rat>& init, long horizon);

struct CharacteristicData {
    RootSet roots;
    BF rho;  // max_j |sigma_j|
};

/// Characteristic roots of the constant part and their max modulus.
/// Throws std::domain_error on an all-zero constant part (degenerate spec).
CharacteristicData characteristic_data(const RecurrenceSpec& spec, unsigned prec = 0);

struct RadiusEstimate {
    bool eventually_zero = false;
    BF estimate;                    // max over the trailing window of |a_k|^{1/k}
    double matched_root_modulus = 0;
    double relative_gap = 0;        // |estimate - |sigma|| / |sigma| of the nearest root
    bool has_match = false;
    long window = 0;
};

/// limsup_k |a_k|^{1/k} estimated over a trailing window, optionally matched
/// against a set of characteristic roots. Throws on a too-short sequence.
RadiusEstimate radius_estimate(const CoefficientSequence& seq, long window,
                               const RootSet* match_against = nullptr);

struct FitResult {
    bool ok = false;
    long failure_k = -1;         // index of the impossible step when !ok
    RecurrenceSpec spec;         // tabulated coefficients c_j(k), k = d..K
    std::vector<BF> profile;     // sup_k |c_j(k)| / rho^j per j (1-based j at index j-1)
    BF profile_max;
};

/// Per-k minimum-norm solution of a_k = sum_j c_j(k) a_{k-j} (exact; the
/// normal-equation solution of a single linear constraint). Fails on a
/// window of d zeros followed by a nonzero term. `rho` scales the reported
/// bound profile (the subsequence-characterization experiment).
FitResult fit_bounded_recurrence(const CoefficientSequence& seq, int d, const Rat& rho = Rat(1));

/// phi_k family of the general (nonlinear) recurrence construction:
/// a_i = w_i for i <= d, a_k = phi_k(w) for k > d, with |phi_k(w)| <= C^k |w|.
struct LipschitzFamilyConfig {
    int d = 0;
    Rat C;
    Rat delta;
    std::function<CF(long k, const std::vector<CF>& w)> phi;
};

struct LipschitzSequence {
    std::vector<CF> values;
    bool bound_ok = true;
    long first_violation = -1;  // smallest k with |a_k| > C^k |w|
};

/// Generates the family sequence and asserts the growth bound per term.
/// Requires |w| <= delta (Euclidean norm).
LipschitzSequence generate_lipschitz(const LipschitzFamilyConfig& cfg, const std::vector<CF>& w,
                                     long horizon);

}  // namespace taydom
