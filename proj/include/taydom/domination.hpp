#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "taydom/recurrence.hpp"

namespace taydom {

/// Certificate scalar: exact rational when the producing theorem allows it,
/// arbitrary-precision float otherwise. Exactness decides which verification
/// path runs.
using Param = std::variant<Rat, BF>;

bool param_exact(const Param& p);
/// Directed conversion (exact for the Rat alternative up to the rounding).
BF param_bf(const Param& p, mpfr_rnd_t rnd);
std::string param_str(const Param& p);
/// Exact rational value of a BF (every float is a dyadic rational).
Rat rat_from_bf(const BF& x);

/// The S(k) side of Def.-1 domination: a constant, the Turan polynomial rule
/// Q(k,d) = [2e(k/d+1)]^d, or a tabulated sequence.
struct SRule {
    enum class Kind { constant, turan, tabulated };
    Kind kind = Kind::constant;
    Param C = Rat(1);            // constant
    int turan_d = 0;             // turan
    long table_start = 0;        // tabulated: S(k) for k in [start, start+size)
    std::vector<Rat> table;

    static SRule constant_rule(Param c);
    static SRule turan_rule(int d);
    static SRule tabulated_rule(long start, std::vector<Rat> values);

    bool exact() const;
    /// Largest k at which the rule is defined (LONG_MAX for closed rules).
    long max_defined_k() const;
    Rat eval_exact(long k) const;
    BF eval(long k, mpfr_rnd_t rnd) const;
    std::string name() const;
};

struct Provenance {
    std::string rule;  // which theorem/constructor produced the certificate
    std::vector<std::pair<std::string, std::string>> detail;
};

/// (N, R, S(k)) Taylor-domination certificate: for k > N,
///   |a_k| R^k <= S(k) * max_{i<=N} |a_i| R^i.
struct DominationCertificate {
    int N = 0;
    Param R = Rat(1);
    SRule s_rule;
    Provenance prov;
};

struct VerificationReport {
    long horizon = 0;
    bool pass = false;
    bool exact = false;      // true when every comparison was exact rational
    long worst_k = -1;
    double worst_ratio = 0;  // max over k of |a_k|R^k / (S(k) max_{i<=N}|a_i|R^i)
    std::string diagnostic;
    std::vector<std::pair<long, double>> ratios;  // filled when requested
};

/// Checks the Def.-1 inequality for N < k <= K. Exact comparisons when R and
/// S(k) are rational; otherwise directed rounding (round the left side up and
/// the right side down), so "pass" is sound either way.
VerificationReport verify(const CoefficientSequence& seq, const DominationCertificate& cert, long K,
                          bool keep_ratios = false);

/// Constant-coefficient certificate (d-1, min|sigma_i^{-1}|, Q(k,d)).
DominationCertificate cert_turan(const RecurrenceSpec& spec, unsigned prec = 0);

/// Uniformly-bounded-class certificate (d-1, 1/((2K+2)rho), (2K+2)^{d-1}),
/// with (K, rho) picked over a candidate grid to minimize (2K+2)rho.
/// Extra rho candidates may be supplied by the caller.
DominationCertificate cert_bounded(const RecurrenceSpec& spec, const std::vector<Rat>& rho_overrides = {},
                                   unsigned prec = 0);

/// Same certificate instantiated at an explicit admissible pair (K, rho);
/// admissibility |c_j(k)| <= K rho^j for all j and k >= d is certified from
/// the closed-form coefficient law before the certificate is emitted.
DominationCertificate cert_bounded_at(const RecurrenceSpec& spec, const Rat& K, const Rat& rho);

/// Poincare-class certificate (N-hat + d, 2^-(d+3)/rho, 2^{(d+3)N}); the
/// N-hat scan certifies the threshold condition for ALL k, via the closed
/// form of the perturbation (or of the declared delta sequence).
DominationCertificate cert_poincare(const RecurrenceSpec& spec, unsigned prec = 0);

/// Every nonzero series dominates itself: N = first nonzero index and the
/// tabulated S(k) = |a_k| R^k / (|a_N| R^N).
DominationCertificate cert_trivial(const CoefficientSequence& seq, const Param& R);

/// Lipschitz-family certificate (d, 1/C, max(1,C)^d).
DominationCertificate cert_lipschitz(const LipschitzFamilyConfig& cfg);

/// Tabulated S(k) = |a_k| R^k / max_{i<=N} |a_i| R^i for a given N (the
/// self-domination rule generalized to any prefix cutoff); exact.
SRule tabulated_rule_from_sequence(const CoefficientSequence& seq, int N, const Rat& R);

}  // namespace taydom
