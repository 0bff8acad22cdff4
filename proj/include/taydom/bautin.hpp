#pragma once

#include <string>
#include <vector>

#include "taydom/multipoly.hpp"
#include "taydom/recurrence.hpp"

namespace taydom {

/// One term A_{k,alpha}(lambda) u^alpha of a stage polynomial P_k.
struct ParametricTerm {
    std::vector<std::uint32_t> u_exp;  // alpha, length d, |alpha| >= 1
    MultiPoly coeff;                   // polynomial in lambda
};

/// P_k as a sparse polynomial in u_1..u_d with lambda-polynomial coefficients.
struct ParametricStage {
    std::vector<ParametricTerm> terms;
};

/// Non-stationary polynomial recurrence a_k = P_k(a_{k-1}, .., a_{k-d});
/// stages cycle with period stages.size() starting at k = d.
/// Every P_k must have |alpha| >= 1 (no u-constant term): the recurrence is
/// then a constructive ideal-membership proof for every a_k.
struct ParametricRecurrence {
    int d = 0;
    int nparams = 0;
    std::vector<ParametricStage> stages;

    const ParametricStage& stage(long k) const {
        return stages[static_cast<std::size_t>((k - d) % static_cast<long>(stages.size()))];
    }
    bool linear() const;
    void validate() const;
};

struct ParametricSeries {
    int nparams = 0;
    std::vector<MultiPoly> a;  // a_0..a_K
    std::string provenance;

    long size() const { return static_cast<long>(a.size()); }
};

ParametricSeries generate_parametric(const ParametricRecurrence& rec, const std::vector<MultiPoly>& init,
                                     long K);

/// Cofactor witnesses a_k = sum_{i<d} psi_i^k a_i, built by substituting the
/// previous witnesses into P_k and collecting; the identity is asserted
/// exactly for every k.
struct IdealWitness {
    std::vector<MultiPoly> generators;               // a_0..a_{d-1}
    std::vector<std::vector<MultiPoly>> cofactors;   // cofactors[k-d][i] = psi_i^k, k >= d
    long claimed_index = 0;                          // I = I_{d-1}
};

IdealWitness ideal_witness(const ParametricRecurrence& rec, const std::vector<MultiPoly>& init, long K);

/// Fitted A0-class profile: deg a_k <= K1 k + K2, ||a_k|| <= K3 K4^k, under
/// the coefficient-max norm. The fitted constants satisfy both bounds for
/// every generated k (asserted).
struct A0Profile {
    Rat K1, K2, K3, K4;
    std::string norm = "coefficient-max";
};

A0Profile a0_profile(const ParametricSeries& ps);

/// Coefficient-level restatement of the linear recurrence: for every stored
/// multi-index beta, a_{k,beta} = sum_j sum_i A_{k,j,i} a_{k-j,beta[i]}.
struct CoefficientIdentityReport {
    long checked_k = 0;
    long checked_coefficients = 0;
    bool ok = false;
};

CoefficientIdentityReport coefficient_recurrence_check(const ParametricRecurrence& rec,
                                                       const ParametricSeries& ps);

struct SpecializationSample {
    std::vector<Rat> lambda;
    bool zero_locus = false;  // a_0..a_{d-1} vanish but the tail does not
    Rat C_min;                // smallest C making (N, R, C) pass over the horizon
};

struct UniformCReport {
    int N = 0;
    Rat R;
    long horizon = 0;
    std::vector<SpecializationSample> samples;
    Rat C_sup;                // sup over non-excluded samples (lower bound on the true uniform C)
    long zero_locus_count = 0;
};

/// Empirical search for the uniform constant of the (Bautin-index, R, C)
/// domination claim: per-sample smallest C at the given R, sup over samples.
UniformCReport specialize_and_certify(const ParametricSeries& ps, int d,
                                      const std::vector<std::vector<Rat>>& lambda_samples, const Rat& R);

/// a_k evaluated at a parameter point, as a scalar sequence.
CoefficientSequence specialize(const ParametricSeries& ps, const std::vector<Rat>& lambda);

}  // namespace taydom
