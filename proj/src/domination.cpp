#include "taydom/domination.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstring>

namespace taydom {

bool param_exact(const Param& p) { return std::holds_alternative<Rat>(p); }

BF param_bf(const Param& p, mpfr_rnd_t rnd) {
    if (auto* r = std::get_if<Rat>(&p)) return BF(*r, rnd);
    return std::get<BF>(p);
}

std::string param_str(const Param& p) {
    if (auto* r = std::get_if<Rat>(&p)) return r->to_string();
    return std::get<BF>(p).to_string();
}

Rat rat_from_bf(const BF& x) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x.raw());
    char* c = mpq_get_str(nullptr, 10, q);
    Rat r = Rat::from_string(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, strlen(c) + 1);
    mpq_clear(q);
    return r;
}

SRule SRule::constant_rule(Param c) {
    SRule s;
    s.kind = Kind::constant;
    s.C = std::move(c);
    return s;
}

SRule SRule::turan_rule(int d) {
    if (d < 1) throw std::invalid_argument("SRule: turan d >= 1");
    SRule s;
    s.kind = Kind::turan;
    s.turan_d = d;
    return s;
}

SRule SRule::tabulated_rule(long start, std::vector<Rat> values) {
    SRule s;
    s.kind = Kind::tabulated;
    s.table_start = start;
    s.table = std::move(values);
    return s;
}

bool SRule::exact() const {
    switch (kind) {
        case Kind::constant: return param_exact(C);
        case Kind::turan: return false;  // Q(k,d) contains e
        case Kind::tabulated: return true;
    }
    return false;
}

long SRule::max_defined_k() const {
    if (kind == Kind::tabulated) return table_start + static_cast<long>(table.size()) - 1;
    return LONG_MAX;
}

Rat SRule::eval_exact(long k) const {
    switch (kind) {
        case Kind::constant: return std::get<Rat>(C);
        case Kind::tabulated: {
            long i = k - table_start;
            if (i < 0 || i >= static_cast<long>(table.size()))
                throw std::domain_error("SRule: tabulated rule undefined at k=" + std::to_string(k));
            return table[static_cast<std::size_t>(i)];
        }
        case Kind::turan: throw std::domain_error("SRule: Turan rule is not exactly evaluable");
    }
    throw std::logic_error("SRule: bad kind");
}

BF SRule::eval(long k, mpfr_rnd_t rnd) const {
    switch (kind) {
        case Kind::constant: return param_bf(C, rnd);
        case Kind::tabulated: return BF(eval_exact(k), rnd);
        case Kind::turan: {
            // Q(k,d) = [2e(k/d + 1)]^d, all factors positive: directed
            // rounding is preserved through the power.
            BF two_e = mul(BF(2L), BF::euler_e(rnd), rnd);
            BF frac(Rat(k + turan_d, turan_d), rnd);
            return pow_ui(mul(two_e, frac, rnd), static_cast<unsigned long>(turan_d), rnd);
        }
    }
    throw std::logic_error("SRule: bad kind");
}

std::string SRule::name() const {
    switch (kind) {
        case Kind::constant: return "constant";
        case Kind::turan: return "turan";
        case Kind::tabulated: return "tabulated";
    }
    return "?";
}

VerificationReport verify(const CoefficientSequence& seq, const DominationCertificate& cert, long K,
                          bool keep_ratios) {
    VerificationReport rep;
    if (cert.N < 0) throw std::invalid_argument("verify: N >= 0 required");
    if (seq.size() < std::max<long>(cert.N + 1, K) + 1)
        throw std::invalid_argument("verify: sequence shorter than max(N+1, K)");

    long k_end = std::min(K, cert.s_rule.max_defined_k());
    rep.horizon = k_end;
    if (k_end < K) rep.diagnostic = "horizon clipped to the tabulated S(k) range; ";

    const bool exact = param_exact(cert.R) && cert.s_rule.exact();
    rep.exact = exact;
    rep.pass = true;
    rep.worst_ratio = 0;

    if (exact) {
        const Rat& R = std::get<Rat>(cert.R);
        if (R.sign() <= 0) throw std::invalid_argument("verify: R must be positive");
        Rat M(0), Ri(1);
        for (long i = 0; i <= cert.N; ++i) {
            Rat t = seq[i].abs() * Ri;
            if (t > M) M = t;
            Ri *= R;
        }
        // Ri is now R^{N+1}
        if (M.is_zero()) {
            for (long k = cert.N + 1; k < seq.size(); ++k)
                if (!seq[k].is_zero()) {
                    rep.pass = false;
                    rep.worst_k = k;
                    rep.worst_ratio = std::numeric_limits<double>::infinity();
                    rep.diagnostic += "a_0..a_N all vanish while a_" + std::to_string(k) + " != 0";
                    return rep;
                }
            rep.diagnostic += "sequence identically zero: vacuous pass";
            return rep;
        }
        Rat Rk = Ri;
        for (long k = cert.N + 1; k <= k_end; ++k) {
            Rat lhs = seq[k].abs() * Rk;
            Rat rhs = cert.s_rule.eval_exact(k) * M;
            double ratio = rhs.is_zero() ? (lhs.is_zero() ? 0.0 : std::numeric_limits<double>::infinity())
                                         : (lhs / rhs).to_double();
            if (keep_ratios) rep.ratios.emplace_back(k, ratio);
            if (ratio >= rep.worst_ratio || rep.worst_k < 0) {
                rep.worst_ratio = ratio;
                rep.worst_k = k;
            }
            if (lhs > rhs) rep.pass = false;
            Rk *= R;
        }
        return rep;
    }

    // Directed path: round |a_k| R^k up and S(k) * M down, so a reported
    // pass is sound even though R or S(k) is irrational.
    BF R_up = param_bf(cert.R, MPFR_RNDU);
    BF R_dn = param_bf(cert.R, MPFR_RNDD);
    if (R_dn.sign() <= 0) throw std::invalid_argument("verify: R must be positive");

    BF M_dn(0.0), Ri_dn(1.0);
    bool prefix_zero = true;
    for (long i = 0; i <= cert.N; ++i) {
        if (!seq[i].is_zero()) prefix_zero = false;
        BF t = mul(BF(seq[i].abs(), MPFR_RNDD), Ri_dn, MPFR_RNDD);
        if (t > M_dn) M_dn = t;
        Ri_dn = mul(Ri_dn, R_dn, MPFR_RNDD);
    }
    if (prefix_zero) {
        for (long k = cert.N + 1; k < seq.size(); ++k)
            if (!seq[k].is_zero()) {
                rep.pass = false;
                rep.worst_k = k;
                rep.worst_ratio = std::numeric_limits<double>::infinity();
                rep.diagnostic += "a_0..a_N all vanish while a_" + std::to_string(k) + " != 0";
                return rep;
            }
        rep.diagnostic += "sequence identically zero: vacuous pass";
        return rep;
    }

    BF Rk_up = pow_ui(R_up, static_cast<unsigned long>(cert.N + 1), MPFR_RNDU);
    for (long k = cert.N + 1; k <= k_end; ++k) {
        BF lhs = mul(BF(seq[k].abs(), MPFR_RNDU), Rk_up, MPFR_RNDU);
        BF rhs = mul(cert.s_rule.eval(k, MPFR_RNDD), M_dn, MPFR_RNDD);
        double ratio = rhs.is_zero() ? (lhs.is_zero() ? 0.0 : std::numeric_limits<double>::infinity())
                                     : (lhs / rhs).to_double();
        if (keep_ratios) rep.ratios.emplace_back(k, ratio);
        if (ratio >= rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_k = k;
        }
        if (!(lhs <= rhs)) rep.pass = false;
        Rk_up = mul(Rk_up, R_up, MPFR_RNDU);
    }
    return rep;
}

namespace {

/// |sigma| of the maximal-modulus characteristic root as an exact rational,
/// when that root can be identified exactly; nullopt otherwise.
std::optional<Rat> exact_rho(const RecurrenceSpec& spec, const CharacteristicData& cd) {
    if (spec.d == 1) return spec.constant_part[0].abs();
    const Root* top = nullptr;
    BF top_mod(0.0);
    for (auto& r : cd.roots.roots) {
        BF m = r.value.abs();
        if (!top || m > top_mod) {
            top = &r;
            top_mod = m;
        }
    }
    if (!top) return std::nullopt;
    auto cand = rational_root_near(spec.characteristic_poly(), top->value);
    if (!cand) return std::nullopt;
    // the identified root must really carry the max modulus
    Rat am = cand->abs();
    BF am_bf(am, MPFR_RNDU);
    for (auto& r : cd.roots.roots)
        if (r.value.abs() > am_bf * BF(1.0 + 1e-40)) return std::nullopt;
    return am;
}

/// rho as a Param: exact when identifiable, else a safe upper bound
/// (the certificate radius divides by rho, so rounding rho up keeps R sound).
Param rho_param_upper(const RecurrenceSpec& spec, const CharacteristicData& cd, unsigned prec) {
    if (auto ex = exact_rho(spec, cd)) return *ex;
    unsigned p = prec ? prec : BF::default_precision();
    BF margin = BF(1.0) + BF::pow2(-static_cast<long>(p / 2));
    return mul(cd.rho, margin, MPFR_RNDU);
}

}  // namespace

DominationCertificate cert_turan(const RecurrenceSpec& spec, unsigned prec) {
    spec.validate();
    if (!spec.perturbation_is_zero())
        throw std::invalid_argument("cert_turan: constant-coefficient recurrence required (psi == 0)");
    CharacteristicData cd = characteristic_data(spec, prec);  // throws on degenerate spec

    // R = min_i |sigma_i^{-1}| = 1/rho.
    Param rho = rho_param_upper(spec, cd, prec);
    Param R;
    if (param_exact(rho))
        R = std::get<Rat>(rho).inv();
    else
        R = div(BF(1L), std::get<BF>(rho), MPFR_RNDD);

    DominationCertificate cert;
    cert.N = spec.d - 1;
    cert.R = R;
    cert.s_rule = SRule::turan_rule(spec.d);
    cert.prov.rule = "turan";
    cert.prov.detail = {{"d", std::to_string(spec.d)}, {"rho", param_str(rho)}};
    return cert;
}

DominationCertificate cert_bounded(const RecurrenceSpec& spec, const std::vector<Rat>& rho_overrides,
                                   unsigned prec) {
    spec.validate();
    bool degenerate = spec.constant_part_is_zero() && spec.perturbation_is_zero();
    if (degenerate) throw std::domain_error("cert_bounded: degenerate spec (rho = 0) refused");

    // sup_k |c_j(k)| <= |c_j| + sup_k |psi_j(k)|, exact upper bounds per j.
    std::vector<Rat> sup_c(static_cast<std::size_t>(spec.d));
    for (int j = 1; j <= spec.d; ++j) {
        Rat s = spec.constant_part[static_cast<std::size_t>(j - 1)].abs();
        if (!spec.perturbation.empty()) {
            auto& psi = spec.perturbation[static_cast<std::size_t>(j - 1)];
            if (!psi.has_certifiable_tail())
                throw std::invalid_argument("cert_bounded: tabulated perturbation without declared tail bound");
            s += psi.sup_abs_from(spec.d);
        }
        sup_c[static_cast<std::size_t>(j - 1)] = s;
    }

    // Candidate grid: declared rho, |sigma_j| dyadics scaled by 2^{-5..5},
    // caller overrides. Any admissible pair is sound; the grid minimum of
    // nu = (2K+2) rho is reproducible.
    std::vector<Rat> candidates = rho_overrides;
    if (spec.declared_bounds) candidates.push_back(spec.declared_bounds->rho);
    if (!spec.constant_part_is_zero()) {
        CharacteristicData cd = characteristic_data(spec, prec);
        for (auto& root : cd.roots.roots) {
            BF m = root.value.abs();
            if (m.is_zero()) continue;
            Rat base = rat_from_bf(mul(m, BF(1.0) + BF::pow2(-64), MPFR_RNDU));
            for (int e = -5; e <= 5; ++e) {
                Rat cand = base * Rat(2).pow(e);
                if (cand.sign() > 0) candidates.push_back(cand);
            }
        }
    }
    if (candidates.empty()) candidates.push_back(Rat(1));

    bool have = false;
    Rat best_K, best_rho, best_nu;
    for (auto& rho : candidates) {
        if (rho.sign() <= 0) continue;
        Rat K(0);
        for (int j = 1; j <= spec.d; ++j) {
            Rat t = sup_c[static_cast<std::size_t>(j - 1)] / rho.pow(j);
            if (t > K) K = t;
        }
        // Declared K is honored as a floor so the certificate never claims a
        // tighter bound than the user promised to hold for all k.
        if (spec.declared_bounds && rho == spec.declared_bounds->rho && K < spec.declared_bounds->K)
            K = spec.declared_bounds->K;
        Rat nu = (Rat(2) * K + Rat(2)) * rho;
        if (!have || nu < best_nu) {
            have = true;
            best_K = K;
            best_rho = rho;
            best_nu = nu;
        }
    }
    if (!have) throw std::domain_error("cert_bounded: no admissible (K, rho) candidate");

    DominationCertificate cert;
    cert.N = spec.d - 1;
    cert.R = best_nu.inv();
    cert.s_rule = SRule::constant_rule((Rat(2) * best_K + Rat(2)).pow(spec.d - 1));
    cert.prov.rule = "bounded";
    cert.prov.detail = {{"K", best_K.to_string()},
                        {"rho", best_rho.to_string()},
                        {"nu", best_nu.to_string()}};
    return cert;
}

DominationCertificate cert_bounded_at(const RecurrenceSpec& spec, const Rat& K, const Rat& rho) {
    spec.validate();
    if (rho.sign() <= 0 || K.sign() < 0) throw std::invalid_argument("cert_bounded_at: need rho > 0, K >= 0");
    for (int j = 1; j <= spec.d; ++j) {
        Rat s = spec.constant_part[static_cast<std::size_t>(j - 1)].abs();
        if (!spec.perturbation.empty()) s += spec.perturbation[static_cast<std::size_t>(j - 1)].sup_abs_from(spec.d);
        if (s > K * rho.pow(j))
            throw std::invalid_argument("cert_bounded_at: pair (K, rho) is not admissible at j=" +
                                        std::to_string(j));
    }
    Rat nu = (Rat(2) * K + Rat(2)) * rho;
    DominationCertificate cert;
    cert.N = spec.d - 1;
    cert.R = nu.inv();
    cert.s_rule = SRule::constant_rule((Rat(2) * K + Rat(2)).pow(spec.d - 1));
    cert.prov.rule = "bounded";
    cert.prov.detail = {{"K", K.to_string()}, {"rho", rho.to_string()}, {"nu", nu.to_string()}};
    return cert;
}

DominationCertificate cert_poincare(const RecurrenceSpec& spec, unsigned prec) {
    spec.validate();
    CharacteristicData cd = characteristic_data(spec, prec);  // degenerate constant part throws
    if (cd.rho.is_zero()) throw std::domain_error("cert_poincare: rho = 0 (all characteristic roots vanish)");

    for (auto& psi : spec.perturbation)
        if (!psi.tends_to_zero())
            throw std::invalid_argument("cert_poincare: perturbation does not tend to zero (not Poincare class)");

    Param rho = rho_param_upper(spec, cd, prec);

    // N-hat: minimal n with |psi_j(k)| <= 2^d rho^j for ALL k > n (threshold
    // rounded down, so a hairline case only enlarges N-hat, never unsounds it).
    long nhat = 0;
    bool used_delta = spec.delta.has_value();
    if (used_delta) {
        BF two_d(Rat(2).pow(spec.d));
        long last = spec.delta->last_violation(spec.d, two_d);
        nhat = last < spec.d ? 0 : last;
    } else {
        for (int j = 1; j <= spec.d; ++j) {
            BF rho_dn = param_exact(rho) ? BF(std::get<Rat>(rho), MPFR_RNDD)
                                         : std::get<BF>(rho);
            BF thr = mul(BF(Rat(2).pow(spec.d)), pow_ui(rho_dn, static_cast<unsigned long>(j), MPFR_RNDD),
                         MPFR_RNDD);
            if (spec.perturbation.empty()) break;
            long last;
            try {
                last = spec.perturbation[static_cast<std::size_t>(j - 1)].last_violation(spec.d, thr);
            } catch (const SeqRule::Unbounded& e) {
                throw std::invalid_argument(std::string("cert_poincare: perturbation tail not certifiable: ") +
                                            e.what());
            }
            if (last >= spec.d) nhat = std::max(nhat, last);
        }
    }

    const long N = nhat + spec.d;
    Param R;
    if (param_exact(rho))
        R = Rat(1, 2).pow(spec.d + 3) / std::get<Rat>(rho);
    else
        R = div(BF::pow2(-(spec.d + 3)), std::get<BF>(rho), MPFR_RNDD);

    DominationCertificate cert;
    cert.N = static_cast<int>(N);
    cert.R = R;
    cert.s_rule = SRule::constant_rule(Rat(2).pow((spec.d + 3) * N));
    cert.prov.rule = used_delta ? "poincare-delta" : "poincare";
    cert.prov.detail = {{"d", std::to_string(spec.d)},
                        {"N_hat", std::to_string(nhat)},
                        {"rho", param_str(rho)},
                        {"N_hat_scan", "smallest nonnegative n (range start at 0)"}};
    return cert;
}

DominationCertificate cert_trivial(const CoefficientSequence& seq, const Param& R) {
    long N = -1;
    for (long k = 0; k < seq.size(); ++k)
        if (!seq[k].is_zero()) {
            N = k;
            break;
        }
    if (N < 0) throw std::domain_error("cert_trivial: identically zero sequence");

    Rat Rq = param_exact(R) ? std::get<Rat>(R) : rat_from_bf(std::get<BF>(R));
    if (Rq.sign() <= 0) throw std::invalid_argument("cert_trivial: R must be positive");

    DominationCertificate cert;
    cert.N = static_cast<int>(N);
    cert.R = Rq;
    cert.s_rule = tabulated_rule_from_sequence(seq, static_cast<int>(N), Rq);
    cert.prov.rule = "trivial";
    cert.prov.detail = {{"N", std::to_string(N)}, {"R", Rq.to_string()}};
    return cert;
}

DominationCertificate cert_lipschitz(const LipschitzFamilyConfig& cfg) {
    if (cfg.C.sign() <= 0) throw std::invalid_argument("cert_lipschitz: C must be positive");
    Rat C = cfg.C < Rat(1) ? Rat(1) : cfg.C;

    DominationCertificate cert;
    cert.N = cfg.d;
    cert.R = cfg.C.inv();
    cert.s_rule = SRule::constant_rule(C.pow(cfg.d));
    cert.prov.rule = "lipschitz";
    cert.prov.detail = {{"d", std::to_string(cfg.d)}, {"C", cfg.C.to_string()}};
    return cert;
}

SRule tabulated_rule_from_sequence(const CoefficientSequence& seq, int N, const Rat& R) {
    if (R.sign() <= 0) throw std::invalid_argument("tabulated_rule_from_sequence: R must be positive");
    if (seq.size() <= N) throw std::invalid_argument("tabulated_rule_from_sequence: sequence shorter than N");
    Rat M(0), Ri(1);
    for (long i = 0; i <= N; ++i) {
        Rat t = seq[i].abs() * Ri;
        if (t > M) M = t;
        Ri *= R;
    }
    if (M.is_zero()) throw std::domain_error("tabulated_rule_from_sequence: a_0..a_N all vanish");
    std::vector<Rat> table;
    Rat Rk = Ri;  // R^{N+1}
    for (long k = N + 1; k < seq.size(); ++k) {
        table.push_back(seq[k].abs() * Rk / M);
        Rk *= R;
    }
    return SRule::tabulated_rule(N + 1, std::move(table));
}

}  // namespace taydom
