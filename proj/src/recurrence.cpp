#include "taydom/recurrence.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>

namespace taydom {

RecurrenceSpec RecurrenceSpec::constant(std::vector<Rat> c) {
    RecurrenceSpec s;
    s.d = static_cast<int>(c.size());
    s.constant_part = std::move(c);
    return s;
}

bool RecurrenceSpec::perturbation_is_zero() const {
    for (auto& p : perturbation)
        if (!p.is_zero_rule()) return false;
    return true;
}

bool RecurrenceSpec::constant_part_is_zero() const {
    for (auto& c : constant_part)
        if (!c.is_zero()) return false;
    return true;
}

Rat RecurrenceSpec::coefficient(int j, long k) const {
    Rat c = constant_part[static_cast<std::size_t>(j - 1)];
    if (!perturbation.empty()) c += perturbation[static_cast<std::size_t>(j - 1)].eval(k);
    return c;
}

PolyQ RecurrenceSpec::characteristic_poly() const {
    std::vector<Rat> c(static_cast<std::size_t>(d) + 1, Rat(0));
    c[static_cast<std::size_t>(d)] = Rat(1);
    for (int j = 1; j <= d; ++j) c[static_cast<std::size_t>(d - j)] = -constant_part[static_cast<std::size_t>(j - 1)];
    return PolyQ(std::move(c), "s");
}

void RecurrenceSpec::validate() const {
    if (d < 1) throw std::invalid_argument("RecurrenceSpec: d >= 1 required");
    if (static_cast<int>(constant_part.size()) != d)
        throw std::invalid_argument("RecurrenceSpec: constant part must have length d");
    if (!perturbation.empty() && static_cast<int>(perturbation.size()) != d)
        throw std::invalid_argument("RecurrenceSpec: perturbation must have length d (or be empty)");
}

bool CoefficientSequence::all_zero() const {
    for (auto& v : values)
        if (!v.is_zero()) return false;
    return true;
}

CoefficientSequence generate(const RecurrenceSpec& spec, const std::vector<Rat>& init, long horizon) {
    spec.validate();
    if (static_cast<int>(init.size()) != spec.d)
        throw std::invalid_argument("generate: init must have length d");
    if (horizon < spec.d) throw std::invalid_argument("generate: horizon must be >= d");

    CoefficientSequence seq;
    seq.values = init;
    seq.values.reserve(static_cast<std::size_t>(horizon) + 1);
    for (long k = spec.d; k <= horizon; ++k) {
        Rat acc(0);
        for (int j = 1; j <= spec.d; ++j) acc += spec.coefficient(j, k) * seq.values[static_cast<std::size_t>(k - j)];
        seq.values.push_back(std::move(acc));
    }
    seq.provenance = "recurrence d=" + std::to_string(spec.d);

    if (spec.declared_bounds) {
        // Declared bounds are a promise about every k; verify them over the
        // generated horizon so a bad declaration cannot silently produce an
        // unsound certificate downstream.
        const Rat& K = spec.declared_bounds->K;
        const Rat& rho = spec.declared_bounds->rho;
        for (long k = spec.d; k <= horizon; ++k)
            for (int j = 1; j <= spec.d; ++j)
                if (spec.coefficient(j, k).abs() > K * rho.pow(j))
                    throw std::runtime_error("generate: declared bounds violated at k=" + std::to_string(k) +
                                             ", j=" + std::to_string(j));
    }
    return seq;
}

CharacteristicData characteristic_data(const RecurrenceSpec& spec, unsigned prec) {
    spec.validate();
    if (spec.constant_part_is_zero())
        throw std::domain_error("characteristic_data: degenerate spec (constant part is zero)");
    CharacteristicData cd{poly_roots(spec.characteristic_poly(), prec), BF(0.0)};
    cd.rho = cd.roots.max_modulus();
    return cd;
}

RadiusEstimate radius_estimate(const CoefficientSequence& seq, long window, const RootSet* match_against) {
    if (window < 1 || seq.size() <= window)
        throw std::invalid_argument("radius_estimate: sequence shorter than the window");
    RadiusEstimate out;
    out.window = window;

    const long K = seq.size() - 1;
    std::vector<double> ks, ys;
    for (long k = K - window + 1; k <= K; ++k) {
        if (seq[k].is_zero()) continue;
        BF la = log(BF(seq[k].abs(), MPFR_RNDN), MPFR_RNDN);
        ks.push_back(static_cast<double>(k));
        ys.push_back(la.to_double());
    }
    if (ks.empty()) {
        out.eventually_zero = true;
        out.estimate = BF(0.0);
        return out;
    }

    if (ks.size() < 8) {
        // too few points for a fit: fall back to the plain k-th root maximum
        BF best(0.0);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            BF est = exp(BF(ys[i] / ks[i]), MPFR_RNDN);
            if (est > best) best = est;
        }
        out.estimate = best;
    } else {
        // Solutions behave like A u(k) k^gamma rho^k with u a bounded
        // oscillation (conjugate roots give |cos(k theta + ...)| factors) and
        // k^gamma the transient of 1/k perturbations; the plain k-th root
        // converges only at rate gamma*log(k)/k. Sum |a_k| over blocks of 10
        // (oscillation and parity structure average into the intercept), then
        // fit ln z_m = c + s k_m + gamma ln k_m and report e^s.
        const long L = 10;
        std::vector<double> bk, bz;
        for (long lo = K - window + 1; lo + L - 1 <= K; lo += L) {
            Rat z(0);
            for (long k = lo; k < lo + L; ++k) z += seq[k].abs();
            if (z.is_zero()) continue;
            bk.push_back(static_cast<double>(lo) + 0.5 * static_cast<double>(L - 1));
            bz.push_back(log(BF(z, MPFR_RNDN), MPFR_RNDN).to_double());
        }
        double slope = std::nan("");
        if (bk.size() >= 4) {
            double s11 = static_cast<double>(bk.size());
            double s1k = 0, s1l = 0, skk = 0, skl = 0, sll = 0, sy1 = 0, syk = 0, syl = 0;
            for (std::size_t i = 0; i < bk.size(); ++i) {
                double k = bk[i], l = std::log(bk[i]), y = bz[i];
                s1k += k;
                s1l += l;
                skk += k * k;
                skl += k * l;
                sll += l * l;
                sy1 += y;
                syk += y * k;
                syl += y * l;
            }
            double a[3][3] = {{s11, s1k, s1l}, {s1k, skk, skl}, {s1l, skl, sll}};
            double b[3] = {sy1, syk, syl};
            auto det3 = [](double m[3][3]) {
                return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            };
            double D = det3(a);
            if (D != 0 && std::isfinite(D)) {
                double as[3][3];
                for (int r = 0; r < 3; ++r)
                    for (int c2 = 0; c2 < 3; ++c2) as[r][c2] = a[r][c2];
                for (int r = 0; r < 3; ++r) as[r][1] = b[r];
                slope = det3(as) / D;
            }
        }
        if (std::isfinite(slope)) {
            out.estimate = exp(BF(slope), MPFR_RNDN);
        } else {
            BF best(0.0);
            for (std::size_t i = 0; i < ks.size(); ++i) {
                BF est = exp(BF(ys[i] / ks[i]), MPFR_RNDN);
                if (est > best) best = est;
            }
            out.estimate = best;
        }
    }

    if (match_against) {
        double e = out.estimate.to_double();
        double best_gap = -1, best_mod = 0;
        for (auto& r : match_against->roots) {
            double m = r.value.abs().to_double();
            if (m == 0.0) continue;
            double gap = std::abs(e - m) / m;
            if (best_gap < 0 || gap < best_gap) {
                best_gap = gap;
                best_mod = m;
            }
        }
        if (best_gap >= 0) {
            out.has_match = true;
            out.matched_root_modulus = best_mod;
            out.relative_gap = best_gap;
        }
    }
    return out;
}

FitResult fit_bounded_recurrence(const CoefficientSequence& seq, int d, const Rat& rho) {
    if (d < 1) throw std::invalid_argument("fit_bounded_recurrence: d >= 1 required");
    if (seq.size() <= d) throw std::invalid_argument("fit_bounded_recurrence: sequence too short");
    if (rho.sign() <= 0) throw std::invalid_argument("fit_bounded_recurrence: rho must be positive");

    FitResult res;
    const long K = seq.size() - 1;
    std::vector<std::vector<Rat>> table(static_cast<std::size_t>(d));  // per j, values for k=d..K

    for (long k = d; k <= K; ++k) {
        // Minimum-norm c with  a_k = sum_j c_j a_{k-j}:  c_j = a_k a_{k-j} / sum_i a_{k-i}^2.
        Rat denom(0);
        for (int i = 1; i <= d; ++i) denom += seq[k - i] * seq[k - i];
        if (denom.is_zero()) {
            if (!seq[k].is_zero()) {
                res.ok = false;
                res.failure_k = k;
                return res;
            }
            for (int j = 1; j <= d; ++j) table[static_cast<std::size_t>(j - 1)].push_back(Rat(0));
            continue;
        }
        Rat scale = seq[k] / denom;
        for (int j = 1; j <= d; ++j)
            table[static_cast<std::size_t>(j - 1)].push_back(scale * seq[k - j]);
    }

    res.ok = true;
    res.spec.d = d;
    res.spec.constant_part.assign(static_cast<std::size_t>(d), Rat(0));
    res.profile_max = BF(0.0);
    for (int j = 1; j <= d; ++j) {
        auto& vals = table[static_cast<std::size_t>(j - 1)];
        Rat sup(0);
        for (auto& v : vals) {
            Rat a = v.abs();
            if (a > sup) sup = a;
        }
        res.spec.perturbation.push_back(SeqRule::tabulated(d, vals, std::nullopt));
        BF p = BF(sup / rho.pow(j), MPFR_RNDN);
        res.profile.push_back(p);
        if (p > res.profile_max) res.profile_max = p;
    }
    return res;
}

LipschitzSequence generate_lipschitz(const LipschitzFamilyConfig& cfg, const std::vector<CF>& w,
                                     long horizon) {
    if (cfg.d < 0 || static_cast<int>(w.size()) != cfg.d + 1)
        throw std::invalid_argument("generate_lipschitz: w must have length d+1");
    if (cfg.C.sign() <= 0) throw std::invalid_argument("generate_lipschitz: C must be positive");

    BF norm2(0.0);
    for (auto& wi : w) norm2 += wi.abs2();
    BF norm = sqrt(norm2, MPFR_RNDN);
    if (norm > BF(cfg.delta, MPFR_RNDU)) throw std::invalid_argument("generate_lipschitz: |w| > delta");

    LipschitzSequence out;
    out.values = w;
    BF C(cfg.C, MPFR_RNDN);
    BF growth = pow_ui(C, static_cast<unsigned long>(cfg.d + 1), MPFR_RNDN);
    for (long k = cfg.d + 1; k <= horizon; ++k) {
        CF a = cfg.phi(k, w);
        // growth holds C^k at this point
        if (a.abs() > growth * norm * BF(1.0 + 1e-30)) {
            out.bound_ok = false;
            if (out.first_violation < 0) out.first_violation = k;
        }
        out.values.push_back(std::move(a));
        growth = growth * C;
    }
    return out;
}

}  // namespace taydom
