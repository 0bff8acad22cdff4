#include "taydom/bautin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "taydom/domination.hpp"

namespace taydom {

bool ParametricRecurrence::linear() const {
    for (auto& st : stages)
        for (auto& t : st.terms) {
            long deg = 0;
            for (auto e : t.u_exp) deg += e;
            if (deg != 1) return false;
            for (auto& [be, c] : t.coeff.terms()) {
                long bd = 0;
                for (auto v : be) bd += v;
                if (bd != 1) return false;
            }
        }
    return true;
}

void ParametricRecurrence::validate() const {
    if (d < 1) throw std::invalid_argument("ParametricRecurrence: d >= 1 required");
    if (stages.empty()) throw std::invalid_argument("ParametricRecurrence: at least one stage");
    for (auto& st : stages)
        for (auto& t : st.terms) {
            if (static_cast<int>(t.u_exp.size()) != d)
                throw std::invalid_argument("ParametricRecurrence: u-exponent length != d");
            if (t.coeff.nvars() != nparams)
                throw std::invalid_argument("ParametricRecurrence: coefficient arity != nparams");
            long deg = 0;
            for (auto e : t.u_exp) deg += e;
            if (deg < 1)
                throw std::invalid_argument("ParametricRecurrence: u-constant term detected (|alpha| >= 1 required)");
        }
}

ParametricSeries generate_parametric(const ParametricRecurrence& rec, const std::vector<MultiPoly>& init,
                                     long K) {
    rec.validate();
    if (static_cast<int>(init.size()) != rec.d)
        throw std::invalid_argument("generate_parametric: init must have length d");
    for (auto& p : init)
        if (p.nvars() != rec.nparams) throw std::invalid_argument("generate_parametric: init arity mismatch");

    ParametricSeries ps;
    ps.nparams = rec.nparams;
    ps.a = init;
    ps.a.reserve(static_cast<std::size_t>(K) + 1);
    for (long k = rec.d; k <= K; ++k) {
        MultiPoly acc(rec.nparams);
        for (auto& term : rec.stage(k).terms) {
            MultiPoly prod = term.coeff;
            for (int j = 1; j <= rec.d; ++j) {
                auto e = term.u_exp[static_cast<std::size_t>(j - 1)];
                if (e) prod = prod * ps.a[static_cast<std::size_t>(k - j)].pow(e);
            }
            acc = acc + prod;
        }
        ps.a.push_back(std::move(acc));
    }
    ps.provenance = "parametric recurrence d=" + std::to_string(rec.d);
    return ps;
}

IdealWitness ideal_witness(const ParametricRecurrence& rec, const std::vector<MultiPoly>& init, long K) {
    rec.validate();
    ParametricSeries ps = generate_parametric(rec, init, K);

    IdealWitness w;
    w.claimed_index = rec.d - 1;
    w.generators.assign(ps.a.begin(), ps.a.begin() + rec.d);

    // psi_i^k for k < d is the Kronecker delta; kept implicitly.
    std::vector<std::vector<MultiPoly>> psi;  // psi[k][i] for all k (delta rows for k < d)
    for (int k = 0; k < rec.d; ++k) {
        std::vector<MultiPoly> row(static_cast<std::size_t>(rec.d), MultiPoly(rec.nparams));
        row[static_cast<std::size_t>(k)] = MultiPoly::constant(rec.nparams, Rat(1));
        psi.push_back(std::move(row));
    }

    for (long k = rec.d; k <= K; ++k) {
        std::vector<MultiPoly> row(static_cast<std::size_t>(rec.d), MultiPoly(rec.nparams));
        for (auto& term : rec.stage(k).terms) {
            // pick the first factor with a positive exponent; expand it via
            // its own witness and keep the rest as an explicit polynomial
            int jstar = 0;
            for (int j = 1; j <= rec.d; ++j)
                if (term.u_exp[static_cast<std::size_t>(j - 1)] > 0) {
                    jstar = j;
                    break;
                }
            MultiPoly rest = term.coeff;
            for (int j = 1; j <= rec.d; ++j) {
                auto e = term.u_exp[static_cast<std::size_t>(j - 1)];
                if (j == jstar) e -= 1;
                if (e) rest = rest * ps.a[static_cast<std::size_t>(k - j)].pow(e);
            }
            auto& prev = psi[static_cast<std::size_t>(k - jstar)];
            for (int i = 0; i < rec.d; ++i) {
                if (prev[static_cast<std::size_t>(i)].is_zero()) continue;
                row[static_cast<std::size_t>(i)] =
                    row[static_cast<std::size_t>(i)] + prev[static_cast<std::size_t>(i)] * rest;
            }
        }

        // witness identity, asserted exactly
        MultiPoly recon(rec.nparams);
        for (int i = 0; i < rec.d; ++i)
            recon = recon + row[static_cast<std::size_t>(i)] * w.generators[static_cast<std::size_t>(i)];
        if (!(recon == ps.a[static_cast<std::size_t>(k)]))
            throw std::logic_error("ideal_witness: witness identity failed at k=" + std::to_string(k));

        w.cofactors.push_back(row);
        psi.push_back(std::move(row));
    }
    return w;
}

namespace {

/// Smallest "nice" rational r with r^k >= v, via continued-fraction
/// reconstruction of the k-th root (verified exactly), falling back to an
/// up-rounded dyadic.
Rat kth_root_upper(const Rat& v, long k) {
    if (v.sign() < 0) throw std::invalid_argument("kth_root_upper: negative value");
    if (v.is_zero()) return Rat(0);
    BF r = exp(div(log(BF(v, MPFR_RNDU), MPFR_RNDU), BF(k), MPFR_RNDU), MPFR_RNDU);
    double rd = r.to_double();
    // try small-denominator candidates near rd
    long long p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    double x = rd;
    for (int it = 0; it < 40; ++it) {
        double fl = std::floor(x);
        if (fl > 1e12) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 100000 || q2 <= 0) break;
        p0 = p1, p1 = p2, q0 = q1, q1 = q2;
        if (p1 >= 0) {
            Rat cand(static_cast<long>(p1), static_cast<long>(q1));
            if (cand.pow(k) >= v && std::abs(cand.to_double() - rd) < 1e-9 * (1.0 + rd)) return cand;
        }
        double frac = x - fl;
        if (frac < 1e-13) break;
        x = 1.0 / frac;
    }
    Rat dy = rat_from_bf(mul(r, BF(1.0) + BF::pow2(-80), MPFR_RNDU));
    return dy;
}

}  // namespace

A0Profile a0_profile(const ParametricSeries& ps) {
    if (ps.size() < 5) throw std::invalid_argument("a0_profile: need K >= 4");
    A0Profile prof;

    long d0 = ps.a[0].is_zero() ? 0 : ps.a[0].total_degree();
    Rat K1(0);
    for (long k = 1; k < ps.size(); ++k) {
        if (ps.a[static_cast<std::size_t>(k)].is_zero()) continue;
        Rat slope = Rat(ps.a[static_cast<std::size_t>(k)].total_degree() - d0) / Rat(k);
        if (slope > K1) K1 = slope;
    }
    Rat K2(0);
    for (long k = 0; k < ps.size(); ++k) {
        if (ps.a[static_cast<std::size_t>(k)].is_zero()) continue;
        Rat excess = Rat(ps.a[static_cast<std::size_t>(k)].total_degree()) - K1 * Rat(k);
        if (excess > K2) K2 = excess;
    }
    prof.K1 = K1;
    prof.K2 = K2;

    Rat K4(1);
    Rat n0 = ps.a[0].norm_max();
    Rat base = n0 > Rat(1) ? n0 : Rat(1);
    for (long k = 1; k < ps.size(); ++k) {
        Rat nk = ps.a[static_cast<std::size_t>(k)].norm_max();
        if (nk.is_zero()) continue;
        Rat root = kth_root_upper(nk / base, k);
        if (root > K4) K4 = root;
    }
    Rat K3 = n0;
    if (K3 < Rat(1)) K3 = Rat(1);
    for (long k = 1; k < ps.size(); ++k) {
        Rat nk = ps.a[static_cast<std::size_t>(k)].norm_max();
        if (nk.is_zero()) continue;
        Rat need = nk / K4.pow(k);
        if (need > K3) K3 = need;
    }
    prof.K3 = K3;
    prof.K4 = K4;

    // both fitted bounds must actually hold on the generated data
    for (long k = 0; k < ps.size(); ++k) {
        const auto& ak = ps.a[static_cast<std::size_t>(k)];
        if (ak.is_zero()) continue;
        if (Rat(ak.total_degree()) > prof.K1 * Rat(k) + prof.K2)
            throw std::logic_error("a0_profile: degree envelope violated");
        if (ak.norm_max() > prof.K3 * prof.K4.pow(k))
            throw std::logic_error("a0_profile: norm envelope violated");
    }
    return prof;
}

CoefficientIdentityReport coefficient_recurrence_check(const ParametricRecurrence& rec,
                                                       const ParametricSeries& ps) {
    rec.validate();
    if (!rec.linear()) throw std::invalid_argument("coefficient_recurrence_check: linear subclass required");

    CoefficientIdentityReport rep;
    rep.ok = true;
    const int n = rec.nparams;

    for (long k = rec.d; k < ps.size(); ++k) {
        // candidate multi-indices: the support of a_k plus every beta[i]+e_i
        // reachable from the supports of a_{k-1}..a_{k-d}
        std::map<MultiPoly::Exp, bool> candidates;
        for (auto& [be, c] : ps.a[static_cast<std::size_t>(k)].terms()) candidates[be] = true;
        for (int j = 1; j <= rec.d; ++j)
            for (auto& [be, c] : ps.a[static_cast<std::size_t>(k - j)].terms())
                for (int i = 0; i < n; ++i) {
                    MultiPoly::Exp up = be;
                    up[static_cast<std::size_t>(i)] += 1;
                    candidates[up] = true;
                }

        // A_{k,j,i} from the stage coefficients
        std::vector<std::vector<Rat>> A(static_cast<std::size_t>(rec.d),
                                        std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
        for (auto& term : rec.stage(k).terms) {
            int j = 0;
            for (int jj = 1; jj <= rec.d; ++jj)
                if (term.u_exp[static_cast<std::size_t>(jj - 1)] == 1) j = jj;
            for (auto& [be, c] : term.coeff.terms())
                for (int i = 0; i < n; ++i)
                    if (be[static_cast<std::size_t>(i)] == 1) A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] += c;
        }

        for (auto& [beta, _] : candidates) {
            Rat lhs = ps.a[static_cast<std::size_t>(k)].coeff(beta);
            Rat rhs(0);
            for (int j = 1; j <= rec.d; ++j)
                for (int i = 0; i < n; ++i) {
                    if (A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)].is_zero()) continue;
                    if (beta[static_cast<std::size_t>(i)] == 0) continue;
                    MultiPoly::Exp down = beta;
                    down[static_cast<std::size_t>(i)] -= 1;
                    rhs += A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] *
                           ps.a[static_cast<std::size_t>(k - j)].coeff(down);
                }
            ++rep.checked_coefficients;
            if (!(lhs == rhs)) rep.ok = false;
        }
        ++rep.checked_k;
    }
    return rep;
}

CoefficientSequence specialize(const ParametricSeries& ps, const std::vector<Rat>& lambda) {
    CoefficientSequence seq;
    seq.provenance = "specialized parametric series";
    seq.values.reserve(static_cast<std::size_t>(ps.size()));
    for (auto& p : ps.a) seq.values.push_back(p.eval(lambda));
    return seq;
}

UniformCReport specialize_and_certify(const ParametricSeries& ps, int d,
                                      const std::vector<std::vector<Rat>>& lambda_samples, const Rat& R) {
    if (R.sign() <= 0) throw std::invalid_argument("specialize_and_certify: R must be positive");
    UniformCReport rep;
    rep.N = d - 1;  // the Bautin index of a length-d recurrence series
    rep.R = R;
    rep.horizon = ps.size() - 1;
    rep.C_sup = Rat(0);

    for (auto& lam : lambda_samples) {
        SpecializationSample smp;
        smp.lambda = lam;
        CoefficientSequence seq = specialize(ps, lam);
        Rat M(0), Ri(1);
        for (long i = 0; i <= rep.N && i < seq.size(); ++i) {
            Rat t = seq[i].abs() * Ri;
            if (t > M) M = t;
            Ri *= R;
        }
        if (M.is_zero()) {
            bool tail_nonzero = false;
            for (long k = rep.N + 1; k < seq.size(); ++k)
                if (!seq[k].is_zero()) tail_nonzero = true;
            if (tail_nonzero) {
                smp.zero_locus = true;  // the ideal's zero set: excluded and counted
                ++rep.zero_locus_count;
                rep.samples.push_back(std::move(smp));
                continue;
            }
            smp.C_min = Rat(0);
            rep.samples.push_back(std::move(smp));
            continue;
        }
        Rat C(0), Rk = Ri;
        for (long k = rep.N + 1; k < seq.size(); ++k) {
            Rat c = seq[k].abs() * Rk / M;
            if (c > C) C = c;
            Rk *= R;
        }
        smp.C_min = C;
        if (C > rep.C_sup) rep.C_sup = C;
        rep.samples.push_back(std::move(smp));
    }
    return rep;
}

}  // namespace taydom
