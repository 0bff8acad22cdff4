#include "taydom/dfinite.hpp"

#include <algorithm>
#include <map>

namespace taydom {

long DifferentialOperator::alpha() const {
    long a = 0;
    bool first = true;
    for (int j = 0; j <= n; ++j) {
        if (p[static_cast<std::size_t>(j)].is_zero()) continue;
        long aj = alpha_j(j);
        if (first || aj > a) a = aj;
        first = false;
    }
    return a;
}

void DifferentialOperator::validate() const {
    if (n < 0 || static_cast<int>(p.size()) != n + 1)
        throw std::invalid_argument("DifferentialOperator: need p_0..p_n");
    if (p.back().is_zero()) throw std::invalid_argument("DifferentialOperator: p_n must be nonzero");
}

PolyQ apply(const DifferentialOperator& op, const PolyQ& f) {
    PolyQ out;
    PolyQ df = f;
    for (int j = 0; j <= op.n; ++j) {
        out = out + op.p[static_cast<std::size_t>(j)] * df;
        df = df.derivative();
    }
    return out;
}

void PiecewiseData::validate(int n) const {
    if (points.size() < 2) throw std::invalid_argument("PiecewiseData: need both endpoints");
    if (!(points.front().x == a) || !(points.back().x == b))
        throw std::invalid_argument("PiecewiseData: endpoints must match the interval");
    for (std::size_t s = 0; s + 1 < points.size(); ++s)
        if (!(points[s].x < points[s + 1].x))
            throw std::invalid_argument("PiecewiseData: jump points must be strictly increasing");
    for (auto& pt : points)
        if (static_cast<int>(pt.left.size()) < n || static_cast<int>(pt.right.size()) < n)
            throw std::invalid_argument("PiecewiseData: need one-sided derivatives up to order n-1");
}

Rat EpsilonRule::eval(long k) const {
    Rat acc(0);
    for (auto& t : terms) acc += t.x.pow(k) * t.w.eval(Rat(k));
    for (auto& [idx, v] : corrections)
        if (idx == k) acc += v;
    return acc;
}

MomentRecurrence moment_recurrence(const DifferentialOperator& op) {
    op.validate();
    MomentRecurrence mr;
    mr.n = op.n;
    mr.alpha = op.alpha();
    mr.q.assign(static_cast<std::size_t>(mr.alpha + op.n + 1), PolyQ());

    PolyQ kpoly({Rat(0), Rat(1)}, "k");
    for (int j = 0; j <= op.n; ++j) {
        const PolyQ& pj = op.p[static_cast<std::size_t>(j)];
        for (long i = 0; i <= pj.degree(); ++i) {
            Rat a_ij = pj.coeff(static_cast<std::size_t>(i));
            if (a_ij.is_zero()) continue;
            long ell = i - j;
            if (ell < -op.n || ell > mr.alpha) throw std::logic_error("moment_recurrence: ell out of range");
            Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
            PolyQ contrib = (a_ij * sign) * falling_factorial(kpoly + PolyQ::constant(Rat(i)), j);
            mr.q[static_cast<std::size_t>(ell + op.n)] = mr.q[static_cast<std::size_t>(ell + op.n)] + contrib;
        }
    }
    return mr;
}

Rat MomentRecurrence::lhs(const std::vector<Rat>& moments, long k) const {
    Rat acc(0);
    for (long ell = -n; ell <= alpha; ++ell) {
        const PolyQ& qp = q_of(ell);
        if (qp.is_zero()) continue;
        Rat coeff = qp.eval(Rat(k));
        if (k + ell < 0) {
            // the falling factorial vanishes exactly whenever the moment
            // index would be negative
            if (!coeff.is_zero()) throw std::logic_error("MomentRecurrence: nonzero weight at negative index");
            continue;
        }
        if (k + ell >= static_cast<long>(moments.size()))
            throw std::invalid_argument("MomentRecurrence::lhs: moment sequence too short");
        acc += coeff * moments[static_cast<std::size_t>(k + ell)];
    }
    return acc;
}

EpsilonRule epsilon_rule(const DifferentialOperator& op, const PiecewiseData& pw) {
    op.validate();
    pw.validate(op.n);

    EpsilonRule rule;
    PolyQ kpoly({Rat(0), Rat(1)}, "k");
    std::map<long, Rat> corr;

    for (auto& pt : pw.points) {
        // J_i = g^{(i)}(x^-) - g^{(i)}(x^+)
        std::vector<Rat> J(static_cast<std::size_t>(op.n), Rat(0));
        bool all_zero = true;
        for (int i = 0; i < op.n; ++i) {
            J[static_cast<std::size_t>(i)] =
                pt.left[static_cast<std::size_t>(i)] - pt.right[static_cast<std::size_t>(i)];
            all_zero = all_zero && J[static_cast<std::size_t>(i)].is_zero();
        }
        if (all_zero) continue;

        if (pt.x.is_zero()) {
            // (x^k p_j)^{(t)}(0) = sum_u C(t,u) k(k-1)..(k-u+1) [k = u] p_j^{(t-u)}(0)
            for (int j = 1; j <= op.n; ++j) {
                std::vector<PolyQ> pder{op.p[static_cast<std::size_t>(j)]};
                for (int t = 1; t < j; ++t) pder.push_back(pder.back().derivative());
                for (int t = 0; t < j; ++t)
                    for (int u = 0; u <= t; ++u) {
                        Rat pval = pder[static_cast<std::size_t>(t - u)].eval(Rat(0));
                        if (pval.is_zero()) continue;
                        Rat sign = (t % 2 == 0) ? Rat(-1) : Rat(1);  // minus folds eps = -boundary
                        Rat fact(1);
                        for (int v = 2; v <= u; ++v) fact *= Rat(v);
                        corr[u] += sign * binomial(t, u) * fact * pval * J[static_cast<std::size_t>(j - 1 - t)];
                    }
            }
            continue;
        }

        PolyQ w;
        for (int j = 1; j <= op.n; ++j) {
            std::vector<PolyQ> pder{op.p[static_cast<std::size_t>(j)]};
            for (int t = 1; t < j; ++t) pder.push_back(pder.back().derivative());
            for (int t = 0; t < j; ++t)
                for (int u = 0; u <= t; ++u) {
                    Rat pval = pder[static_cast<std::size_t>(t - u)].eval(pt.x);
                    if (pval.is_zero()) continue;
                    Rat sign = (t % 2 == 0) ? Rat(-1) : Rat(1);
                    Rat c = sign * binomial(t, u) * pt.x.pow(-static_cast<long>(u)) * pval *
                            J[static_cast<std::size_t>(j - 1 - t)];
                    w = w + c * falling_factorial(kpoly, u);
                }
        }
        if (!w.is_zero()) rule.terms.push_back({pt.x, w});
    }

    for (auto& [idx, v] : corr)
        if (!v.is_zero()) rule.corrections.emplace_back(idx, v);
    return rule;
}

OperatorAnalysis analyze_operator(const DifferentialOperator& op, const PiecewiseData& pw, unsigned prec) {
    op.validate();
    pw.validate(op.n);

    OperatorAnalysis out;
    out.alpha = op.alpha();
    out.tau = static_cast<long>(op.n) * (pw.jumps() + 2);
    out.poincare_ok = true;
    for (int j = 0; j <= op.n; ++j) {
        if (op.p[static_cast<std::size_t>(j)].is_zero()) continue;
        if (op.alpha_j(j) > op.alpha_j(op.n)) out.poincare_ok = false;
    }

    MomentRecurrence mr = moment_recurrence(op);
    out.indicial = mr.q_of(out.alpha);
    auto lam = largest_positive_integer_root(out.indicial);
    out.Lambda = lam.value_or(0);

    if (op.p.back().degree() >= 1) {
        RootSet rs = poly_roots(op.p.back(), prec);
        for (auto& r : rs.roots)
            for (int m = 0; m < r.multiplicity; ++m) out.Z_A.push_back(r.value);
    }
    for (auto& pt : pw.points) out.Z_A.push_back(CF(BF(pt.x), BF(0.0)));
    return out;
}

MomentSystem companion_system(const DifferentialOperator& op, const PiecewiseData& pw) {
    op.validate();
    pw.validate(op.n);

    MomentSystem sys;
    sys.n = op.n;
    sys.rec = moment_recurrence(op);
    sys.eps = epsilon_rule(op, pw);
    sys.alpha = sys.rec.alpha;
    sys.tau = static_cast<long>(op.n) * (pw.jumps() + 2);
    sys.mdim = sys.alpha + op.n;
    sys.dim = sys.mdim + sys.tau;
    if (sys.mdim < 0) throw std::domain_error("companion_system: alpha + n < 0");

    OperatorAnalysis an = analyze_operator(op, pw);
    sys.poincare_ok = an.poincare_ok;

    // annihilator of eps: prod_s (E - x_s)^n, monic of degree tau
    PolyQ ann = PolyQ::constant(Rat(1));
    for (auto& pt : pw.points) ann = ann * PolyQ({-pt.x, Rat(1)}, "E").pow(static_cast<unsigned long>(op.n));
    sys.annihilator = ann.coeffs();
    if (static_cast<long>(sys.annihilator.size()) != sys.tau + 1)
        throw std::logic_error("companion_system: annihilator degree != tau");

    // Constant part A: shifts, the limit row of the m-advance, and the
    // (exactly constant) eps companion rows.
    sys.A = MatQ(static_cast<std::size_t>(sys.dim), static_cast<std::size_t>(sys.dim));
    for (long i = 0; i + 1 < sys.mdim; ++i) sys.A.at(i, i + 1) = Rat(1);
    if (sys.mdim > 0) {
        const PolyQ& qa = sys.rec.q_of(sys.alpha);
        Rat lead_qa = qa.coeff(static_cast<std::size_t>(op.n));  // k^n coefficient
        if (!lead_qa.is_zero()) {
            for (long ell = -op.n; ell < sys.alpha; ++ell) {
                Rat lead = sys.rec.q_of(ell).coeff(static_cast<std::size_t>(op.n));
                if (!lead.is_zero())
                    sys.A.at(sys.mdim - 1, ell + op.n) = -(lead / lead_qa);
            }
        }
        // the eps coupling decays to zero; it lives entirely in B(k)
    }
    for (long i = 0; i + 1 < sys.tau; ++i) sys.A.at(sys.mdim + i, sys.mdim + i + 1) = Rat(1);
    for (long t = 0; t < sys.tau; ++t)
        sys.A.at(sys.dim - 1, sys.mdim + t) = -sys.annihilator[static_cast<std::size_t>(t)];
    return sys;
}

MatQ MomentSystem::step_matrix(long k) const {
    MatQ M(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (long i = 0; i + 1 < mdim; ++i) M.at(i, i + 1) = Rat(1);
    if (mdim > 0) {
        Rat qa = rec.q_of(alpha).eval(Rat(k));
        if (qa.is_zero())
            throw std::domain_error("MomentSystem: q_alpha vanishes at k=" + std::to_string(k) +
                                    " (indicial root); one-step advance undefined");
        for (long ell = -n; ell < alpha; ++ell)
            M.at(mdim - 1, ell + n) = -(rec.q_of(ell).eval(Rat(k)) / qa);
        M.at(mdim - 1, mdim) = qa.inv();  // eps_k enters the top moment row
    }
    for (long i = 0; i + 1 < tau; ++i) M.at(mdim + i, mdim + i + 1) = Rat(1);
    for (long t = 0; t < tau; ++t) M.at(dim - 1, mdim + t) = -annihilator[static_cast<std::size_t>(t)];
    return M;
}

MatQ MomentSystem::B(long k) const { return step_matrix(k) - A; }

std::vector<Rat> MomentSystem::state(const std::vector<Rat>& moments, long k) const {
    if (k < n) throw std::invalid_argument("MomentSystem::state: k >= n required");
    if (k + alpha - 1 >= static_cast<long>(moments.size()))
        throw std::invalid_argument("MomentSystem::state: moment sequence too short");
    std::vector<Rat> w;
    w.reserve(static_cast<std::size_t>(dim));
    for (long i = 0; i < mdim; ++i) w.push_back(moments[static_cast<std::size_t>(k - n + i)]);
    for (long t = 0; t < tau; ++t) w.push_back(eps.eval(k + t));
    return w;
}

FuchsianReport fuchsian_check(const DifferentialOperator& op, unsigned prec) {
    op.validate();
    FuchsianReport rep;
    rep.regular_at_infinity = true;
    for (int j = 0; j <= op.n; ++j) {
        if (op.p[static_cast<std::size_t>(j)].is_zero()) continue;
        if (op.alpha_j(j) > op.alpha_j(op.n)) rep.regular_at_infinity = false;
    }
    rep.fuchsian = rep.regular_at_infinity;

    const PolyQ& pn = op.p.back();
    if (pn.degree() >= 1) {
        RootSet rs = poly_roots(pn, prec);
        for (auto& root : rs.roots) {
            auto xi = rational_root_near(pn, root.value);
            if (xi) {
                long mn = order_at(pn, *xi);
                for (int j = 0; j < op.n; ++j) {
                    const PolyQ& pj = op.p[static_cast<std::size_t>(j)];
                    if (pj.is_zero()) continue;
                    long oj = order_at(pj, *xi);
                    if (oj < mn - (op.n - j)) {
                        rep.fuchsian = false;
                        rep.notes.push_back("irregular singular point at x = " + xi->to_string());
                    }
                }
            } else {
                // numeric multiplicity test at an irrational singular point
                rep.notes.push_back("numeric regularity check at |x| ~= " +
                                    std::to_string(root.value.abs().to_double()));
                long mn = root.multiplicity;
                for (int j = 0; j < op.n; ++j) {
                    const PolyQ& pj = op.p[static_cast<std::size_t>(j)];
                    if (pj.is_zero()) continue;
                    long need = mn - (op.n - j);
                    PolyQ cur = pj;
                    for (long t = 0; t < need; ++t) {
                        std::vector<CF> cc;
                        for (auto& q : cur.coeffs()) cc.emplace_back(BF(q), BF(0.0));
                        CF val(0.0, 0.0);
                        if (!cc.empty()) {
                            val = cc.back();
                            for (std::size_t ii = cc.size() - 1; ii-- > 0;) val = val * root.value + cc[ii];
                        }
                        BF scale(1e-30);
                        if (val.abs() > scale) {
                            rep.fuchsian = false;
                            rep.notes.push_back("irregular (numeric) singular point");
                            break;
                        }
                        cur = cur.derivative();
                    }
                }
            }
        }
    }
    return rep;
}

VanishingBound vanishing_bound(const DifferentialOperator& op, const PiecewiseData& pw,
                               bool include_endpoints) {
    op.validate();
    pw.validate(op.n);
    FuchsianReport fr = fuchsian_check(op);
    if (!fr.fuchsian) {
        std::string why = "vanishing_bound: operator is not Fuchsian";
        for (auto& nte : fr.notes) why += "; " + nte;
        throw std::domain_error(why);
    }

    OperatorAnalysis an = analyze_operator(op, pw);
    const long dn = op.p.back().degree();

    // case 1 needs a genuine discontinuity of g (value jump) where p_n != 0
    bool case1 = false;
    const PolyQ& pn = op.p.back();
    for (std::size_t s = 0; s < pw.points.size(); ++s) {
        bool endpoint = (s == 0 || s + 1 == pw.points.size());
        if (endpoint && !include_endpoints) continue;
        const auto& pt = pw.points[s];
        Rat J0 = pt.left[0] - pt.right[0];
        if (J0.is_zero()) continue;
        if (!pn.eval(pt.x).is_zero()) {
            case1 = true;
            break;
        }
    }

    VanishingBound vb;
    if (case1) {
        vb.case_tag = 1;
        vb.bound = an.tau + dn - op.n;
        vb.note = "discontinuity with p_n(xi) != 0";
    } else {
        vb.case_tag = 2;
        vb.bound = an.Lambda + 1 + dn - op.n;
        vb.note = "indicial route, Lambda = " + std::to_string(an.Lambda);
    }
    return vb;
}

StieltjesParams stieltjes_params(const DifferentialOperator& op, const PiecewiseData& pw, unsigned prec) {
    OperatorAnalysis an = analyze_operator(op, pw, prec);
    StieltjesParams sp;
    sp.tau = an.tau;
    sp.Lambda = an.Lambda;
    const long dn = op.p.back().degree();
    sp.N = std::max(an.tau - 1, an.Lambda) + dn - op.n;
    if (sp.N < 0) sp.N = 0;

    // R* = min over nonzero xi in Z_A of 1/|xi| (zero spectrum points add no
    // constraint; see the module notes).
    bool found = false;
    BF best(0.0);
    for (auto& xi : an.Z_A) {
        BF m = xi.abs();
        if (m.is_zero()) continue;
        BF inv = div(BF(1), m, MPFR_RNDD);
        if (!found || inv < best) {
            best = inv;
            found = true;
        }
    }
    if (!found) throw std::domain_error("stieltjes_params: Z_A has no nonzero member (no finite R*)");

    // identify the minimizer exactly when it is a rational jump point or a
    // rational root of p_n
    std::optional<Rat> exact;
    auto consider = [&](const Rat& xi) {
        if (xi.is_zero()) return;
        Rat inv = xi.abs().inv();
        BF v(inv, MPFR_RNDN);
        if (!(v > mul(best, BF(1.0 + 1e-40), MPFR_RNDU))) {
            if (!exact || inv < *exact) exact = inv;
        }
    };
    for (auto& pt : pw.points) consider(pt.x);
    if (op.p.back().degree() >= 1) {
        RootSet rs = poly_roots(op.p.back(), prec);
        for (auto& r : rs.roots) {
            auto cand = rational_root_near(op.p.back(), r.value);
            if (cand) consider(*cand);
        }
    }
    if (exact)
        sp.R_star = *exact;
    else
        sp.R_star = best;
    return sp;
}

DominationCertificate stieltjes_certificate(const DifferentialOperator& op, const PiecewiseData& pw,
                                            const CoefficientSequence& moments, unsigned prec) {
    StieltjesParams sp = stieltjes_params(op, pw, prec);
    Rat R = param_exact(sp.R_star) ? std::get<Rat>(sp.R_star) : rat_from_bf(std::get<BF>(sp.R_star));

    DominationCertificate cert;
    cert.N = static_cast<int>(sp.N);
    cert.R = R;
    cert.s_rule = tabulated_rule_from_sequence(moments, cert.N, R);
    cert.prov.rule = "stieltjes";
    cert.prov.detail = {{"tau", std::to_string(sp.tau)},
                        {"Lambda", std::to_string(sp.Lambda)},
                        {"R_star", param_str(sp.R_star)}};
    return cert;
}

// ---------------------------------------------------------------------------

bool PieceFun::polynomial() const {
    for (auto& pc : pieces)
        if (pc.exp_mu) return false;
    return true;
}

void PieceFun::validate() const {
    if (!(a < b)) throw std::invalid_argument("PieceFun: need a < b");
    if (pieces.size() != cuts.size() + 1) throw std::invalid_argument("PieceFun: pieces != cuts + 1");
    Rat prev = a;
    for (auto& c : cuts) {
        if (!(prev < c)) throw std::invalid_argument("PieceFun: cuts must be increasing inside (a,b)");
        prev = c;
    }
    if (!(prev < b)) throw std::invalid_argument("PieceFun: cuts must lie inside (a,b)");
}

CoefficientSequence direct_moments(const PieceFun& g, long K) {
    g.validate();
    if (!g.polynomial())
        throw std::invalid_argument("direct_moments: exponential pieces need direct_moments_float");

    std::vector<Rat> lo{g.a}, hi;
    for (auto& c : g.cuts) {
        hi.push_back(c);
        lo.push_back(c);
    }
    hi.push_back(g.b);

    CoefficientSequence out;
    out.provenance = "direct moments";
    out.values.reserve(static_cast<std::size_t>(K) + 1);

    // int_lo^hi x^{k+i} dx summed over the piece coefficients; powers of the
    // endpoints advance incrementally in k.
    std::vector<Rat> lo_pow, hi_pow;  // lo^{k+1}, hi^{k+1} per piece
    for (std::size_t s = 0; s < g.pieces.size(); ++s) {
        lo_pow.push_back(lo[s]);
        hi_pow.push_back(hi[s]);
    }
    for (long k = 0; k <= K; ++k) {
        Rat m(0);
        for (std::size_t s = 0; s < g.pieces.size(); ++s) {
            const auto& coeffs = g.pieces[s].poly.coeffs();
            Rat lp = lo_pow[s], hp = hi_pow[s];  // x^{k+1}
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (!coeffs[i].is_zero())
                    m += coeffs[i] * (hp - lp) / Rat(k + static_cast<long>(i) + 1);
                lp *= lo[s];
                hp *= hi[s];
            }
            lo_pow[s] *= lo[s];
            hi_pow[s] *= hi[s];
        }
        out.values.push_back(std::move(m));
    }
    return out;
}

namespace {

/// int x^m e^{mu x} dx = e^{mu x} sum_{t=0}^m (-1)^t (m!/(m-t)!) x^{m-t} / mu^{t+1}
BF exp_moment(const Rat& lo, const Rat& hi, long m, const Rat& mu, unsigned prec) {
    BF mu_bf(mu, MPFR_RNDN, prec);
    auto anti = [&](const Rat& x) {
        BF xb(x, MPFR_RNDN, prec);
        BF e = exp(mul(mu_bf, xb, MPFR_RNDN, prec), MPFR_RNDN, prec);
        BF sum(0.0);
        Rat fact(1);
        BF mu_pow = mu_bf;
        for (long t = 0; t <= m; ++t) {
            if (t > 0) {
                fact *= Rat(m - t + 1);
                mu_pow = mul(mu_pow, mu_bf, MPFR_RNDN, prec);
            }
            BF term = div(mul(BF(Rat((t % 2 == 0) ? 1 : -1) * fact, MPFR_RNDN, prec),
                              pow_ui(xb, static_cast<unsigned long>(m - t), MPFR_RNDN, prec), MPFR_RNDN, prec),
                          mu_pow, MPFR_RNDN, prec);
            sum = add(sum, term, MPFR_RNDN, prec);
        }
        return mul(e, sum, MPFR_RNDN, prec);
    };
    return sub(anti(hi), anti(lo), MPFR_RNDN, prec);
}

}  // namespace

std::vector<BF> direct_moments_float(const PieceFun& g, long K, unsigned prec) {
    g.validate();
    if (prec == 0) prec = BF::default_precision();

    std::vector<Rat> lo{g.a}, hi;
    for (auto& c : g.cuts) {
        hi.push_back(c);
        lo.push_back(c);
    }
    hi.push_back(g.b);

    std::vector<BF> out;
    out.reserve(static_cast<std::size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) {
        BF m(0.0);
        for (std::size_t s = 0; s < g.pieces.size(); ++s) {
            const auto& piece = g.pieces[s];
            const auto& coeffs = piece.poly.coeffs();
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (coeffs[i].is_zero()) continue;
                BF c(coeffs[i], MPFR_RNDN, prec);
                if (piece.exp_mu && !piece.exp_mu->is_zero()) {
                    m = add(m, mul(c, exp_moment(lo[s], hi[s], k + static_cast<long>(i), *piece.exp_mu, prec),
                                   MPFR_RNDN, prec),
                            MPFR_RNDN, prec);
                } else {
                    Rat v = (hi[s].pow(k + static_cast<long>(i) + 1) - lo[s].pow(k + static_cast<long>(i) + 1)) /
                            Rat(k + static_cast<long>(i) + 1);
                    m = add(m, mul(c, BF(v, MPFR_RNDN, prec), MPFR_RNDN, prec), MPFR_RNDN, prec);
                }
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

PiecewiseData piecewise_data(const PieceFun& g, int n) {
    g.validate();
    if (!g.polynomial())
        throw std::invalid_argument("piecewise_data: exponential pieces not supported exactly");

    std::vector<Rat> xs{g.a};
    for (auto& c : g.cuts) xs.push_back(c);
    xs.push_back(g.b);

    auto derivs = [&](const PolyQ& f, const Rat& x) {
        std::vector<Rat> v;
        PolyQ cur = f;
        for (int i = 0; i < n; ++i) {
            v.push_back(cur.eval(x));
            cur = cur.derivative();
        }
        return v;
    };

    PiecewiseData pw;
    pw.a = g.a;
    pw.b = g.b;
    for (std::size_t s = 0; s < xs.size(); ++s) {
        JumpData jd;
        jd.x = xs[s];
        if (s == 0)
            jd.left.assign(static_cast<std::size_t>(n), Rat(0));
        else
            jd.left = derivs(g.pieces[s - 1].poly, xs[s]);
        if (s + 1 == xs.size())
            jd.right.assign(static_cast<std::size_t>(n), Rat(0));
        else
            jd.right = derivs(g.pieces[s].poly, xs[s]);
        pw.points.push_back(std::move(jd));
    }
    return pw;
}

bool annihilates(const DifferentialOperator& op, const PieceFun& g) {
    for (auto& pc : g.pieces) {
        if (pc.exp_mu) return false;
        if (!apply(op, pc.poly).is_zero()) return false;
    }
    return true;
}

std::vector<PolyQ> polynomial_solutions(const DifferentialOperator& op, long max_deg) {
    op.validate();
    long out_deg = max_deg + std::max(op.alpha(), 0L) + 1;
    MatQ m(static_cast<std::size_t>(out_deg + 1), static_cast<std::size_t>(max_deg + 1));
    for (long c = 0; c <= max_deg; ++c) {
        PolyQ img = apply(op, PolyQ::monomial(static_cast<std::size_t>(c), Rat(1)));
        for (long r = 0; r <= img.degree(); ++r)
            m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                img.coeff(static_cast<std::size_t>(r));
    }
    std::vector<PolyQ> sols;
    for (auto& v : kernel(m)) sols.emplace_back(v);
    return sols;
}

}  // namespace taydom
