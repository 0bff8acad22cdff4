#include "taydom/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace taydom {

BF RootSet::max_modulus() const {
    BF m(0.0);
    for (auto& r : roots) {
        BF a = r.value.abs();
        if (a > m) m = a;
    }
    return m;
}

bool RootSet::has_nonzero() const {
    for (auto& r : roots)
        if (r.multiplicity > 0 && !(r.value.re.is_zero() && r.value.im.is_zero())) return true;
    return false;
}

BF RootSet::min_modulus_nonzero() const {
    bool found = false;
    BF m(0.0);
    for (auto& r : roots) {
        if (r.value.re.is_zero() && r.value.im.is_zero()) continue;
        BF a = r.value.abs();
        if (!found || a < m) {
            m = a;
            found = true;
        }
    }
    if (!found) throw std::domain_error("RootSet: no nonzero root");
    return m;
}

namespace {

CF horner(const std::vector<CF>& c, const CF& z) {
    CF acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

std::vector<CF> derivative(const std::vector<CF>& c) {
    std::vector<CF> d;
    d.reserve(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * CF(BF(static_cast<long>(i)), BF(0.0)));
    return d;
}

}  // namespace

RootSet poly_roots(const std::vector<CF>& coeffs_in, unsigned prec) {
    if (prec == 0) prec = BF::default_precision();
    std::vector<CF> c = coeffs_in;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.size() <= 1) throw std::invalid_argument("poly_roots: need degree >= 1");

    RootSet out;

    // Factor out z^m.
    int zero_mult = 0;
    while (!c.empty() && c.front().is_zero()) {
        ++zero_mult;
        c.erase(c.begin());
    }
    if (zero_mult > 0) out.roots.push_back({CF(0.0, 0.0), zero_mult, 0.0});

    const std::size_t n = c.size() - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.roots.push_back({-(c[0] / c[1]), 1, 0.0});
        return out;
    }

    std::vector<CF> dc = derivative(c);

    // Cauchy bound for the initial circle.
    BF lead = c[n].abs();
    BF r0(1.0);
    for (std::size_t i = 0; i < n; ++i) {
        BF t = BF(1.0) + c[i].abs() / lead;
        if (t > r0) r0 = t;
    }
    double radius = 0.5 * r0.to_double() + 0.5;

    std::vector<CF> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ang = 2.0 * M_PI * (static_cast<double>(i) + 0.35) / static_cast<double>(n) + 0.1;
        z[i] = CF(radius * std::cos(ang), radius * std::sin(ang));
    }

    const BF stop = BF::pow2(-static_cast<long>(prec * 3 / 4));
    const BF stall_floor = BF::pow2(-static_cast<long>(prec / 8));
    BF best_corr(1e300);
    int stalled = 0;
    double last_corr = 1e300;

    for (int iter = 0; iter < 400; ++iter) {
        BF max_corr(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            CF pv = horner(c, z[i]);
            if (pv.is_zero()) continue;
            CF dv = horner(dc, z[i]);
            CF w;
            if (dv.is_zero()) {
                w = CF(1e-3, 1e-3);  // nudge off a critical point
            } else {
                w = pv / dv;
            }
            CF s(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                s += CF(1.0, 0.0) / (z[i] - z[j]);
            }
            CF denom = CF(1.0, 0.0) - w * s;
            CF corr = denom.is_zero() ? w : w / denom;
            z[i] = z[i] - corr;
            BF rel = corr.abs() / (BF(1.0) + z[i].abs());
            if (rel > max_corr) max_corr = rel;
        }
        last_corr = max_corr.to_double();
        if (max_corr < stop) break;
        if (max_corr < mul(best_corr, BF(0.9), MPFR_RNDN)) {
            best_corr = max_corr;
            stalled = 0;
        } else if (++stalled > 25 && max_corr < stall_floor) {
            break;  // multiple-root cluster: linear convergence has flattened out
        }
    }

    // Cluster at 1e-8 relative distance (union-find).
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    const BF cluster_tol(1e-8);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            BF dist = (z[i] - z[j]).abs();
            BF scale = BF(1.0) + z[i].abs();
            if (dist <= cluster_tol * scale) parent[find(i)] = find(j);
        }

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

    BF coeff_scale(0.0);
    for (auto& cc : c) {
        BF a = cc.abs();
        if (a > coeff_scale) coeff_scale = a;
    }
    const BF res_tol = BF::pow2(-static_cast<long>(prec / 2) + 8);

    for (auto& g : groups) {
        if (g.empty()) continue;
        CF centroid(0.0, 0.0);
        for (auto i : g) centroid += z[i];
        BF inv = BF(1.0) / BF(static_cast<long>(g.size()));
        centroid = CF(centroid.re * inv, centroid.im * inv);
        double spread = 0.0;
        for (auto i : g) spread = std::max(spread, (z[i] - centroid).abs().to_double());

        BF scale = coeff_scale * pow_ui(BF(1.0) + centroid.abs(), static_cast<unsigned long>(n), MPFR_RNDN);
        BF resid = horner(c, centroid).abs();
        if (resid > res_tol * scale)
            throw std::runtime_error("poly_roots: residual certification failed (|p(root)| too large)");

        out.roots.push_back({centroid, static_cast<int>(g.size()), spread + last_corr});
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        double ma = a.value.abs().to_double(), mb = b.value.abs().to_double();
        if (ma != mb) return ma < mb;
        return a.value.re.to_double() < b.value.re.to_double();
    });
    return out;
}

RootSet poly_roots(const UniPoly<Rat>& p, unsigned prec) {
    if (p.is_zero()) throw std::invalid_argument("poly_roots: zero polynomial");
    if (prec == 0) prec = BF::default_precision();
    std::vector<CF> c;
    c.reserve(p.coeffs().size());
    for (auto& q : p.coeffs()) c.emplace_back(BF(q, MPFR_RNDN, prec), BF(0.0));
    return poly_roots(c, prec);
}

long order_at(const PolyQ& p, const Rat& xi) {
    if (p.is_zero()) return -1;  // caller treats the zero polynomial as order infinity
    long ord = 0;
    PolyQ cur = p;
    while (!cur.is_zero() && cur.eval(xi).is_zero()) {
        cur = divide_linear(cur, xi);
        ++ord;
    }
    return ord;
}

PolyQ divide_linear(const PolyQ& p, const Rat& xi) {
    if (!p.eval(xi).is_zero()) throw std::invalid_argument("divide_linear: xi is not a root");
    const auto& c = p.coeffs();
    if (c.size() <= 1) return PolyQ();
    std::vector<Rat> q(c.size() - 1, Rat(0));
    Rat carry(0);
    for (std::size_t i = c.size(); i-- > 1;) {
        carry = c[i] + carry * xi;
        q[i - 1] = carry;
    }
    return PolyQ(std::move(q), p.var());
}

std::optional<long> largest_positive_integer_root(const PolyQ& p) {
    if (p.is_zero() || p.degree() < 1) return std::nullopt;
    const auto& c = p.coeffs();
    Rat lead = c.back().abs();
    Rat bound(1);
    for (auto& a : c) {
        Rat t = Rat(1) + a.abs() / lead;
        if (t > bound) bound = t;
    }
    long b = bound.floor_long() + 1;
    if (b > 2000000) throw std::runtime_error("largest_positive_integer_root: root bound too large to scan");
    std::optional<long> best;
    for (long k = 1; k <= b; ++k)
        if (p.eval(Rat(k)).is_zero()) best = k;
    return best;
}

std::optional<Rat> rational_root_near(const PolyQ& p, const CF& approx, unsigned long den_cap) {
    double im = approx.im.to_double();
    double re = approx.re.to_double();
    if (std::abs(im) > 1e-12 * (1.0 + std::abs(re))) return std::nullopt;

    // Continued-fraction reconstruction of re, checked exactly against p.
    double x = re;
    long long p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (fl > 1e15 || fl < -1e15) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 < 0 || static_cast<unsigned long long>(q2) > den_cap) break;
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
        Rat cand(static_cast<long>(p1), static_cast<long>(q1));
        if (std::abs(cand.to_double() - re) < 1e-10 * (1.0 + std::abs(re)) && p.eval(cand).is_zero())
            return cand;
        double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace taydom
