#include "taydom/seqrule.hpp"

#include <algorithm>

#include "taydom/roots.hpp"

namespace taydom {

SeqRule SeqRule::closed(PolyQ num, PolyQ den, Rat q) {
    if (den.is_zero()) throw std::invalid_argument("SeqRule: zero denominator polynomial");
    if (q.is_zero()) throw std::invalid_argument("SeqRule: zero geometric ratio (use the zero rule)");
    SeqRule r;
    r.kind_ = Kind::closed;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.q_ = std::move(q);
    return r;
}

SeqRule SeqRule::tabulated(long start, std::vector<Rat> values, std::optional<Rat> tail_bound) {
    if (start < 0) throw std::invalid_argument("SeqRule: negative table start");
    if (tail_bound && tail_bound->sign() < 0) throw std::invalid_argument("SeqRule: negative tail bound");
    SeqRule r;
    r.kind_ = Kind::tabulated;
    r.start_ = start;
    r.table_ = std::move(values);
    r.tail_ = std::move(tail_bound);
    return r;
}

bool SeqRule::is_zero_rule() const {
    if (kind_ == Kind::closed) return num_.is_zero();
    for (auto& v : table_)
        if (!v.is_zero()) return false;
    return !tail_ || tail_->is_zero();
}

bool SeqRule::defined_at(long k) const {
    if (kind_ == Kind::tabulated) return k >= start_ && k < start_ + static_cast<long>(table_.size());
    return !den_.eval(Rat(k)).is_zero();
}

Rat SeqRule::eval(long k) const {
    if (kind_ == Kind::tabulated) {
        if (!defined_at(k)) throw std::domain_error("SeqRule: tabulated rule undefined at k=" + std::to_string(k));
        return table_[static_cast<std::size_t>(k - start_)];
    }
    Rat d = den_.eval(Rat(k));
    if (d.is_zero()) throw std::domain_error("SeqRule: rule undefined at k=" + std::to_string(k));
    Rat v = num_.eval(Rat(k)) / d;
    if (!(q_ == Rat(1))) v *= q_.pow(k);
    return v;
}

bool SeqRule::tends_to_zero() const {
    if (is_zero_rule()) return true;
    if (kind_ == Kind::tabulated) return tail_ && tail_->is_zero();
    Rat aq = q_.abs();
    if (aq < Rat(1)) return true;
    if (aq == Rat(1)) return num_.degree() < den_.degree();
    return false;
}

bool SeqRule::has_certifiable_tail() const {
    return kind_ == Kind::closed || (tail_.has_value());
}

long SeqRule::monotone_horizon() const {
    long h = 2;
    auto extend = [&h](const PolyQ& p) {
        if (p.degree() < 1) return;
        BF m = poly_roots(p).max_modulus();
        long hm = static_cast<long>(m.to_double()) + 2;
        h = std::max(h, hm);
    };
    extend(num_);
    extend(den_);
    extend(num_.derivative() * den_ - num_ * den_.derivative());
    return h;
}

Rat SeqRule::sup_abs_from(long k0) const {
    k0 = std::max(k0, 0L);
    if (is_zero_rule()) return Rat(0);

    if (kind_ == Kind::tabulated) {
        if (!tail_) throw Unbounded("tabulated rule has no declared tail bound");
        Rat m = *tail_;
        for (long k = std::max(k0, start_); k < start_ + static_cast<long>(table_.size()); ++k) {
            Rat a = table_[static_cast<std::size_t>(k - start_)].abs();
            if (a > m) m = a;
        }
        return m;
    }

    const Rat aq = q_.abs();
    const long dn = num_.degree(), dd = den_.degree();
    if (aq > Rat(1)) throw Unbounded("geometric ratio exceeds 1");
    if (aq == Rat(1) && dn > dd) throw Unbounded("rational part grows without bound");

    const long h0 = monotone_horizon();

    auto abs_at = [this](long k) { return eval(k).abs(); };

    if (aq == Rat(1)) {
        // |f| = |num/den|, monotone beyond h0 with limit L.
        long hi = std::max(k0, h0);
        Rat m(0);
        for (long k = k0; k <= hi; ++k) {
            if (!defined_at(k)) throw std::domain_error("SeqRule: undefined at k=" + std::to_string(k));
            Rat a = abs_at(k);
            if (a > m) m = a;
        }
        Rat limit = dn < dd ? Rat(0) : (num_.coeff(dn) / den_.coeff(dd)).abs();
        return std::max(m, limit);
    }

    // |q| < 1: find h2 beyond which each step multiplies |f| by <= (1+|q|)/2.
    const Rat target = (Rat(1) + aq) / Rat(2);
    double xn = 0, xd = 0;
    if (num_.degree() >= 1) xn = poly_roots(num_).max_modulus().to_double();
    if (den_.degree() >= 1) xd = poly_roots(den_).max_modulus().to_double();
    auto ratio_bound = [&](long k) {
        double r = std::pow((k + 1 + xn) / (k - xn), (double)std::max(dn, 0L)) *
                   std::pow((k + xd) / (k + 1 - xd), (double)std::max(dd, 0L));
        return r;
    };
    long h2 = std::max({k0, h0, (long)(std::max(xn, xd)) + 2});
    while (aq.to_double() * ratio_bound(h2) > 0.999 * target.to_double() && h2 < (1L << 30)) h2 += std::max(1L, h2 / 2);

    Rat m(0);
    for (long k = k0; k <= h2; ++k) {
        if (!defined_at(k)) throw std::domain_error("SeqRule: undefined at k=" + std::to_string(k));
        Rat a = abs_at(k);
        if (a > m) m = a;
    }
    return m;  // beyond h2 the sequence decreases monotonically
}

long SeqRule::last_violation(long k_min, const BF& bound) const {
    k_min = std::max(k_min, 0L);
    auto exceeds = [&bound](const Rat& v) {
        // exact comparison |v| > bound
        return mpfr_cmp_q(bound.raw(), v.abs().raw()) < 0;
    };

    if (is_zero_rule()) return bound.sign() >= 0 ? k_min - 1 : k_min;  // zero violates only a negative bound

    if (kind_ == Kind::tabulated) {
        if (!tail_) throw Unbounded("tabulated rule has no declared tail bound");
        if (mpfr_cmp_q(bound.raw(), tail_->raw()) < 0)
            throw Unbounded("declared tail bound exceeds the threshold");
        long last = k_min - 1;
        for (long k = std::max(k_min, start_); k < start_ + static_cast<long>(table_.size()); ++k)
            if (exceeds(table_[static_cast<std::size_t>(k - start_)])) last = k;
        return last;
    }

    // Find a horizon H with sup_{k > H} |f| <= bound, then scan [k_min, H].
    const Rat aq = q_.abs();
    const long dn = num_.degree(), dd = den_.degree();
    if (aq > Rat(1)) throw Unbounded("geometric ratio exceeds 1");
    const long h0 = monotone_horizon();
    long H = std::max(k_min, h0);

    if (aq == Rat(1)) {
        if (dn > dd) throw Unbounded("rational part grows without bound");
        Rat limit = dn < dd ? Rat(0) : (num_.coeff(dn) / den_.coeff(dd)).abs();
        if (mpfr_cmp_q(bound.raw(), limit.raw()) < 0) throw Unbounded("limit exceeds the threshold");
        // |f| monotone beyond h0: if |f(H)| <= bound we are done at H, else
        // |f| must be decreasing toward the limit; extend until it passes.
        while (defined_at(H) && exceeds(eval(H))) {
            ++H;
            if (H > h0 + (1L << 22)) throw Unbounded("tail does not fall below the threshold");
        }
    } else {
        // geometric decay: extend H until |f(H)| <= bound with the decay
        // guard from sup_abs_from ensuring monotone decrease beyond.
        double xn = 0, xd = 0;
        if (num_.degree() >= 1) xn = poly_roots(num_).max_modulus().to_double();
        if (den_.degree() >= 1) xd = poly_roots(den_).max_modulus().to_double();
        const double target = (Rat(1) + aq).to_double() / 2.0;
        auto ratio_bound = [&](long k) {
            return std::pow((k + 1 + xn) / (k - xn), (double)std::max(dn, 0L)) *
                   std::pow((k + xd) / (k + 1 - xd), (double)std::max(dd, 0L));
        };
        H = std::max({H, (long)std::max(xn, xd) + 2});
        while (aq.to_double() * ratio_bound(H) > 0.999 * target && H < (1L << 30)) H += std::max(1L, H / 2);
        while (defined_at(H) && exceeds(eval(H))) {
            ++H;
            if (H > (1L << 23)) throw Unbounded("tail does not fall below the threshold");
        }
    }

    long last = k_min - 1;
    for (long k = k_min; k <= H; ++k) {
        if (!defined_at(k)) continue;  // undefined points are the generator's problem, not the scan's
        if (exceeds(eval(k))) last = k;
    }
    return last;
}

}  // namespace taydom
