#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "taydom/rational.hpp"

namespace taydom {

/// Sparse multivariate polynomial over Rat: multi-index -> nonzero coefficient.
/// Terms are kept in lexicographic order of the exponent vector, so iteration
/// (and therefore serialization) is deterministic.
class MultiPoly {
public:
    using Exp = std::vector<std::uint32_t>;

    /// Term-count guard against runaway expansion (doubly-exponential growth
    /// is possible for quadratic recurrences). Checked on multiplication.
    static std::size_t term_cap;

    explicit MultiPoly(int nvars = 0) : n_(nvars) {}

    static MultiPoly constant(int nvars, Rat c) {
        MultiPoly p(nvars);
        if (!c.is_zero()) p.t_.emplace(Exp(nvars, 0), std::move(c));
        return p;
    }
    static MultiPoly variable(int nvars, int i) {
        if (i < 0 || i >= nvars) throw std::invalid_argument("MultiPoly: variable index");
        MultiPoly p(nvars);
        Exp e(nvars, 0);
        e[i] = 1;
        p.t_.emplace(std::move(e), Rat(1));
        return p;
    }
    static MultiPoly monomial(int nvars, Exp beta, Rat c) {
        if (static_cast<int>(beta.size()) != nvars) throw std::invalid_argument("MultiPoly: exponent size");
        MultiPoly p(nvars);
        if (!c.is_zero()) p.t_.emplace(std::move(beta), std::move(c));
        return p;
    }

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const std::map<Exp, Rat>& terms() const { return t_; }

    /// Max total degree over stored terms; -1 for zero.
    long total_degree() const {
        long d = -1;
        for (auto& [e, c] : t_) {
            long s = 0;
            for (auto v : e) s += v;
            if (s > d) d = s;
        }
        return d;
    }

    Rat coeff(const Exp& beta) const {
        auto it = t_.find(beta);
        return it == t_.end() ? Rat(0) : it->second;
    }

    /// Max absolute value of the coefficients (the norm convention recorded
    /// in A0Profile); 0 for the zero polynomial.
    Rat norm_max() const {
        Rat m(0);
        for (auto& [e, c] : t_) {
            Rat a = c.abs();
            if (a > m) m = a;
        }
        return m;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r = a;
        for (auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r = a;
        for (auto& [e, c] : b.t_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(n_);
        for (auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r(a.n_);
        for (auto& [ea, ca] : a.t_)
            for (auto& [eb, cb] : b.t_) {
                Exp e(a.n_);
                for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        if (r.t_.size() > term_cap)
            throw std::runtime_error("MultiPoly: term cap exceeded (" + std::to_string(r.t_.size()) +
                                     " monomials)");
        return r;
    }
    friend MultiPoly operator*(const Rat& s, const MultiPoly& p) {
        MultiPoly r(p.n_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : p.t_) r.t_.emplace(e, s * c);
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_ == b.n_ && a.t_ == b.t_;
    }

    MultiPoly pow(unsigned long k) const {
        MultiPoly r = constant(n_, Rat(1));
        MultiPoly base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = (k >>= 1) ? base * base : base;
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& lambda) const {
        if (static_cast<int>(lambda.size()) != n_) throw std::invalid_argument("MultiPoly: eval arity");
        Rat acc(0);
        for (auto& [e, c] : t_) {
            Rat term = c;
            for (int i = 0; i < n_; ++i)
                if (e[i]) term *= lambda[i].pow(e[i]);
            acc += term;
        }
        return acc;
    }

private:
    static void check_vars(const MultiPoly& a, const MultiPoly& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("MultiPoly: variable count mismatch");
    }
    void add_term(const Exp& e, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    int n_;
    std::map<Exp, Rat> t_;
};

inline std::size_t MultiPoly::term_cap = 1000000;

}  // namespace taydom
