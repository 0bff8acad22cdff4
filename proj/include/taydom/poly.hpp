#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "taydom/rational.hpp"

namespace taydom {

/// Univariate polynomial, coefficients in ascending degree order.
/// The zero polynomial is the empty coefficient list (degree -1).
template <class T>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs, std::string var = "x")
        : c_(std::move(coeffs)), var_(std::move(var)) {
        trim();
    }
    static UniPoly constant(T v) { return UniPoly(std::vector<T>{std::move(v)}); }
    /// The monomial x^n scaled by v.
    static UniPoly monomial(std::size_t n, T v) {
        std::vector<T> c(n + 1, T(0));
        c[n] = std::move(v);
        return UniPoly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    const std::string& var() const { return var_; }

    /// Coefficient of x^i (zero beyond stored range).
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

    template <class S>
    S eval(const S& z) const {
        if (c_.empty()) return S(0);
        S acc = S(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * z + S(c_[i]);
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UniPoly(std::move(r), a.var_);
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return UniPoly(std::move(r), a.var_);
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return UniPoly(std::move(r), a.var_);
    }
    UniPoly operator-() const {
        std::vector<T> r;
        r.reserve(c_.size());
        for (auto& v : c_) r.push_back(T(0) - v);
        return UniPoly(std::move(r), var_);
    }
    friend UniPoly operator*(const T& s, const UniPoly& p) {
        std::vector<T> r;
        r.reserve(p.c_.size());
        for (auto& v : p.c_) r.push_back(s * v);
        return UniPoly(std::move(r), p.var_);
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return UniPoly(std::move(r), var_);
    }

    /// Antiderivative with zero constant term. Requires exact division
    /// (meant for T = Rat).
    UniPoly antiderivative() const {
        std::vector<T> r(c_.size() + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / T(static_cast<long>(i + 1));
        return UniPoly(std::move(r), var_);
    }

    UniPoly pow(unsigned long e) const {
        UniPoly r = constant(T(1));
        UniPoly base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    /// p(x + shift): the translated polynomial.
    UniPoly shifted(const T& shift) const {
        UniPoly lin(std::vector<T>{shift, T(1)}, var_);
        UniPoly r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(c_[i]);
        return r;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if constexpr (std::is_same_v<T, Rat>) {
                if (c_[i].is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += c_[i].to_string();
            } else {
                if (!s.empty()) s += " + ";
                s += "c" + std::to_string(i);
            }
            if (i > 0) s += "*" + var_ + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        if constexpr (std::is_same_v<T, Rat>) {
            while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        } else {
            while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
        }
    }

    std::vector<T> c_;
    std::string var_ = "x";
};

using PolyQ = UniPoly<Rat>;

/// Definite integral of p over [a, b], exact.
inline Rat integrate(const PolyQ& p, const Rat& a, const Rat& b) {
    PolyQ anti = p.antiderivative();
    return anti.eval(b) - anti.eval(a);
}

/// Falling factorial of a polynomial argument: m(m-1)...(m-j+1).
/// The empty product (j = 0) is 1.
inline PolyQ falling_factorial(const PolyQ& m, long j) {
    if (j < 0) throw std::invalid_argument("falling_factorial: negative count");
    PolyQ r = PolyQ::constant(Rat(1));
    for (long i = 0; i < j; ++i) r = r * (m - PolyQ::constant(Rat(i)));
    return r;
}

inline Rat falling_factorial(const Rat& m, long j) {
    if (j < 0) throw std::invalid_argument("falling_factorial: negative count");
    Rat r(1);
    for (long i = 0; i < j; ++i) r *= m - Rat(i);
    return r;
}

}  // namespace taydom
