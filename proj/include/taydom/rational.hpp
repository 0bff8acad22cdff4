#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace taydom {

/// Exact rational number backed by GMP's mpq_t.
///
/// Always stored canonically: lowest terms, positive denominator.
/// Value semantics; every operation is exact.
class Rat {
public:
    Rat() { mpq_init(q_); }
    Rat(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rat(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        mpq_init(q_);
        mpq_set_si(q_, num, static_cast<unsigned long>(den));
        mpq_canonicalize(q_);
    }
    Rat(const Rat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    /// Parses "p/q" or "p" (decimal digits, optional leading '-').
    static Rat from_string(const std::string& s) {
        Rat r;
        if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        mpq_canonicalize(r.q_);
        return r;
    }

    std::string to_string() const {
        char* c = mpq_get_str(nullptr, 10, q_);
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        return s;
    }

    double to_double() const { return mpq_get_d(q_); }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    /// Integer value, when is_integer() and the value fits in long.
    long to_long() const {
        if (!is_integer() || !mpz_fits_slong_p(mpq_numref(q_)))
            throw std::domain_error("Rat: not a representable integer");
        return mpz_get_si(mpq_numref(q_));
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        Rat r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        Rat r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        Rat r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        Rat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rat operator-() const {
        Rat r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rat& operator+=(const Rat& b) {
        mpq_add(q_, q_, b.q_);
        return *this;
    }
    Rat& operator-=(const Rat& b) {
        mpq_sub(q_, q_, b.q_);
        return *this;
    }
    Rat& operator*=(const Rat& b) {
        mpq_mul(q_, q_, b.q_);
        return *this;
    }
    Rat& operator/=(const Rat& b) {
        *this = *this / b;
        return *this;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    Rat abs() const {
        Rat r;
        mpq_abs(r.q_, q_);
        return r;
    }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        Rat r;
        mpq_inv(r.q_, q_);
        return r;
    }

    /// Integer power; negative exponents require a nonzero base.
    Rat pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Rat r;
        mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), static_cast<unsigned long>(e));
        return r;  // powers of a canonical fraction are canonical
    }

    /// floor(value) as long (must fit).
    long floor_long() const {
        mpz_t f;
        mpz_init(f);
        mpz_fdiv_q(f, mpq_numref(q_), mpq_denref(q_));
        if (!mpz_fits_slong_p(f)) {
            mpz_clear(f);
            throw std::domain_error("Rat: floor does not fit in long");
        }
        long v = mpz_get_si(f);
        mpz_clear(f);
        return v;
    }

    std::string num_string() const {
        char* c = mpz_get_str(nullptr, 10, mpq_numref(q_));
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        return s;
    }
    std::string den_string() const {
        char* c = mpz_get_str(nullptr, 10, mpq_denref(q_));
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        return s;
    }

    /// Bit size of max(|num|, den); a cheap magnitude proxy.
    size_t bit_size() const {
        return std::max(mpz_sizeinbase(mpq_numref(q_), 2), mpz_sizeinbase(mpq_denref(q_), 2));
    }

    const mpq_t& raw() const { return q_; }

private:
    mpq_t q_;
};

inline Rat abs(const Rat& a) { return a.abs(); }

inline Rat binomial(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_t b;
    mpz_init(b);
    mpz_bin_uiui(b, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    Rat r = Rat::from_string([&] {
        char* c = mpz_get_str(nullptr, 10, b);
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        return s;
    }());
    mpz_clear(b);
    return r;
}

}  // namespace taydom
