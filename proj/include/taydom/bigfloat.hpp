#pragma once

#include <mpfr.h>

#include <complex>
#include <string>

#include "taydom/rational.hpp"

namespace taydom {

/// Arbitrary-precision binary float backed by MPFR.
///
/// Every value carries its own precision (bits). Operator overloads round to
/// nearest at the wider operand precision; the free functions taking an
/// explicit mpfr_rnd_t are the directed-rounding path used wherever a
/// comparison decides soundness.
class BF {
public:
    static unsigned default_precision();
    static void set_default_precision(unsigned bits);

    BF();
    explicit BF(unsigned prec);
    BF(double d);
    BF(long n);
    BF(int n) : BF(static_cast<long>(n)) {}
    BF(const Rat& r, mpfr_rnd_t rnd = MPFR_RNDN, unsigned prec = 0);
    BF(const BF& o);
    BF(BF&& o) noexcept;
    BF& operator=(const BF& o);
    BF& operator=(BF&& o) noexcept;
    ~BF();

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(x_)); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(x_) != 0; }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }

    /// Shortest decimal string that round-trips at this precision.
    std::string to_string() const;
    /// Exact hexadecimal form ("0x1.8p+1"); deterministic for serialization.
    std::string to_hex_string() const;
    static BF from_hex_string(const std::string& s, unsigned prec);

    friend BF operator+(const BF& a, const BF& b);
    friend BF operator-(const BF& a, const BF& b);
    friend BF operator*(const BF& a, const BF& b);
    friend BF operator/(const BF& a, const BF& b);
    BF operator-() const;
    BF& operator+=(const BF& b) { return *this = *this + b; }
    BF& operator-=(const BF& b) { return *this = *this - b; }
    BF& operator*=(const BF& b) { return *this = *this * b; }
    BF& operator/=(const BF& b) { return *this = *this / b; }

    friend bool operator==(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) == 0; }
    friend bool operator!=(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) != 0; }
    friend bool operator<(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator<=(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator>=(const BF& a, const BF& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    // Directed-rounding arithmetic. Result precision is the default unless given.
    friend BF add(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec);
    friend BF sub(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec);
    friend BF mul(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec);
    friend BF div(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec);
    friend BF pow_ui(const BF& a, unsigned long k, mpfr_rnd_t rnd, unsigned prec);
    friend BF sqrt(const BF& a, mpfr_rnd_t rnd, unsigned prec);
    friend BF log(const BF& a, mpfr_rnd_t rnd, unsigned prec);
    friend BF exp(const BF& a, mpfr_rnd_t rnd, unsigned prec);
    friend BF abs(const BF& a);
    friend BF hypot(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec);
    /// Euler's number e, correctly rounded in the given direction.
    static BF euler_e(mpfr_rnd_t rnd, unsigned prec = 0);
    /// 2^e exactly (e may be negative).
    static BF pow2(long e, unsigned prec = 0);

private:
    mpfr_t x_;
};

BF add(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec = 0);
BF sub(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec = 0);
BF mul(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec = 0);
BF div(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec = 0);
BF pow_ui(const BF& a, unsigned long k, mpfr_rnd_t rnd, unsigned prec = 0);
BF sqrt(const BF& a, mpfr_rnd_t rnd, unsigned prec = 0);
BF log(const BF& a, mpfr_rnd_t rnd, unsigned prec = 0);
BF exp(const BF& a, mpfr_rnd_t rnd, unsigned prec = 0);
BF abs(const BF& a);
BF hypot(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec = 0);

/// Complex number over BF. Round-to-nearest arithmetic at default precision;
/// used for root finding and other estimate-grade work, never for the
/// directed-rounding comparisons.
struct CF {
    BF re, im;

    CF() = default;
    CF(BF r, BF i) : re(std::move(r)), im(std::move(i)) {}
    CF(double r, double i = 0.0) : re(r), im(i) {}
    explicit CF(const Rat& r) : re(r), im(0.0) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    friend CF operator+(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
    friend CF operator-(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
    friend CF operator*(const CF& a, const CF& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CF operator/(const CF& a, const CF& b) {
        BF d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    CF operator-() const { return {-re, -im}; }
    CF& operator+=(const CF& b) { return *this = *this + b; }
    CF& operator-=(const CF& b) { return *this = *this - b; }
    CF& operator*=(const CF& b) { return *this = *this * b; }

    BF abs2() const { return re * re + im * im; }
    BF abs() const { return hypot(re, im, MPFR_RNDN); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

}  // namespace taydom
