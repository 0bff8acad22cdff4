#include "taydom/bigfloat.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace taydom {

namespace {
std::atomic<unsigned> g_default_prec{256};

unsigned pick(unsigned prec) { return prec ? prec : g_default_prec.load(); }
}  // namespace

unsigned BF::default_precision() { return g_default_prec.load(); }

void BF::set_default_precision(unsigned bits) {
    if (bits < 24 || bits > 1u << 20) throw std::invalid_argument("BF: precision out of range");
    g_default_prec.store(bits);
}

BF::BF() {
    mpfr_init2(x_, pick(0));
    mpfr_set_zero(x_, 1);
}

BF::BF(unsigned prec) {
    mpfr_init2(x_, pick(prec));
    mpfr_set_zero(x_, 1);
}

BF::BF(double d) {
    mpfr_init2(x_, pick(0));
    mpfr_set_d(x_, d, MPFR_RNDN);
}

BF::BF(long n) {
    mpfr_init2(x_, pick(0));
    mpfr_set_si(x_, n, MPFR_RNDN);
}

BF::BF(const Rat& r, mpfr_rnd_t rnd, unsigned prec) {
    mpfr_init2(x_, pick(prec));
    mpfr_set_q(x_, r.raw(), rnd);
}

BF::BF(const BF& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

BF::BF(BF&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
}

BF& BF::operator=(const BF& o) {
    if (this != &o) {
        mpfr_set_prec(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

BF& BF::operator=(BF&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
}

BF::~BF() { mpfr_clear(x_); }

std::string BF::to_string() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", (int)(mpfr_get_prec(x_) * 0.3010299957) + 2, x_) < 0)
        throw std::runtime_error("BF: formatting failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string BF::to_hex_string() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%Ra", x_) < 0) throw std::runtime_error("BF: formatting failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BF BF::from_hex_string(const std::string& s, unsigned prec) {
    BF r(prec);
    if (mpfr_set_str(r.x_, s.c_str(), 16, MPFR_RNDN) != 0 && !s.empty() && s.find("0x") == std::string::npos)
        throw std::invalid_argument("BF: cannot parse hex '" + s + "'");
    return r;
}

static mpfr_prec_t wider(const BF& a, const BF& b) {
    return std::max(mpfr_get_prec(a.raw()), mpfr_get_prec(b.raw()));
}

BF operator+(const BF& a, const BF& b) {
    BF r(static_cast<unsigned>(wider(a, b)));
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}
BF operator-(const BF& a, const BF& b) {
    BF r(static_cast<unsigned>(wider(a, b)));
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}
BF operator*(const BF& a, const BF& b) {
    BF r(static_cast<unsigned>(wider(a, b)));
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}
BF operator/(const BF& a, const BF& b) {
    BF r(static_cast<unsigned>(wider(a, b)));
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}
BF BF::operator-() const {
    BF r(precision());
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

BF add(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_add(r.x_, a.x_, b.x_, rnd);
    return r;
}
BF sub(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_sub(r.x_, a.x_, b.x_, rnd);
    return r;
}
BF mul(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_mul(r.x_, a.x_, b.x_, rnd);
    return r;
}
BF div(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_div(r.x_, a.x_, b.x_, rnd);
    return r;
}
BF pow_ui(const BF& a, unsigned long k, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_pow_ui(r.x_, a.x_, k, rnd);
    return r;
}
BF sqrt(const BF& a, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_sqrt(r.x_, a.x_, rnd);
    return r;
}
BF log(const BF& a, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_log(r.x_, a.x_, rnd);
    return r;
}
BF exp(const BF& a, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_exp(r.x_, a.x_, rnd);
    return r;
}
BF abs(const BF& a) {
    BF r(a.precision());
    mpfr_abs(r.x_, a.x_, MPFR_RNDN);
    return r;
}
BF hypot(const BF& a, const BF& b, mpfr_rnd_t rnd, unsigned prec) {
    BF r(pick(prec));
    mpfr_hypot(r.x_, a.x_, b.x_, rnd);
    return r;
}

BF BF::euler_e(mpfr_rnd_t rnd, unsigned prec) {
    BF one(1L);
    return exp(one, rnd, pick(prec));
}

BF BF::pow2(long e, unsigned prec) {
    BF r(pick(prec));
    mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
    return r;
}

}  // namespace taydom
