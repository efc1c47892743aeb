#include "qdcr/mpreal.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

#include "qdcr/error.hpp"

namespace qdcr::mp {

Float::Float(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Float::Float(double x, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Float::Float(long x, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

Float::Float(const std::string& decimal, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw Error("not a decimal number: " + decimal);
  }
}

Float::Float(const Float& o) {
  mpfr_init2(v_, o.bits());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

// A moved-from Float keeps a valid 2-bit zero so its destructor stays trivial to reason about.
Float::Float(Float&& o) noexcept {
  mpfr_init2(v_, 2);
  mpfr_swap(v_, o.v_);
}

Float& Float::operator=(const Float& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Float::~Float() { mpfr_clear(v_); }

std::string Float::to_string(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_) < 0) return "nan";
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {

mpfr_prec_t wider(const Float& a, const Float& b) { return std::max(a.bits(), b.bits()); }

// Raise this->precision to at least that of `o` before an in-place op.
void widen(Float& x, const Float& o) {
  if (o.bits() > x.bits()) mpfr_prec_round(x.raw(), o.bits(), MPFR_RNDN);
}

}  // namespace

Float& Float::operator+=(const Float& o) {
  widen(*this, o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Float& Float::operator-=(const Float& o) {
  widen(*this, o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Float& Float::operator*=(const Float& o) {
  widen(*this, o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Float& Float::operator/=(const Float& o) {
  widen(*this, o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Float Float::operator-() const {
  Float r(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define QDCR_MP_BINOP(OP, FN)                          \
  Float operator OP(const Float& a, const Float& b) { \
    Float r(wider(a, b));                              \
    FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);          \
    return r;                                          \
  }
QDCR_MP_BINOP(+, mpfr_add)
QDCR_MP_BINOP(-, mpfr_sub)
QDCR_MP_BINOP(*, mpfr_mul)
QDCR_MP_BINOP(/, mpfr_div)
#undef QDCR_MP_BINOP

bool operator<(const Float& a, const Float& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Float& a, const Float& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Float& a, const Float& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Float& a, const Float& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Float& a, const Float& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define QDCR_MP_UNARY(NAME, FN)        \
  Float NAME(const Float& x) {         \
    Float r(x.bits());                 \
    FN(r.raw(), x.raw(), MPFR_RNDN);   \
    return r;                          \
  }
QDCR_MP_UNARY(abs, mpfr_abs)
QDCR_MP_UNARY(sqrt, mpfr_sqrt)
QDCR_MP_UNARY(log, mpfr_log)
QDCR_MP_UNARY(log10, mpfr_log10)
QDCR_MP_UNARY(exp, mpfr_exp)
QDCR_MP_UNARY(sin, mpfr_sin)
QDCR_MP_UNARY(cos, mpfr_cos)
#undef QDCR_MP_UNARY

Float atan2(const Float& y, const Float& x) {
  Float r(wider(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Float pi(mpfr_prec_t bits) {
  Float r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Float exp2i(long e, mpfr_prec_t bits) {
  Float r(bits);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }
Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  mpfr_prec_t p = std::max(a.bits(), b.bits());
  Complex r(p);
  Float t(p);
  mpfr_mul(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(r.re.raw(), r.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(r.im.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(r.im.raw(), r.im.raw(), t.raw(), MPFR_RNDN);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  Float n = norm(b);
  if (n.is_zero()) throw Error("complex division by zero");
  Complex r = a * conj(b);
  r.re /= n;
  r.im /= n;
  return r;
}

Complex operator*(const Complex& a, const Float& s) { return {a.re * s, a.im * s}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Float norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Float abs(const Complex& z) {
  Float r(z.bits());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

Float arg(const Complex& z) { return atan2(z.im, z.re); }

Complex sqrt(const Complex& z) {
  mpfr_prec_t p = z.bits();
  if (z.is_zero()) return Complex(p);
  // w = sqrt((|z| + |re|)/2); pick the half-plane from the sign of re.
  Float m = abs(z);
  Float half(0.5, p);
  Float w = sqrt((m + abs(z.re)) * half);
  Float two(2L, p);
  if (z.re.sign() >= 0) return {w, z.im / (two * w)};
  Float im = z.im.sign() >= 0 ? w : -w;
  return {abs(z.im) / (two * w), im};
}

Complex polar(const Float& r, const Float& theta) { return {r * cos(theta), r * sin(theta)}; }

Complex unit_root(std::int64_t num, std::int64_t den, mpfr_prec_t bits) {
  if (den <= 0) throw Error("unit_root: denominator must be positive");
  std::int64_t n = num % (2 * den);
  if (n < 0) n += 2 * den;
  Float theta = pi(bits + 16) * Float(static_cast<long>(n), bits + 16) / Float(static_cast<long>(den), bits + 16);
  Complex r = polar(Float(1L, bits + 16), theta);
  mpfr_prec_round(r.re.raw(), bits, MPFR_RNDN);
  mpfr_prec_round(r.im.raw(), bits, MPFR_RNDN);
  return r;
}

}  // namespace qdcr::mp
