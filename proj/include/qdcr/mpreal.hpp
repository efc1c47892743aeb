#pragma once

// Thin RAII layer over MPFR. Binary results take the larger of the two
// operand precisions; every value knows its own precision.

#include <complex>
#include <cstdint>
#include <string>

#include <mpfr.h>

namespace qdcr::mp {

class Float {
 public:
  explicit Float(mpfr_prec_t bits = 53);
  Float(double x, mpfr_prec_t bits);
  Float(long x, mpfr_prec_t bits);
  Float(int x, mpfr_prec_t bits) : Float(static_cast<long>(x), bits) {}
  Float(const std::string& decimal, mpfr_prec_t bits);
  Float(const Float& o);
  Float(Float&& o) noexcept;
  Float& operator=(const Float& o);
  Float& operator=(Float&& o) noexcept;
  ~Float();

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 17) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Float& operator+=(const Float& o);
  Float& operator-=(const Float& o);
  Float& operator*=(const Float& o);
  Float& operator/=(const Float& o);
  Float operator-() const;

 private:
  mpfr_t v_;
};

Float operator+(const Float& a, const Float& b);
Float operator-(const Float& a, const Float& b);
Float operator*(const Float& a, const Float& b);
Float operator/(const Float& a, const Float& b);
bool operator<(const Float& a, const Float& b);
bool operator>(const Float& a, const Float& b);
bool operator<=(const Float& a, const Float& b);
bool operator>=(const Float& a, const Float& b);
bool operator==(const Float& a, const Float& b);

Float abs(const Float& x);
Float sqrt(const Float& x);
Float log(const Float& x);
Float log10(const Float& x);
Float exp(const Float& x);
Float sin(const Float& x);
Float cos(const Float& x);
Float atan2(const Float& y, const Float& x);
Float pi(mpfr_prec_t bits);
/// 2^e at the given precision.
Float exp2i(long e, mpfr_prec_t bits);

struct Complex {
  Float re;
  Float im;

  explicit Complex(mpfr_prec_t bits = 53) : re(bits), im(bits) {}
  Complex(Float r, Float i) : re(std::move(r)), im(std::move(i)) {}
  Complex(std::complex<double> z, mpfr_prec_t bits) : re(z.real(), bits), im(z.imag(), bits) {}

  mpfr_prec_t bits() const { return re.bits() > im.bits() ? re.bits() : im.bits(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Float& s);

Complex conj(const Complex& z);
Float norm(const Complex& z);
Float abs(const Complex& z);
Float arg(const Complex& z);
/// Principal branch, cut along the negative real axis.
Complex sqrt(const Complex& z);
Complex polar(const Float& r, const Float& theta);
/// e^{i*pi*num/den}, built from the reduced angle.
Complex unit_root(std::int64_t num, std::int64_t den, mpfr_prec_t bits);

}  // namespace qdcr::mp
