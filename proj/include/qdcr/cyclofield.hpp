#pragma once

// Exact arithmetic in Q(zeta_n) = Q[x] / Phi_n(x). Elements are dense
// rational coefficient vectors of length phi(n).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdcr/mpreal.hpp"

namespace qdcr {

class CyclotomicField;

class CycloElement {
 public:
  CycloElement() = default;
  CycloElement(std::shared_ptr<const CyclotomicField> field, std::vector<mpq_class> coeffs);

  const CyclotomicField& field() const { return *field_; }
  const std::shared_ptr<const CyclotomicField>& field_ptr() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  /// Rational when every coefficient above degree 0 vanishes.
  bool is_rational() const;
  CycloElement inverse() const;
  /// Sum c_i zeta^i with zeta = e^{2 pi i / n}.
  mp::Complex embed(mpfr_prec_t bits) const;
  std::string to_string() const;

  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const CycloElement& o);
  CycloElement operator-() const;
  bool operator==(const CycloElement& o) const;

 private:
  void check_same(const CycloElement& o) const;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpq_class> c_;
};

CycloElement operator+(CycloElement a, const CycloElement& b);
CycloElement operator-(CycloElement a, const CycloElement& b);
CycloElement operator*(const CycloElement& a, const CycloElement& b);
CycloElement operator/(const CycloElement& a, const CycloElement& b);

class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
 public:
  static std::shared_ptr<const CyclotomicField> make(std::int64_t n);

  std::int64_t order() const { return n_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  /// Phi_n in ascending powers.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  CycloElement from_int(std::int64_t v) const;
  CycloElement from_rational(const mpq_class& v) const;
  /// zeta^p for any integer p.
  CycloElement gen_pow(std::int64_t p) const;
  /// Reduces an arbitrary-degree rational polynomial (ascending) modulo Phi_n.
  CycloElement reduce(std::vector<mpq_class> poly) const;
  /// f(zeta^s) for an integer polynomial f (ascending).
  CycloElement eval_int_poly(const std::vector<std::int64_t>& f, std::int64_t s) const;

 private:
  explicit CyclotomicField(std::int64_t n);
  std::int64_t n_;
  std::vector<std::int64_t> modulus_;
};

}  // namespace qdcr
