#include "qdcr/cyclofield.hpp"

#include <sstream>
#include <utility>

#include "qdcr/cyclotomic.hpp"
#include "qdcr/error.hpp"

namespace qdcr {

namespace {

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a / b over Q; b must be nonzero after trimming.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const mpq_class& lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0) continue;
    mpq_class c = a[i] / lead;
    std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

Poly mul_poly(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly sub_poly(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::shared_ptr<const CyclotomicField> CyclotomicField::make(std::int64_t n) {
  if (n < 1) throw Error("cyclotomic field order must be positive");
  return std::shared_ptr<const CyclotomicField>(new CyclotomicField(n));
}

CyclotomicField::CyclotomicField(std::int64_t n) : n_(n), modulus_(cyclotomic_coeffs(n)) {}

CycloElement CyclotomicField::from_rational(const mpq_class& v) const {
  std::vector<mpq_class> c(degree(), 0);
  if (!c.empty()) c[0] = v;
  return CycloElement(shared_from_this(), std::move(c));
}

CycloElement CyclotomicField::from_int(std::int64_t v) const { return from_rational(mpq_class(static_cast<long>(v))); }

CycloElement CyclotomicField::reduce(std::vector<mpq_class> poly) const {
  const std::size_t deg = degree();
  // Phi_n is monic, so the division needs no rational inverses.
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    mpq_class c = poly[i];
    std::size_t shift = i - deg;
    for (std::size_t j = 0; j <= deg; ++j) {
      if (modulus_[j] != 0) poly[shift + j] -= c * modulus_[j];
    }
  }
  poly.resize(deg, 0);
  return CycloElement(shared_from_this(), std::move(poly));
}

CycloElement CyclotomicField::gen_pow(std::int64_t p) const {
  std::int64_t e = p % n_;
  if (e < 0) e += n_;
  std::vector<mpq_class> poly(static_cast<std::size_t>(e) + 1, 0);
  poly[e] = 1;
  return reduce(std::move(poly));
}

CycloElement CyclotomicField::eval_int_poly(const std::vector<std::int64_t>& f, std::int64_t s) const {
  // Substitute x -> x^s with exponents taken mod n, then reduce once.
  std::int64_t step = s % n_;
  if (step < 0) step += n_;
  std::vector<mpq_class> poly(static_cast<std::size_t>(n_), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    std::int64_t e = static_cast<std::int64_t>((static_cast<__int128>(i) * step) % n_);
    poly[e] += mpq_class(static_cast<long>(f[i]));
  }
  return reduce(std::move(poly));
}

CycloElement::CycloElement(std::shared_ptr<const CyclotomicField> field, std::vector<mpq_class> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
}

void CycloElement::check_same(const CycloElement& o) const {
  if (!field_ || !o.field_ || field_->order() != o.field_->order()) {
    throw Error("cyclotomic field elements from different fields");
  }
}

bool CycloElement::is_zero() const {
  for (const auto& x : c_) {
    if (x != 0) return false;
  }
  return true;
}

bool CycloElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElement& CycloElement::operator*=(const CycloElement& o) { return *this = *this * o; }

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool CycloElement::operator==(const CycloElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

CycloElement CycloElement::inverse() const {
  if (is_zero()) throw Error("inverse of zero in cyclotomic field");
  // Extended Euclid on (Phi_n, a): track t with t*a = r (mod Phi_n).
  Poly r0;
  for (auto c : field_->modulus()) r0.push_back(mpq_class(static_cast<long>(c)));
  Poly r1 = c_;
  trim(r1);
  Poly t0;
  Poly t1{1};
  while (!r1.empty()) {
    auto [q, rem] = divmod(r0, r1);
    Poly t2 = sub_poly(t0, mul_poly(q, t1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant because Phi_n is irreducible.
  if (r0.size() != 1) throw Error("cyclotomic inverse: gcd is not constant");
  mpq_class inv = 1 / r0[0];
  for (auto& x : t0) x *= inv;
  return field_->reduce(std::move(t0));
}

mp::Complex CycloElement::embed(mpfr_prec_t bits) const {
  mp::Complex acc(bits);
  const std::int64_t n = field_->order();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mp::Float c(bits);
    mpfr_set_q(c.raw(), c_[i].get_mpq_t(), MPFR_RNDN);
    acc += mp::unit_root(2 * static_cast<std::int64_t>(i), n, bits) * c;
  }
  return acc;
}

std::string CycloElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  if (!a.field_ptr() || !b.field_ptr() || a.field().order() != b.field().order()) {
    throw Error("cyclotomic field elements from different fields");
  }
  return a.field().reduce(mul_poly(a.coeffs(), b.coeffs()));
}

CycloElement operator/(const CycloElement& a, const CycloElement& b) { return a * b.inverse(); }

}  // namespace qdcr
