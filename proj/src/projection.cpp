#include "qdcr/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "qdcr/cyclotomic.hpp"
#include "qdcr/error.hpp"
#include "qdcr/qfactor.hpp"

namespace qdcr {

namespace {

using CD = std::complex<double>;

constexpr double kLog10Of2 = 0.30102999566398119521;

template <class T>
struct Ops;

template <>
struct Ops<CD> {
  static bool is_zero(const CD& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static CD from_int(const CD&, std::int64_t v) { return CD(static_cast<double>(v), 0.0); }
  static double log2_abs(const CD& x) {
    const double n = std::norm(x);
    return std::isnormal(n) && n < 0x1p+1000 ? 0.5 * std::log2(n) : std::log2(std::abs(x));
  }
  static bool abs_below(const CD& x, double c) { return std::norm(x) < c * c; }
  static CD inv(const CD& x) { return 1.0 / x; }
};

template <>
struct Ops<mp::Complex> {
  static bool is_zero(const mp::Complex& x) { return x.is_zero(); }
  static mp::Complex from_int(const mp::Complex& like, std::int64_t v) {
    return {mp::Float(static_cast<long>(v), like.bits()), mp::Float(like.bits())};
  }
  static double log2_abs(const mp::Complex& x) {
    mp::Float n = norm(x);
    if (n.is_zero()) return -std::numeric_limits<double>::infinity();
    mpfr_log2(n.raw(), n.raw(), MPFR_RNDN);
    return 0.5 * n.to_double();
  }
  static bool abs_below(const mp::Complex& x, double c) { return log2_abs(x) < std::log2(c); }
  static mp::Complex inv(const mp::Complex& x) { return from_int(x, 1) / x; }
};

template <>
struct Ops<CycloElement> {
  static bool is_zero(const CycloElement& x) { return x.is_zero(); }
  static CycloElement inv(const CycloElement& x) { return x.inverse(); }
};

template <>
struct Ops<mpq_class> {
  static bool is_zero(const mpq_class& x) { return x == 0; }
  static mpq_class inv(const mpq_class& x) { return mpq_class(1 / x); }
};

template <class T>
T ipow(T base, std::uint64_t e, const T& one) {
  T r = one;
  while (e) {
    if (e & 1U) r = T(r * base);
    e >>= 1U;
    if (e) base = T(base * base);
  }
  return r;
}

std::uint64_t uabs(std::int64_t x) { return x < 0 ? -static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x); }

// Complex double with a separate power-of-two exponent.
struct ScaledCD {
  CD m{1.0, 0.0};
  int ex = 0;

  void fix() {
    const double a = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    if (a > 0x1p+400 || (a < 0x1p-400 && a != 0.0)) {
      int e = 0;
      std::frexp(a, &e);
      m = CD(std::ldexp(m.real(), -e), std::ldexp(m.imag(), -e));
      ex += e;
    }
  }
  void mul(const CD& x) {
    m *= x;
    fix();
  }
  void mul(const ScaledCD& x) {
    m *= x.m;
    ex += x.ex;
    fix();
  }
  void mul_pow(const CD& x, std::uint64_t e) {
    const CD plain = ipow(x, e, CD(1.0, 0.0));
    const double a = std::max(std::fabs(plain.real()), std::fabs(plain.imag()));
    if (a < 0x1p+900 && a > 0x1p-900) {
      mul(plain);
      return;
    }
    ScaledCD base{x, 0};
    while (e) {
      if (e & 1U) mul(base);
      e >>= 1U;
      if (e) base.mul(base);
    }
  }
  void add(const ScaledCD& x) {
    if (x.m == CD(0.0, 0.0)) return;
    if (m == CD(0.0, 0.0)) {
      *this = x;
      return;
    }
    if (ex == x.ex) {
      m += x.m;
    } else {
      const int top = std::max(ex, x.ex);
      m = CD(std::ldexp(m.real(), ex - top), std::ldexp(m.imag(), ex - top)) +
          CD(std::ldexp(x.m.real(), x.ex - top), std::ldexp(x.m.imag(), x.ex - top));
      ex = top;
    }
    fix();
  }
  bool is_zero() const { return m == CD(0.0, 0.0); }
  CD value() const { return CD(std::ldexp(m.real(), ex), std::ldexp(m.imag(), ex)); }
};

template <class C>
C horner(const std::vector<std::int64_t>& coeffs, const C& x) {
  C v = Ops<C>::from_int(x, 0);
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + Ops<C>::from_int(x, coeffs[i]);
  return v;
}

mpfr_prec_t bits_of(const CD&) { return 53; }
mpfr_prec_t bits_of(const mp::Complex& x) { return x.bits(); }

// Fills phi[0..d_max] (phi[0] unused). Horner values below the precision floor
// are snapped to an exact zero and flagged.
template <class C>
std::vector<C> phi_values(const C& q, Index d_max, bool force_horner, std::vector<char>* vanishing) {
  if (Ops<C>::is_zero(q)) throw Error("projection point q must be nonzero");
  const Index n_max = std::max<Index>(d_max, 1);
  const C one = Ops<C>::from_int(q, 1);
  const C x = q * q;
  const double floor_log2 = vanishing_log2_threshold(bits_of(q));
  std::vector<C> phi(static_cast<std::size_t>(n_max) + 1, Ops<C>::from_int(q, 0));
  std::vector<char> van(phi.size(), 0);
  // den[n] collects phi[d] over proper divisors d of n, filled forward like a sieve.
  std::vector<C> den(phi.size(), one);
  C xn = one;
  for (Index n = 1; n <= n_max; ++n) {
    xn = xn * x;
    C num = xn - one;
    const double cut = 1e-8 * static_cast<double>(n);
    bool use_horner = force_horner || Ops<C>::abs_below(num, cut);
    if (use_horner) {
      C v = horner(cyclotomic_coeffs(n), x);
      if (Ops<C>::log2_abs(v) < floor_log2) {
        van[n] = 1;
        v = Ops<C>::from_int(q, 0);
      }
      phi[n] = std::move(v);
    } else {
      phi[n] = num / den[n];
    }
    for (Index m = 2 * n; m <= n_max; m += n) den[m] = den[m] * phi[n];
  }
  if (vanishing) *vanishing = std::move(van);
  return phi;
}

Exponent rad_balance(const CycloMonomial& rad) {
  Exponent e = rad.P;
  for (const auto& [d, k] : rad.exps) e = checked_add(e, checked_mul(k, totient(d)));
  return e;
}

template <class C>
void fill_numeric(ProjectionContext<C>& ctx, const C& q, Index d_max, bool force_horner) {
  ctx.q = q;
  ctx.one = Ops<C>::from_int(q, 1);
  ctx.zero = Ops<C>::from_int(q, 0);
  ctx.q_inv = Ops<C>::inv(q);
  ctx.d_max = std::max<Index>(d_max, 1);
  ctx.phi = phi_values(q, ctx.d_max, force_horner, &ctx.vanishing);
  ctx.phi_inv.assign(ctx.phi.size(), ctx.zero);
  // Double contexts sit on the sweep hot path and skip the log table.
  constexpr bool with_logs = !std::is_same_v<C, CD>;
  if (with_logs) ctx.log10_phi.assign(ctx.phi.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t d = 1; d < ctx.phi.size(); ++d) {
    if (ctx.vanishing[d]) continue;
    ctx.phi_inv[d] = Ops<C>::inv(ctx.phi[d]);
    if (with_logs) ctx.log10_phi[d] = Ops<C>::log2_abs(ctx.phi[d]) * kLog10Of2;
  }
}

template <class C>
C balanced_sqrt(const C& a, const C& r, Exponent e, const C& q, const C& s, const C& one) {
  // s = q^{1/2}; s^e and q^{-e} are both exact powers of the projection point.
  C se = ipow(e >= 0 ? s : C(one / s), uabs(e), one);
  C qme = ipow(e >= 0 ? C(one / q) : q, uabs(e), one);
  using std::sqrt;
  using mp::sqrt;
  return a * se * sqrt(C(r * qme));
}

}  // namespace

double vanishing_log2_threshold(mpfr_prec_t bits) { return -0.8 * static_cast<double>(bits); }

std::string to_string(const FieldTag& tag) {
  return std::visit(
      [](const auto& t) -> std::string {
        using V = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<V, ComplexDouble>) {
          return "ComplexDouble";
        } else if constexpr (std::is_same_v<V, ComplexExtended>) {
          return "ComplexExtended(" + std::to_string(t.bits) + ")";
        } else if constexpr (std::is_same_v<V, RootOfUnityExact>) {
          return "RootOfUnityExact(h=" + std::to_string(t.h) + ", bits=" + std::to_string(t.bits) + ")";
        } else {
          return "Classical";
        }
      },
      tag);
}

template <class T>
T ProjectionContext<T>::q_pow(Exponent p) const {
  if (period) {
    p %= *period;
    if (p < 0) p += *period;
    if (p > *period / 2) return ipow(q_inv, static_cast<std::uint64_t>(*period - p), one);
    return ipow(q, static_cast<std::uint64_t>(p), one);
  }
  return ipow(p >= 0 ? q : q_inv, uabs(p), one);
}

namespace {

// True when m contains a vanishing factor with a positive exponent.
template <class T>
bool hits_zero(const ProjectionContext<T>& ctx, const CycloMonomial& m) {
  bool zero_hit = false;
  for (const auto& [d, e] : m.exps) {
    if (d > ctx.d_max) {
      throw Error("monomial index " + std::to_string(d) + " exceeds projection table size " +
                  std::to_string(ctx.d_max));
    }
    if (ctx.vanishing[d]) {
      if (e < 0) throw PoleError("inadmissible: pole at Phi_" + std::to_string(d));
      zero_hit = true;
    }
  }
  return zero_hit;
}

// Double projection with a separate binary exponent: partial products and
// even the final value may lie outside double range.
// check_zero = false skips the table-range and vanishing scan; callers use it
// only when both are already known to be clear.
ScaledCD project_scaled(const DoubleContext& ctx, const CycloMonomial& m, bool check_zero = true) {
  if (check_zero && hits_zero(ctx, m)) return ScaledCD{CD(0.0, 0.0), 0};
  ScaledCD acc{ctx.q_pow(m.P)};
  if (m.sigma < 0) acc.m = -acc.m;
  for (const auto& [d, e] : m.exps) {
    const auto i = static_cast<std::size_t>(d);
    if (e == 1) {
      acc.mul(ctx.phi[i]);
    } else if (e == -1) {
      acc.mul(ctx.phi_inv[i]);
    } else {
      acc.mul_pow(e > 0 ? ctx.phi[i] : ctx.phi_inv[i], uabs(e));
    }
  }
  return acc;
}

}  // namespace

template <class T>
T ProjectionContext<T>::project(const CycloMonomial& m) const {
  if constexpr (std::is_same_v<T, CD>) {
    return project_scaled(*this, m).value();
  } else {
    if (hits_zero(*this, m)) return zero;
    T acc = q_pow(m.P);
    if (m.sigma < 0) acc = T(-acc);
    for (const auto& [d, e] : m.exps) {
      const auto i = static_cast<std::size_t>(d);
      if (e == 1) {
        acc = T(acc * phi[i]);
      } else if (e == -1) {
        acc = T(acc * phi_inv[i]);
      } else {
        acc = T(acc * ipow(e > 0 ? phi[i] : phi_inv[i], uabs(e), one));
      }
    }
    return acc;
  }
}

template <class T>
bool ProjectionContext<T>::has_vanishing() const {
  for (std::size_t d = 2; d < vanishing.size(); ++d) {
    if (vanishing[d]) return true;
  }
  return false;
}

std::vector<CD> phi_table(CD q, Index d_max, bool force_horner) {
  return phi_values(q, d_max, force_horner, nullptr);
}

std::vector<mp::Complex> phi_table(const mp::Complex& q, Index d_max, bool force_horner) {
  return phi_values(q, d_max, force_horner, nullptr);
}

DoubleContext make_double_context(CD q, Index d_max) {
  DoubleContext ctx;
  ctx.tag = ComplexDouble{};
  fill_numeric(ctx, q, d_max, false);
  return ctx;
}

DoubleContext make_double_context_at_level(std::int64_t h, Index d_max) {
  if (h < 2) throw Error("level parameter h must be at least 2");
  DoubleContext ctx;
  ctx.tag = ComplexDouble{};
  fill_numeric(ctx, std::polar(1.0, std::numbers::pi / static_cast<double>(h)), d_max, false);
  ctx.period = 2 * h;
  return ctx;
}

ExtendedContext make_extended_context(const mp::Complex& q, Index d_max) {
  if (q.bits() < 53) throw Error("extended precision needs at least 53 bits");
  ExtendedContext ctx;
  ctx.tag = ComplexExtended{q.bits()};
  fill_numeric(ctx, q, d_max, false);
  return ctx;
}

ExtendedContext make_extended_context_at_level(std::int64_t h, mpfr_prec_t bits, Index d_max) {
  if (h < 2) throw Error("level parameter h must be at least 2");
  if (bits < 53) throw Error("extended precision needs at least 53 bits");
  ExtendedContext ctx;
  ctx.tag = ComplexExtended{bits};
  fill_numeric(ctx, mp::unit_root(1, h, bits), d_max, false);
  ctx.period = 2 * h;
  return ctx;
}

ExtendedContext make_root_of_unity_context(std::int64_t h, mpfr_prec_t bits, Index d_max) {
  if (h < 3) throw Error("root-of-unity projection needs h >= 3");
  if (bits < 53) throw Error("extended precision needs at least 53 bits");
  ExtendedContext ctx;
  ctx.tag = RootOfUnityExact{h, bits};
  fill_numeric(ctx, mp::unit_root(1, h, bits), d_max, true);
  ctx.period = 2 * h;
  // q^2 is a primitive h-th root, so Phi_d(q^2) = 0 exactly when d = h.
  for (std::size_t d = 2; d < ctx.phi.size(); ++d) {
    bool expect = static_cast<std::int64_t>(d) == h;
    if (ctx.vanishing[d] != expect) {
      ctx.vanishing[d] = expect;
      if (expect) {
        ctx.phi[d] = ctx.zero;
        ctx.phi_inv[d] = ctx.zero;
        ctx.log10_phi[d] = -std::numeric_limits<double>::infinity();
      } else {
        throw Error("root-of-unity table: Phi_" + std::to_string(d) + " fell below the precision floor");
      }
    }
  }
  return ctx;
}

ExactFieldContext make_exact_field_context(std::int64_t h, Index d_max) {
  if (h < 3) throw Error("exact cyclotomic field needs h >= 3");
  auto field = CyclotomicField::make(2 * h);
  ExactFieldContext ctx;
  ctx.tag = RootOfUnityExact{h, 0};
  ctx.q = field->gen_pow(1);
  ctx.q_inv = field->gen_pow(-1);
  ctx.one = field->from_int(1);
  ctx.zero = field->from_int(0);
  ctx.period = 2 * h;
  ctx.d_max = std::max<Index>(d_max, 1);
  const auto n = static_cast<std::size_t>(ctx.d_max) + 1;
  ctx.phi.assign(n, ctx.zero);
  ctx.phi_inv.assign(n, ctx.zero);
  ctx.vanishing.assign(n, 0);
  ctx.log10_phi.assign(n, -std::numeric_limits<double>::infinity());
  for (std::size_t d = 1; d < n; ++d) {
    ctx.phi[d] = field->eval_int_poly(cyclotomic_coeffs(static_cast<std::int64_t>(d)), 2);
    if (ctx.phi[d].is_zero()) {
      ctx.vanishing[d] = 1;
      continue;
    }
    ctx.phi_inv[d] = ctx.phi[d].inverse();
    ctx.log10_phi[d] = Ops<mp::Complex>::log2_abs(ctx.phi[d].embed(64)) * kLog10Of2;
  }
  return ctx;
}

ClassicalContext make_classical_context(Index d_max) {
  ClassicalContext ctx;
  ctx.tag = Classical{};
  ctx.q = 1;
  ctx.q_inv = 1;
  ctx.one = 1;
  ctx.zero = 0;
  ctx.period = 1;
  ctx.d_max = std::max<Index>(d_max, 1);
  const auto n = static_cast<std::size_t>(ctx.d_max) + 1;
  ctx.phi.assign(n, mpq_class(0));
  ctx.phi_inv.assign(n, mpq_class(0));
  ctx.vanishing.assign(n, 0);
  ctx.log10_phi.assign(n, -std::numeric_limits<double>::infinity());
  // Phi_1(1) = 0 never enters a monomial (indices start at 2).
  if (n > 1) ctx.vanishing[1] = 1;
  for (std::size_t d = 2; d < n; ++d) {
    auto v = phi_at_one(static_cast<std::int64_t>(d));
    ctx.phi[d] = v;
    ctx.phi_inv[d] = mpq_class(mpz_class(1), mpz_class(static_cast<long>(v)));
    ctx.log10_phi[d] = std::log10(static_cast<double>(v));
  }
  return ctx;
}

template <class T>
Amplitude<T> evaluate(const DCR& dcr, const ProjectionContext<T>& ctx) {
  const Index needed = compute_d_max(dcr);
  if (ctx.d_max < needed) {
    throw Error("projection table covers d <= " + std::to_string(ctx.d_max) + " but the DCR needs " +
                std::to_string(needed));
  }
  if constexpr (std::is_same_v<T, CD>) {
    // Terms and their running ratios leave double range long before the sum
    // does, so the whole recurrence runs on mantissa/exponent pairs.
    const bool check = ctx.has_vanishing();
    ScaledCD base = project_scaled(ctx, dcr.root, check);
    base.mul(project_scaled(ctx, dcr.base, check));
    ScaledCD sum = base;
    ScaledCD run = base;
    for (const auto& ratio : dcr.ratios) {
      const ScaledCD v = project_scaled(ctx, ratio, check);
      if (v.is_zero()) break;
      run.mul(v);
      sum.add(run);
    }
    Amplitude<CD> out{sum.value(), ctx.project(dcr.rad), rad_balance(dcr.rad)};
    auto finite = [](const CD& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(out.a) || !finite(out.r)) {
      throw NonFiniteError("double-precision projection overflowed or produced NaN; use an extended-precision engine");
    }
    return out;
  }
  // Pi(root) * Pi(base) projected as one monomial: the two factors are
  // individually far outside double range once j passes ~100.
  const T base = ctx.project(mul(dcr.root, dcr.base));
  T sum = base;
  T run = ctx.one;
  for (const auto& ratio : dcr.ratios) {
    T v = ctx.project(ratio);
    if (Ops<T>::is_zero(v)) break;
    run = T(run * v);
    sum = T(sum + base * run);
  }
  return Amplitude<T>{sum, ctx.project(dcr.rad), rad_balance(dcr.rad)};
}

std::vector<CycloMonomial> cumulative_monomials(const DCR& dcr) {
  std::vector<CycloMonomial> out;
  out.reserve(dcr.ratios.size() + 1);
  out.push_back(dcr.base);
  for (const auto& r : dcr.ratios) out.push_back(mul(out.back(), r));
  return out;
}

template <class T>
std::vector<T> project_terms(const DCR& dcr, const ProjectionContext<T>& ctx) {
  std::vector<T> out;
  for (const auto& m : cumulative_monomials(dcr)) out.push_back(ctx.project(m));
  return out;
}

CD amplitude_to_complex(const Amplitude<CD>& v, const DoubleContext& ctx) {
  const CD one(1.0, 0.0);
  return balanced_sqrt(v.a, v.r, v.rad_balance, ctx.q, std::sqrt(ctx.q), one);
}

mp::Complex amplitude_to_complex(const Amplitude<mp::Complex>& v, const ExtendedContext& ctx) {
  return balanced_sqrt(v.a, v.r, v.rad_balance, ctx.q, mp::sqrt(ctx.q), ctx.one);
}

mp::Complex amplitude_to_complex(const Amplitude<CycloElement>& v, std::int64_t h, mpfr_prec_t bits) {
  mp::Complex one = Ops<mp::Complex>::from_int(mp::Complex(bits), 1);
  return balanced_sqrt(v.a.embed(bits), v.r.embed(bits), v.rad_balance, mp::unit_root(1, h, bits),
                       mp::unit_root(1, 2 * h, bits), one);
}

mp::Complex amplitude_to_complex(const ClassicalValue& v, mpfr_prec_t bits) {
  mp::Float a(bits);
  mp::Float r(bits);
  mpfr_set_q(a.raw(), v.a.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(r.raw(), v.r.get_mpq_t(), MPFR_RNDN);
  if (r.sign() >= 0) return {a * mp::sqrt(r), mp::Float(bits)};
  return {mp::Float(bits), a * mp::sqrt(-r)};
}

CD principal_amplitude(const Amplitude<CD>& v) { return v.a * std::sqrt(v.r); }

ClassicalValue classical_project(const DCR& dcr) { return evaluate(dcr, make_classical_context(dcr.d_max)); }

Amplitude<CycloElement> exact_field_eval(const DCR& dcr, std::int64_t h) {
  return evaluate(dcr, make_exact_field_context(h, dcr.d_max));
}

bool vanishes_at(const CycloMonomial& m, std::int64_t h) { return m.exps[h] > 0; }

template class ProjectionContext<CD>;
template class ProjectionContext<mp::Complex>;
template class ProjectionContext<CycloElement>;
template class ProjectionContext<mpq_class>;

template Amplitude<CD> evaluate(const DCR&, const ProjectionContext<CD>&);
template Amplitude<mp::Complex> evaluate(const DCR&, const ProjectionContext<mp::Complex>&);
template Amplitude<CycloElement> evaluate(const DCR&, const ProjectionContext<CycloElement>&);
template Amplitude<mpq_class> evaluate(const DCR&, const ProjectionContext<mpq_class>&);

template std::vector<CD> project_terms(const DCR&, const ProjectionContext<CD>&);
template std::vector<mp::Complex> project_terms(const DCR&, const ProjectionContext<mp::Complex>&);
template std::vector<CycloElement> project_terms(const DCR&, const ProjectionContext<CycloElement>&);
template std::vector<mpq_class> project_terms(const DCR&, const ProjectionContext<mpq_class>&);

}  // namespace qdcr
