#pragma once

// Field projections Pi_q: send q and every Phi_d(q^2) to values in a target
// field, then run the ratio recurrence of a compiled DCR.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qdcr/cyclofield.hpp"
#include "qdcr/dcr.hpp"
#include "qdcr/exponent.hpp"
#include "qdcr/mpreal.hpp"

namespace qdcr {

struct ComplexDouble {};
struct ComplexExtended {
  mpfr_prec_t bits = 256;
};
/// q = e^{i pi / h}; Phi_d(q^2) by Horner on exact coefficients, Phi_h is exactly zero.
struct RootOfUnityExact {
  std::int64_t h = 3;
  mpfr_prec_t bits = 512;
};
struct Classical {};
using FieldTag = std::variant<ComplexDouble, ComplexExtended, RootOfUnityExact, Classical>;

std::string to_string(const FieldTag& tag);

/// a * sqrt(r). rad_balance = P_rad + sum_d e_d phi(d) fixes the branch of the
/// square root (see amplitude_to_complex).
template <class T>
struct Amplitude {
  T a;
  T r;
  Exponent rad_balance = 0;
};

using ClassicalValue = Amplitude<mpq_class>;

template <class T>
class ProjectionContext {
 public:
  FieldTag tag;
  T q;
  T q_inv;
  T one;
  T zero;
  /// q^period == 1 exactly; lets q^P reduce P first.
  std::optional<std::int64_t> period;
  /// Indexed by d (0 and 1 unused except phi[1] = q^2 - 1 for the recursion).
  std::vector<T> phi;
  std::vector<T> phi_inv;
  std::vector<char> vanishing;
  /// log10 |Phi_d(q^2)|, -inf where Phi_d vanishes. Left empty in double contexts.
  std::vector<double> log10_phi;
  Index d_max = 1;

  T q_pow(Exponent p) const;
  /// sigma q^P prod phi[d]^e_d. Exact zero on a vanishing factor with e_d > 0,
  /// PoleError when e_d < 0.
  T project(const CycloMonomial& m) const;
  bool has_vanishing() const;
};

using DoubleContext = ProjectionContext<std::complex<double>>;
using ExtendedContext = ProjectionContext<mp::Complex>;
using ExactFieldContext = ProjectionContext<CycloElement>;
using ClassicalContext = ProjectionContext<mpq_class>;

/// Threshold below which a Horner value counts as an exact zero: 2^{-0.8 bits}.
double vanishing_log2_threshold(mpfr_prec_t bits);

DoubleContext make_double_context(std::complex<double> q, Index d_max);
/// q = e^{i pi / h}.
DoubleContext make_double_context_at_level(std::int64_t h, Index d_max);
ExtendedContext make_extended_context(const mp::Complex& q, Index d_max);
ExtendedContext make_extended_context_at_level(std::int64_t h, mpfr_prec_t bits, Index d_max);
ExtendedContext make_root_of_unity_context(std::int64_t h, mpfr_prec_t bits, Index d_max);
ExactFieldContext make_exact_field_context(std::int64_t h, Index d_max);
ClassicalContext make_classical_context(Index d_max);

/// Phi_d(q^2) for 1 <= d <= d_max by the value recursion, falling back to
/// Horner when |q^{2d} - 1| < 1e-8 d or `force_horner` is set.
std::vector<std::complex<double>> phi_table(std::complex<double> q, Index d_max, bool force_horner = false);
std::vector<mp::Complex> phi_table(const mp::Complex& q, Index d_max, bool force_horner = false);

template <class T>
T project_monomial(const CycloMonomial& m, const ProjectionContext<T>& ctx) {
  return ctx.project(m);
}

/// The ratio recurrence with early exit on a vanishing ratio.
template <class T>
Amplitude<T> evaluate(const DCR& dcr, const ProjectionContext<T>& ctx);

/// Every summand Pi(M_z) with M_z = base * prod R composed exactly first; no
/// early exit. Used as the no-break reference and by the diagnostics.
template <class T>
std::vector<T> project_terms(const DCR& dcr, const ProjectionContext<T>& ctx);

/// M_z for z = z_min..z_max as exact monomials.
std::vector<CycloMonomial> cumulative_monomials(const DCR& dcr);

/// a * q^{E/2} * sqrt(r q^{-E}) with E = rad_balance and q^{1/2} principal.
/// On |q| = 1 the radicand r q^{-E} is real, so the branch follows the sign
/// of the real square-free part instead of the arbitrary phase of r.
std::complex<double> amplitude_to_complex(const Amplitude<std::complex<double>>& v, const DoubleContext& ctx);
mp::Complex amplitude_to_complex(const Amplitude<mp::Complex>& v, const ExtendedContext& ctx);
/// Embeds a and r at zeta_{2h} -> e^{i pi / h}.
mp::Complex amplitude_to_complex(const Amplitude<CycloElement>& v, std::int64_t h, mpfr_prec_t bits);
/// a * sqrt(r) with r < 0 giving an imaginary result.
mp::Complex amplitude_to_complex(const ClassicalValue& v, mpfr_prec_t bits);

/// Plain principal-branch a * sqrt(r).
std::complex<double> principal_amplitude(const Amplitude<std::complex<double>>& v);

ClassicalValue classical_project(const DCR& dcr);
Amplitude<CycloElement> exact_field_eval(const DCR& dcr, std::int64_t h);

/// e_h > 0.
bool vanishes_at(const CycloMonomial& m, std::int64_t h);

/// Squared amplitude a^2 r, which is branch-free.
template <class T>
T squared(const Amplitude<T>& v) {
  return T(v.a * v.a * v.r);
}

}  // namespace qdcr
