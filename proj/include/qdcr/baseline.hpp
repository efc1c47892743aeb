#pragma once

// Eager log-domain evaluation of the 6j at q = e^{i pi/h}, the conditioning
// diagnostics that explain why it fails, and recoupling-identity checks.

#include <cstdint>
#include <string>
#include <vector>

#include "qdcr/mpreal.hpp"
#include "qdcr/series.hpp"

namespace qdcr {

/// Natural logs: log_qint[n] = log(sin(n pi/h) / sin(pi/h)) for 1 <= n <= n_max,
/// log_qfact[n] the prefix sums (log_qfact[0] = 0).
template <class R>
struct LogQTable {
  std::int64_t h = 0;
  std::vector<R> log_qint;
  std::vector<R> log_qfact;
};

/// Throws when n_max >= h (the quantum integer [h] is zero).
LogQTable<double> log_qint_table(std::int64_t h, std::int64_t n_max);
LogQTable<mp::Float> log_qint_table_mp(std::int64_t h, std::int64_t n_max, mpfr_prec_t bits);

/// Signed log-sum-exp of the full Racah summand (triangle prefactors as half
/// log-sums) with max shift. Throws InadmissibleError unless admissible at k = h-2.
double lse_eval_sixj(const SixJLabels& labels, std::int64_t h);
mp::Float lse_eval_sixj_mp(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits);

struct Diagnostics {
  double value = 0;         ///< the 6j (real)
  double abs_value = 0;     ///< |S|
  double max_term = 0;      ///< max_z |T_z|, prefactor included
  double sum_terms = 0;     ///< sum_z |T_z|
  double kappa = 0;         ///< sum_terms / |S|
  double log10_kappa = 0;
  double delta_loss = 0;    ///< log10(max_term / |S|)
  double gamma_eager = 0;   ///< max_z log10(N_z D_z), unreduced factorial products
  double gamma_dcr = 0;     ///< max_z sum_d |e_d| log10|Phi_d(q^2)| over M_z
  std::int64_t terms = 0;   ///< nonvanishing summands
  double unit_roundoff = 0x1p-53;
};

/// Terms and value in `bits`-bit arithmetic at q = e^{i pi/h}.
Diagnostics diagnostics_sixj(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits = 256);

enum class IdentityKind { Orthogonality, Pentagon };

struct IdentityReport {
  double max_residual = 0;
  std::int64_t checks = 0;
  std::int64_t nontrivial = 0;  ///< checks whose right-hand side is nonzero
};

/// Maximum residual of the q-deformed orthogonality or Biedenharn-Elliott
/// relation over every label set with twice-spins <= min(max_tj, h-2).
IdentityReport identity_check(IdentityKind kind, std::int64_t max_tj, std::int64_t h, mpfr_prec_t bits);

/// The 6j at q = e^{i pi/h} through the DCR engine; zero when not admissible at level h-2.
mp::Float sixj_at_level(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits);

}  // namespace qdcr
