#pragma once

// Finite q-hypergeometric series descriptors
//   S(q) = sum_z (-1)^z q^f(z) prod_i [A_i(z)]! / prod_j [B_j(z)]!
// and the quantum 6j-symbol as the flagship instance.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdcr/exponent.hpp"

namespace qdcr {

/// c0 + c1*z with c1 in {-1, 0, +1}.
struct AffineForm {
  std::int64_t c0 = 0;
  int c1 = 0;

  std::int64_t at(std::int64_t z) const { return c0 + c1 * z; }
  bool operator==(const AffineForm&) const = default;
};

/// f(z) = (f0 + f1 z + f2 z^2) / den. Only integral values are accepted at compile time.
struct PhasePoly {
  std::int64_t f0 = 0;
  std::int64_t f1 = 0;
  std::int64_t f2 = 0;
  std::int64_t den = 1;

  /// Throws Error when f(z) is not an integer.
  std::int64_t at(std::int64_t z) const;
  bool operator==(const PhasePoly&) const = default;
};

struct SeriesDescriptor {
  std::vector<AffineForm> num_args;
  std::vector<AffineForm> den_args;
  PhasePoly phase;
  bool alternating = false;
  CycloMonomial prefactor_radicand;
};

/// Twice-spin labels (j1..j6) of a 6j-symbol. Triads are
/// (1,2,3), (1,5,6), (2,4,6), (3,4,5).
struct SixJLabels {
  std::array<std::int64_t, 6> tj{};

  std::array<std::array<std::int64_t, 3>, 4> triads() const;
  bool operator==(const SixJLabels&) const = default;
};

struct SixJDescriptor {
  std::array<std::int64_t, 4> a{};
  std::array<std::int64_t, 3> b{};
  SixJLabels labels;
};

struct SummationBounds {
  std::int64_t z_min = 0;
  std::int64_t z_max = -1;
  bool empty() const { return z_min > z_max; }
};

/// |ta-tb| <= tc <= ta+tb, ta+tb+tc even, and ta+tb+tc <= 2k when a level is given.
bool triangle_admissible(std::int64_t ta, std::int64_t tb, std::int64_t tc,
                         std::optional<std::int64_t> level = std::nullopt);

/// Index (0..3) of the first inadmissible triad, if any.
std::optional<int> first_inadmissible_triad(const SixJLabels& labels,
                                            std::optional<std::int64_t> level = std::nullopt);
bool sixj_admissible(const SixJLabels& labels, std::optional<std::int64_t> level = std::nullopt);

/// a_i (triad sums) and b_y (quadrilateral sums), halved exactly. Throws
/// InadmissibleError naming the offending triad.
SixJDescriptor sixj_descriptor(const SixJLabels& labels);

/// The Racah form of the 6j with the product of the four triangle radicands
/// composed as one monomial.
SeriesDescriptor series_from_sixj(const SixJDescriptor& desc);

/// Triangle radicand [a+b-c]![a-b+c]![-a+b+c]! / [a+b+c+1]! for twice-spin inputs.
CycloMonomial triangle_radicand(std::int64_t ta, std::int64_t tb, std::int64_t tc);

/// Range where every factorial argument is non-negative. Throws for an unbounded series.
SummationBounds bounds(const SeriesDescriptor& desc);

/// M_{z+1} / M_z as a cyclotomic monomial.
CycloMonomial ratio_monomial(const SeriesDescriptor& desc, std::int64_t z);

/// The z-th summand (without the global prefactor), assembled directly from
/// factorials. Used as the reference for the recurrence.
CycloMonomial summand_monomial(const SeriesDescriptor& desc, std::int64_t z);

std::string to_string(const SixJLabels& labels);

}  // namespace qdcr
