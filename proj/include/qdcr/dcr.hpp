#pragma once

// The deferred cyclotomic representation: a parameter-free, integer-only
// description of a finite q-hypergeometric series.

#include <cstdint>
#include <string>
#include <vector>

#include "qdcr/exponent.hpp"
#include "qdcr/series.hpp"

namespace qdcr {

/// Compiled series. The summand at z is base * ratios[z_min] * ... * ratios[z-1];
/// the full value is sqrt(root^2 * rad) * sum of summands.
struct DCR {
  CycloMonomial base;
  std::vector<CycloMonomial> ratios;
  CycloMonomial root;
  CycloMonomial rad;
  std::int64_t z_min = 0;
  std::int64_t z_max = 0;
  Index d_max = 1;

  std::size_t term_count() const { return ratios.size() + 1; }
  bool operator==(const DCR&) const = default;
};

DCR compile(const SeriesDescriptor& desc);

/// Number of compile() calls in this process.
std::uint64_t compile_count();

/// Convenience: admissibility check, descriptor, series and compile in one go.
DCR compile_sixj(const SixJLabels& labels);

/// Largest cyclotomic index stored anywhere in the DCR (1 when there is none).
Index compute_d_max(const DCR& dcr);

std::string dcr_to_json(const DCR& dcr, int indent = -1);
/// Throws ParseError with the offending location.
DCR dcr_from_json(const std::string& text);

}  // namespace qdcr
