#pragma once

// Many projections of one compiled DCR over a grid of q values.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qdcr/dcr.hpp"
#include "qdcr/mpreal.hpp"

namespace qdcr {

/// Grid parameter t runs over linspace(start, stop, count). On the unit circle
/// q = e^{i pi t} (so t = 1/h is the level-k root of unity); otherwise q = t.
struct SweepSpec {
  double start = 0.0;
  double stop = 1.0;
  std::int64_t count = 1;
  bool unit_circle = true;
};

/// bits == 0 selects double precision.
struct SweepEngine {
  mpfr_prec_t bits = 0;
  int digits = 17;
};

struct SweepRow {
  std::int64_t index = 0;
  double t = 0;
  std::complex<double> q;
  bool ok = false;
  std::complex<double> value;
  std::string re;
  std::string im;
  std::string error;
  double seconds = 0;
};

std::vector<double> sweep_grid(const SweepSpec& spec);

/// Reference loop.
std::vector<SweepRow> sweep_serial(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine);
/// Same rows, points distributed over OpenMP threads; row order is by index.
std::vector<SweepRow> sweep_parallel(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine);

/// One grid point; errors are captured in the row instead of thrown.
SweepRow sweep_point(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine, std::int64_t index, double t);

}  // namespace qdcr
