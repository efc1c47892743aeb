#include "qdcr/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qdcr/error.hpp"
#include "qdcr/projection.hpp"

namespace qdcr {

namespace {

std::string fmt_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(digits - 1, 0), x);
  return buf;
}

}  // namespace

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.count < 1) throw Error("sweep needs at least one point");
  std::vector<double> t(static_cast<std::size_t>(spec.count));
  for (std::int64_t i = 0; i < spec.count; ++i) {
    t[i] = spec.count == 1 ? spec.start
                           : spec.start + (spec.stop - spec.start) * static_cast<double>(i) /
                                              static_cast<double>(spec.count - 1);
  }
  return t;
}

SweepRow sweep_point(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine, std::int64_t index, double t) {
  SweepRow row;
  row.index = index;
  row.t = t;
  row.q = spec.unit_circle ? std::polar(1.0, std::numbers::pi * t) : std::complex<double>(t, 0.0);
  auto start = std::chrono::steady_clock::now();
  try {
    if (engine.bits == 0) {
      auto ctx = make_double_context(row.q, dcr.d_max);
      row.value = amplitude_to_complex(evaluate(dcr, ctx), ctx);
      row.re = fmt_double(row.value.real(), engine.digits);
      row.im = fmt_double(row.value.imag(), engine.digits);
    } else {
      const mpfr_prec_t b = engine.bits;
      mp::Complex q(b);
      if (spec.unit_circle) {
        q = mp::polar(mp::Float(1L, b), mp::pi(b) * mp::Float(t, b));
      } else {
        q = mp::Complex(mp::Float(t, b), mp::Float(b));
      }
      auto ctx = make_extended_context(q, dcr.d_max);
      auto v = amplitude_to_complex(evaluate(dcr, ctx), ctx);
      row.value = v.to_complex();
      row.re = v.re.to_string(engine.digits);
      row.im = v.im.to_string(engine.digits);
    }
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<SweepRow> sweep_serial(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine) {
  auto grid = sweep_grid(spec);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back(sweep_point(dcr, spec, engine, i, grid[i]));
  return rows;
}

std::vector<SweepRow> sweep_parallel(const DCR& dcr, const SweepSpec& spec, const SweepEngine& engine) {
  auto grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) rows[i] = sweep_point(dcr, spec, engine, i, grid[i]);
  return rows;
}

}  // namespace qdcr
