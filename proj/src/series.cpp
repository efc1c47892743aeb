#include "qdcr/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "qdcr/error.hpp"
#include "qdcr/qfactor.hpp"

namespace qdcr {

std::int64_t PhasePoly::at(std::int64_t z) const {
  std::int64_t num = checked_add(checked_add(f0, checked_mul(f1, z)), checked_mul(f2, checked_mul(z, z)));
  if (den == 0) throw Error("phase denominator is zero");
  if (num % den != 0) {
    throw Error("non-integral phase f(" + std::to_string(z) + ") = " + std::to_string(num) + "/" +
                std::to_string(den) + "; half-integer q-powers are not supported");
  }
  return num / den;
}

std::array<std::array<std::int64_t, 3>, 4> SixJLabels::triads() const {
  return {{{tj[0], tj[1], tj[2]}, {tj[0], tj[4], tj[5]}, {tj[1], tj[3], tj[5]}, {tj[2], tj[3], tj[4]}}};
}

bool triangle_admissible(std::int64_t ta, std::int64_t tb, std::int64_t tc, std::optional<std::int64_t> level) {
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if (tc < std::abs(ta - tb) || tc > ta + tb) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  if (level && ta + tb + tc > 2 * *level) return false;
  return true;
}

std::optional<int> first_inadmissible_triad(const SixJLabels& labels, std::optional<std::int64_t> level) {
  auto tri = labels.triads();
  for (int i = 0; i < 4; ++i) {
    if (!triangle_admissible(tri[i][0], tri[i][1], tri[i][2], level)) return i;
  }
  return std::nullopt;
}

bool sixj_admissible(const SixJLabels& labels, std::optional<std::int64_t> level) {
  return !first_inadmissible_triad(labels, level).has_value();
}

namespace {

constexpr std::array<const char*, 4> kTriadNames = {"(j1,j2,j3)", "(j1,j5,j6)", "(j2,j4,j6)", "(j3,j4,j5)"};

}  // namespace

std::string to_string(const SixJLabels& labels) {
  std::string s;
  for (std::size_t i = 0; i < 6; ++i) {
    if (i) s += ',';
    s += std::to_string(labels.tj[i]);
  }
  return s;
}

SixJDescriptor sixj_descriptor(const SixJLabels& labels) {
  if (auto bad = first_inadmissible_triad(labels)) {
    auto t = labels.triads()[*bad];
    throw InadmissibleError("inadmissible triad " + std::string(kTriadNames[*bad]) + " with twice-spins (" +
                            std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
  }
  const auto& t = labels.tj;
  SixJDescriptor d;
  d.labels = labels;
  auto tri = labels.triads();
  for (int i = 0; i < 4; ++i) d.a[i] = (tri[i][0] + tri[i][1] + tri[i][2]) / 2;
  // Each quadrilateral sum is a sum of two triad sums minus twice a shared
  // edge, so it is even whenever the triads are admissible.
  d.b[0] = (t[0] + t[1] + t[3] + t[4]) / 2;
  d.b[1] = (t[0] + t[2] + t[3] + t[5]) / 2;
  d.b[2] = (t[1] + t[2] + t[4] + t[5]) / 2;
  return d;
}

CycloMonomial triangle_radicand(std::int64_t ta, std::int64_t tb, std::int64_t tc) {
  CycloMonomial m = mul(mul(qfact_monomial((ta + tb - tc) / 2), qfact_monomial((ta - tb + tc) / 2)),
                        qfact_monomial((-ta + tb + tc) / 2));
  return div(m, qfact_monomial((ta + tb + tc) / 2 + 1));
}

SeriesDescriptor series_from_sixj(const SixJDescriptor& desc) {
  SeriesDescriptor s;
  s.num_args.push_back({1, +1});
  for (auto a : desc.a) s.den_args.push_back({-a, +1});
  for (auto b : desc.b) s.den_args.push_back({b, -1});
  s.alternating = true;
  CycloMonomial rad = CycloMonomial::identity();
  for (const auto& tri : desc.labels.triads()) rad = mul(rad, triangle_radicand(tri[0], tri[1], tri[2]));
  s.prefactor_radicand = std::move(rad);
  return s;
}

SummationBounds bounds(const SeriesDescriptor& desc) {
  constexpr auto kLow = std::numeric_limits<std::int64_t>::min();
  constexpr auto kHigh = std::numeric_limits<std::int64_t>::max();
  std::int64_t lo = kLow;
  std::int64_t hi = kHigh;
  bool empty = false;
  auto visit = [&](const AffineForm& f) {
    switch (f.c1) {
      case +1: lo = std::max(lo, -f.c0); break;
      case -1: hi = std::min(hi, f.c0); break;
      case 0:
        if (f.c0 < 0) empty = true;
        break;
      default:
        throw Error("affine slope must be -1, 0 or +1, got " + std::to_string(f.c1));
    }
  };
  for (const auto& f : desc.num_args) visit(f);
  for (const auto& f : desc.den_args) visit(f);
  if (hi == kHigh || lo == kLow) throw Error("unbounded series: needs factorial arguments with slopes +1 and -1");
  if (empty) return {0, -1};
  return {lo, hi};
}

namespace {

// Contribution of one factorial [f(z)]! to M_{z+1}/M_z, with direction +1 for a
// numerator factorial and -1 for a denominator one.
CycloMonomial factorial_step(const AffineForm& f, std::int64_t z, int direction) {
  switch (f.c1) {
    case +1: {
      auto q = qint_monomial(f.c0 + z + 1);
      return direction > 0 ? q : pow(q, -1);
    }
    case -1: {
      auto q = qint_monomial(f.c0 - z);
      return direction > 0 ? pow(q, -1) : q;
    }
    default:
      return CycloMonomial::identity();
  }
}

}  // namespace

CycloMonomial ratio_monomial(const SeriesDescriptor& desc, std::int64_t z) {
  CycloMonomial r;
  r.sigma = desc.alternating ? -1 : 1;
  r.P = checked_sub(desc.phase.at(z + 1), desc.phase.at(z));
  try {
    for (const auto& f : desc.num_args) r = mul(r, factorial_step(f, z, +1));
    for (const auto& f : desc.den_args) r = mul(r, factorial_step(f, z, -1));
  } catch (const InadmissibleError& e) {
    throw Error("ratio at z=" + std::to_string(z) + " outside the admissible range: " + e.what());
  }
  return r;
}

CycloMonomial summand_monomial(const SeriesDescriptor& desc, std::int64_t z) {
  CycloMonomial m;
  m.sigma = (desc.alternating && (z % 2 != 0)) ? -1 : 1;
  m.P = desc.phase.at(z);
  for (const auto& f : desc.num_args) m = mul(m, qfact_monomial(f.at(z)));
  for (const auto& f : desc.den_args) m = div(m, qfact_monomial(f.at(z)));
  return m;
}

}  // namespace qdcr
