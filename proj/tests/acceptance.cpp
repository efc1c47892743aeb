// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gen.hpp"
#include "oracles.hpp"
#include "qdcr/baseline.hpp"
#include "qdcr/dcr.hpp"
#include "qdcr/projection.hpp"
#include "qdcr/qfactor.hpp"
#include "qdcr/series.hpp"
#include "qdcr/statesum.hpp"
#include "qdcr/sweep.hpp"

using namespace qdcr;
using CD = std::complex<double>;

namespace {

// Pinned tolerances.
constexpr double kTruthRelTol = 5e-5;         // 1: all printed digits of the truth column
constexpr double kDeltaLossAbsTol = 0.1;      // 3
constexpr double kTable1RelTol = 0.01;        // 3: max|T_z| and |S|
constexpr double kLogKappaAbsTol = 0.05;      // 4
constexpr double kGammaRelTol = 0.05;         // 4
constexpr double kOracleDoubleTol = 1e-10;    // 5
constexpr double kOracleMpTol = 1e-100;       // 5, at 512 bits
constexpr int kOracleSamples = 200;           // 5
constexpr std::int64_t kOracleMaxN = 300;     // 5
constexpr int kHomomorphismChecks = 10000;    // 7
constexpr double kNumericHomTol = 1e-12;      // 7
constexpr std::int64_t kRouMaxH = 24;         // 8
constexpr std::int64_t kRouMaxTj = 16;        // 8: spins <= 8
constexpr double kRouTol = 1e-100;            // 8, at 512 bits
constexpr double kIdentityTol = 1e-50;        // 9, at 256 bits, h = 7
constexpr double kSizeExponentMax = 1.3;      // 10
constexpr double kProjectionSpeedup = 100.0;  // 10

SixJLabels sym(std::int64_t tj) { return SixJLabels{{tj, tj, tj, tj, tj, tj}}; }

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double rel(const mp::Complex& got, const mp::Complex& want) {
  return (mp::abs(got - want) / mp::abs(want)).to_double();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome criterion1() {
  const std::int64_t js[] = {30, 50, 70, 90, 110};
  const double truth[] = {-1.0930e-3, 9.1082e-4, -7.6283e-4, -6.4428e-4, 2.8290e-4};
  bool ok = true;
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    const auto d = compile_sixj(sym(2 * js[i]));
    auto ctx = make_extended_context_at_level(502, 2048, d.d_max);
    const double v = amplitude_to_complex(evaluate(d, ctx), ctx).re.to_double();
    worst = std::max(worst, rel(v, truth[i]));
    ok = ok && rel(v, truth[i]) <= kTruthRelTol;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst relative deviation %.2e (tol %.0e)", worst, kTruthRelTol);
  return {ok, buf};
}

Outcome criterion2() {
  const auto l = sym(180);
  const double lse = lse_eval_sixj(l, 502);
  const auto d = compile_sixj(l);
  auto ctx = make_double_context_at_level(502, d.d_max);
  const double dcr = amplitude_to_complex(evaluate(d, ctx), ctx).real();
  char buf[128];
  std::snprintf(buf, sizeof buf, "j=90: lse-f64 %+.4e, dcr-f64 %+.4e, truth -6.4428e-04", lse, dcr);
  return {lse > 0 && dcr < 0, buf};
}

Outcome criterion3() {
  struct Row {
    std::int64_t j, k;
    double max_t, abs_s, dl;
  };
  const Row rows[] = {{50, 200, 6.03e3, 2.19e-3, 6.4}, {100, 400, 2.96e10, 7.80e-4, 13.6}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    auto d = diagnostics_sixj(sym(2 * r.j), r.k + 2, 256);
    const bool row_ok = std::abs(d.delta_loss - r.dl) <= kDeltaLossAbsTol && rel(d.max_term, r.max_t) <= kTable1RelTol &&
                        rel(d.abs_value, r.abs_s) <= kTable1RelTol;
    ok = ok && row_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "j=%lld: maxT %.3e |S| %.3e dloss %.2f; ", static_cast<long long>(r.j), d.max_term,
                  d.abs_value, d.delta_loss);
    detail += buf;
  }
  return {ok, detail};
}

Outcome criterion4() {
  struct Row {
    std::int64_t j, k;
    double lk, ge, gd;
  };
  const Row rows[] = {{10, 40, 1.27, 61.1, 19.0},       {50, 200, 7.10, 560.1, 104.5},
                      {100, 400, 14.39, 1352.7, 212.5}, {200, 800, 28.97, 3177.3, 429.1},
                      {400, 1600, 58.12, 7307.1, 862.8}, {500, 2000, 72.70, 9518.5, 1079.8}};
  bool kappa_ok = true;
  bool gamma_ok = true;
  bool monotone = true;
  double prev_dg = -1;
  double worst_ge = 0, worst_gd = 0;
  for (const auto& r : rows) {
    auto d = diagnostics_sixj(sym(2 * r.j), r.k + 2, 512);
    if (r.j <= 100) kappa_ok = kappa_ok && std::abs(d.log10_kappa - r.lk) <= kLogKappaAbsTol;
    worst_ge = std::max(worst_ge, rel(d.gamma_eager, r.ge));
    worst_gd = std::max(worst_gd, rel(d.gamma_dcr, r.gd));
    gamma_ok = gamma_ok && rel(d.gamma_eager, r.ge) <= kGammaRelTol && rel(d.gamma_dcr, r.gd) <= kGammaRelTol;
    const double dg = d.gamma_eager - d.gamma_dcr;
    monotone = monotone && dg > prev_dg;
    prev_dg = dg;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "log10 kappa %s; gamma worst rel dev eager %.3f dcr %.3f (tol %.2f); dgamma %s",
                kappa_ok ? "ok" : "off", worst_ge, worst_gd, kGammaRelTol, monotone ? "increasing" : "NOT increasing");
  return {kappa_ok && gamma_ok && monotone, buf};
}

Outcome criterion5() {
  // q = e^{i theta} with |sin theta| >= 0.3 so [300]! stays inside double range.
  double worst_d = 0, worst_mp = 0;
  for (int i = 0; i < kOracleSamples; ++i) {
    const std::int64_t n = gen::uniform(1, kOracleMaxN);
    const double theta = gen::uniform_real(0.3, 3.14159265358979 - 0.3);
    const CD q = std::polar(1.0, theta);

    // Reference at 512 bits from the same double q.
    const mpfr_prec_t bits = 512;
    const mp::Complex qx(q, bits);
    const mp::Complex qint_ref = oracle::qint_direct(n, qx);
    mp::Complex fact_ref = qint_ref;
    for (std::int64_t m = 1; m < n; ++m) fact_ref = fact_ref * oracle::qint_direct(m, qx);

    auto dctx = make_double_context(q, n);
    const mp::Complex qint_d(dctx.project(qint_monomial(n)), bits);
    const mp::Complex fact_d(dctx.project(qfact_monomial(n)), bits);
    worst_d = std::max({worst_d, rel(qint_d, qint_ref), rel(fact_d, fact_ref)});

    auto xctx = make_extended_context(qx, n);
    worst_mp = std::max({worst_mp, rel(xctx.project(qint_monomial(n)), qint_ref),
                         rel(xctx.project(qfact_monomial(n)), fact_ref)});
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "worst relative error double %.2e (tol %.0e), 512-bit %.2e (tol %.0e)", worst_d,
                kOracleDoubleTol, worst_mp, kOracleMpTol);
  return {worst_d <= kOracleDoubleTol && worst_mp <= kOracleMpTol, buf};
}

Outcome criterion6() {
  std::int64_t checked = 0, bad = 0;
  oracle::Tj t;
  for (t[0] = 0; t[0] <= 6; ++t[0])
    for (t[1] = 0; t[1] <= 6; ++t[1])
      for (t[2] = 0; t[2] <= 6; ++t[2])
        for (t[3] = 0; t[3] <= 6; ++t[3])
          for (t[4] = 0; t[4] <= 6; ++t[4])
            for (t[5] = 0; t[5] <= 6; ++t[5]) {
              if (!oracle::sixj_ok(t)) continue;
              ++checked;
              if (squared(classical_project(compile_sixj(SixJLabels{t}))) != oracle::classical_sixj_squared(t)) ++bad;
            }
  return {bad == 0 && checked > 0, std::to_string(checked) + " admissible symbols, " + std::to_string(bad) +
                                       " mismatches"};
}

Outcome criterion7() {
  const std::int64_t h = 13;
  auto dctx = make_double_context(std::polar(1.0, 0.5772156649), 40);
  auto xctx = make_extended_context(mp::polar(mp::Float(1L, 256), mp::Float(2.718281828, 256)), 40);
  auto cctx = make_classical_context(40);
  auto fctx = make_exact_field_context(h, 40);
  std::int64_t fails = 0;
  double worst = 0;
  for (int i = 0; i < kHomomorphismChecks; ++i) {
    const auto a = gen::monomial(40, 3, 5, 40);
    const auto b = gen::monomial(40, 3, 5, 40);
    const auto ab = mul(a, b);
    const auto s = sqrt_split(a);
    if (mul(pow(s.root, 2), s.rad) != a) ++fails;
    for (const auto& e : s.rad.exps) fails += e.exp != 1;

    const CD pd = dctx.project(a) * dctx.project(b);
    const double ed = std::abs(dctx.project(ab) - pd) / std::abs(pd);
    const CD rd = dctx.project(s.root) * dctx.project(s.root) * dctx.project(s.rad);
    const double sd = std::abs(rd - dctx.project(a)) / std::abs(rd);
    const double ex = rel(xctx.project(ab), xctx.project(a) * xctx.project(b));
    const double sx = rel(xctx.project(s.root) * xctx.project(s.root) * xctx.project(s.rad), xctx.project(a));
    worst = std::max({worst, ed, sd, ex, sx});

    if (cctx.project(ab) != cctx.project(a) * cctx.project(b)) ++fails;
    if (cctx.project(s.root) * cctx.project(s.root) * cctx.project(s.rad) != cctx.project(a)) ++fails;
    // The exact field has a pole at Phi_h; keep those draws to the other regimes.
    if (a.exps[h] == 0 && b.exps[h] == 0) {
      if (!(fctx.project(ab) == fctx.project(a) * fctx.project(b))) ++fails;
      if (!(fctx.project(s.root) * fctx.project(s.root) * fctx.project(s.rad) == fctx.project(a))) ++fails;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d draws, %lld exact failures, worst numeric relative error %.2e (tol %.0e)",
                kHomomorphismChecks, static_cast<long long>(fails), worst, kNumericHomTol);
  return {fails == 0 && worst <= kNumericHomTol, buf};
}

Outcome criterion8() {
  std::int64_t symbols = 0, zero_checks = 0, bad_zero = 0;
  double worst = 0;
  for (std::int64_t h = 3; h <= kRouMaxH; ++h) {
    const std::int64_t k = h - 2;
    auto ctx = make_root_of_unity_context(h, 512, 2 * kRouMaxTj + 2);
    std::vector<SixJLabels> reps;
    oracle::Tj t;
    const std::int64_t top = std::min(kRouMaxTj, k);
    for (t[0] = 0; t[0] <= top; ++t[0])
      for (t[1] = 0; t[1] <= top; ++t[1])
        for (t[2] = 0; t[2] <= top; ++t[2])
          for (t[3] = 0; t[3] <= top; ++t[3])
            for (t[4] = 0; t[4] <= top; ++t[4])
              for (t[5] = 0; t[5] <= top; ++t[5]) {
                if (!oracle::sixj_ok(t, k)) continue;
                // One representative per tetrahedral symmetry class.
                if (canonical_key(SixJLabels{t}) != t) continue;
                reps.push_back(SixJLabels{t});
              }
    std::vector<double> err(reps.size(), 0.0);
    std::vector<std::int64_t> zc(reps.size(), 0), zb(reps.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto s = series_from_sixj(sixj_descriptor(reps[i]));
      const auto d = compile(s);
      // Full range, every summand assembled from factorials, vanishing ones included.
      mp::Complex full(512);
      mp::Float mag(512);
      for (std::int64_t z = d.z_min; z <= d.z_max; ++z) {
        const auto m = summand_monomial(s, z);
        const auto v = ctx.project(m);
        full += v;
        mag += mp::abs(v);
      }
      const mp::Complex ref = ctx.project(d.root) * full;
      const mp::Float scale = mp::abs(ctx.project(d.root)) * mag;
      const auto amp = evaluate(d, ctx);
      err[i] = scale.is_zero() ? mp::abs(amp.a).to_double() : (mp::abs(amp.a - ref) / scale).to_double();

      std::vector<CycloMonomial> ms = cumulative_monomials(d);
      ms.insert(ms.end(), d.ratios.begin(), d.ratios.end());
      ms.push_back(d.root);
      ms.push_back(d.rad);
      for (std::int64_t z = d.z_min; z <= d.z_max; ++z) ms.push_back(summand_monomial(s, z));
      for (const auto& m : ms) {
        if (!vanishes_at(m, h)) continue;
        ++zc[i];
        const auto v = ctx.project(m);
        if (!v.re.is_zero() || !v.im.is_zero()) ++zb[i];
      }
    }
    symbols += static_cast<std::int64_t>(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      worst = std::max(worst, err[i]);
      zero_checks += zc[i];
      bad_zero += zb[i];
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%lld symbol classes, worst |early - full| / sum|terms| %.2e (tol %.0e); %lld e_h>0 monomials, %lld "
                "not exactly zero",
                static_cast<long long>(symbols), worst, kRouTol, static_cast<long long>(zero_checks),
                static_cast<long long>(bad_zero));
  return {worst <= kRouTol && bad_zero == 0 && zero_checks > 0, buf};
}

Outcome criterion9() {
  auto o = identity_check(IdentityKind::Orthogonality, 5, 7, 256);
  auto p = identity_check(IdentityKind::Pentagon, 5, 7, 256);
  char buf[200];
  std::snprintf(buf, sizeof buf, "orthogonality %.2e over %lld checks, Biedenharn-Elliott %.2e over %lld checks",
                o.max_residual, static_cast<long long>(o.checks), p.max_residual, static_cast<long long>(p.checks));
  return {o.max_residual <= kIdentityTol && p.max_residual <= kIdentityTol && o.nontrivial > 0 && p.nontrivial > 0,
          buf};
}

Outcome criterion10() {
  std::vector<double> js, sizes;
  for (std::int64_t j = 20; j <= 120; j += 10) {
    js.push_back(static_cast<double>(j));
    sizes.push_back(static_cast<double>(dcr_to_json(compile_sixj(sym(2 * j))).size()));
  }
  const double exponent = fit_exponent(js, sizes);

  // Cold compile: memo tables dropped before every build.
  const auto l = sym(100);
  std::vector<double> compile_s;
  for (int r = 0; r < 50; ++r) {
    clear_qfactor_caches();
    auto t0 = std::chrono::steady_clock::now();
    const DCR d = compile_sixj(l);
    compile_s.push_back(seconds_since(t0));
  }
  // One compile, many projections: a 1000-point unit-circle sweep in double,
  // each point building its own Phi table.
  const DCR d = compile_sixj(l);
  SweepSpec spec{0.001, 0.999, 1000, true};
  std::vector<double> point_s;
  for (int r = 0; r < 5; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    auto rows = sweep_serial(d, spec, SweepEngine{0, 17});
    point_s.push_back(seconds_since(t0) / static_cast<double>(rows.size()));
  }
  const double c = median(compile_s);
  const double p = median(point_s);
  char buf[200];
  std::snprintf(buf, sizeof buf, "size exponent %.3f (max %.1f); j=50 cold compile %.2f us, projection %.3f us, ratio %.1f (min %.0f)",
                exponent, kSizeExponentMax, c * 1e6, p * 1e6, c / p, kProjectionSpeedup);
  return {exponent <= kSizeExponentMax && c / p >= kProjectionSpeedup, buf};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu: %s  %s  [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
