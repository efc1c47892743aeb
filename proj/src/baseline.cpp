#include "qdcr/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "qdcr/dcr.hpp"
#include "qdcr/error.hpp"
#include "qdcr/projection.hpp"

namespace qdcr {

namespace {

void require_level_admissible(const SixJLabels& labels, std::int64_t h) {
  if (h < 3) throw Error("level parameter h must be at least 3");
  if (auto bad = first_inadmissible_triad(labels, h - 2)) {
    auto t = labels.triads()[*bad];
    throw InadmissibleError("labels (" + to_string(labels) + ") not admissible at level k=" + std::to_string(h - 2) +
                            ": triad (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                            std::to_string(t[2]) + ")");
  }
}

std::int64_t table_size_for(const SixJDescriptor& d) {
  // Largest factorial argument: z+1 at z_max, or a triangle a+b+c+1.
  std::int64_t m = *std::min_element(d.b.begin(), d.b.end()) + 1;
  for (auto a : d.a) m = std::max(m, a + 1);
  return m;
}

// Sum of the three triangle-numerator and the one denominator log-factorials
// over all four triads, each halved once at the end.
template <class R>
void half_prefactor(const SixJLabels& labels, const LogQTable<R>& t, R& half_num, R& half_den) {
  for (const auto& tri : labels.triads()) {
    auto [a, b, c] = tri;
    half_num += t.log_qfact[(a + b - c) / 2] + t.log_qfact[(a - b + c) / 2] + t.log_qfact[(-a + b + c) / 2];
    half_den += t.log_qfact[(a + b + c) / 2 + 1];
  }
}

template <class R, class Exp>
R lse_core(const SixJLabels& labels, const LogQTable<R>& t, const R& zero, const R& half, Exp expf) {
  auto desc = sixj_descriptor(labels);
  R half_num = zero;
  R half_den = zero;
  half_prefactor(labels, t, half_num, half_den);
  half_num *= half;
  half_den *= half;
  const std::int64_t z_min = *std::max_element(desc.a.begin(), desc.a.end());
  const std::int64_t z_max = *std::min_element(desc.b.begin(), desc.b.end());
  std::vector<R> logs;
  std::vector<int> signs;
  for (std::int64_t z = z_min; z <= z_max; ++z) {
    if (z + 1 >= t.h) continue;
    R num = t.log_qfact[z + 1];
    num += half_num;
    R den = zero;
    for (auto a : desc.a) den += t.log_qfact[z - a];
    for (auto b : desc.b) den += t.log_qfact[b - z];
    den += half_den;
    logs.push_back(num - den);
    signs.push_back(z % 2 != 0 ? -1 : 1);
  }
  if (logs.empty()) return zero;
  R m = *std::max_element(logs.begin(), logs.end());
  R acc = zero;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    R e = expf(logs[i] - m);
    if (signs[i] < 0) {
      acc -= e;
    } else {
      acc += e;
    }
  }
  return acc * expf(m);
}

}  // namespace

LogQTable<double> log_qint_table(std::int64_t h, std::int64_t n_max) {
  if (h < 3) throw Error("log table needs h >= 3");
  if (n_max >= h) {
    throw Error("log table: [" + std::to_string(n_max) + "] vanishes or changes sign at h=" + std::to_string(h));
  }
  LogQTable<double> t;
  t.h = h;
  t.log_qint.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  t.log_qfact.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double s = std::sin(std::numbers::pi / static_cast<double>(h));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    t.log_qint[n] = std::log(std::sin(static_cast<double>(n) * std::numbers::pi / static_cast<double>(h)) / s);
    t.log_qfact[n] = t.log_qfact[n - 1] + t.log_qint[n];
  }
  return t;
}

LogQTable<mp::Float> log_qint_table_mp(std::int64_t h, std::int64_t n_max, mpfr_prec_t bits) {
  if (h < 3) throw Error("log table needs h >= 3");
  if (n_max >= h) {
    throw Error("log table: [" + std::to_string(n_max) + "] vanishes or changes sign at h=" + std::to_string(h));
  }
  LogQTable<mp::Float> t;
  t.h = h;
  t.log_qint.assign(static_cast<std::size_t>(n_max) + 1, mp::Float(bits));
  t.log_qfact.assign(static_cast<std::size_t>(n_max) + 1, mp::Float(bits));
  const mp::Float step = mp::pi(bits) / mp::Float(static_cast<long>(h), bits);
  const mp::Float s = mp::sin(step);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    t.log_qint[n] = mp::log(mp::sin(step * mp::Float(static_cast<long>(n), bits)) / s);
    t.log_qfact[n] = t.log_qfact[n - 1] + t.log_qint[n];
  }
  return t;
}

double lse_eval_sixj(const SixJLabels& labels, std::int64_t h) {
  require_level_admissible(labels, h);
  auto t = log_qint_table(h, std::min<std::int64_t>(table_size_for(sixj_descriptor(labels)), h - 1));
  return lse_core(labels, t, 0.0, 0.5, [](double x) { return std::exp(x); });
}

mp::Float lse_eval_sixj_mp(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits) {
  require_level_admissible(labels, h);
  auto t = log_qint_table_mp(h, std::min<std::int64_t>(table_size_for(sixj_descriptor(labels)), h - 1), bits);
  return lse_core(labels, t, mp::Float(bits), mp::Float(0.5, bits), [](const mp::Float& x) { return mp::exp(x); });
}

mp::Float sixj_at_level(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits) {
  if (!sixj_admissible(labels, h - 2)) return mp::Float(bits);
  DCR dcr = compile_sixj(labels);
  auto ctx = make_extended_context_at_level(h, bits, dcr.d_max);
  return amplitude_to_complex(evaluate(dcr, ctx), ctx).re;
}

Diagnostics diagnostics_sixj(const SixJLabels& labels, std::int64_t h, mpfr_prec_t bits) {
  require_level_admissible(labels, h);
  DCR dcr = compile_sixj(labels);
  auto ctx = make_extended_context_at_level(h, bits, dcr.d_max);
  auto value = amplitude_to_complex(evaluate(dcr, ctx), ctx).re;

  const mp::Float pref = mp::abs(ctx.project(dcr.root)) * mp::sqrt(mp::abs(ctx.project(dcr.rad)));
  mp::Float max_t(bits);
  mp::Float sum_t(bits);
  Diagnostics out;
  for (const auto& term : project_terms(dcr, ctx)) {
    if (term.is_zero()) continue;
    mp::Float t = mp::abs(term) * pref;
    if (t > max_t) max_t = t;
    sum_t += t;
    ++out.terms;
  }
  const mp::Float abs_s = mp::abs(value);
  out.value = value.to_double();
  out.abs_value = abs_s.to_double();
  out.max_term = max_t.to_double();
  out.sum_terms = sum_t.to_double();
  if (abs_s.is_zero()) {
    out.kappa = out.log10_kappa = out.delta_loss = std::numeric_limits<double>::infinity();
  } else {
    out.log10_kappa = mp::log10(sum_t / abs_s).to_double();
    out.kappa = std::pow(10.0, out.log10_kappa);
    out.delta_loss = mp::log10(max_t / abs_s).to_double();
  }

  // Eager bookkeeping: unreduced [z+1]! over prod [z-a_i]! prod [b_y-z]!.
  auto desc = sixj_descriptor(labels);
  auto lt = log_qint_table(h, std::min<std::int64_t>(table_size_for(desc), h - 1));
  const double to10 = 1.0 / std::numbers::ln10;
  out.gamma_eager = -std::numeric_limits<double>::infinity();
  for (std::int64_t z = dcr.z_min; z <= dcr.z_max; ++z) {
    if (z + 1 >= h) continue;
    double g = lt.log_qfact[z + 1];
    for (auto a : desc.a) g += lt.log_qfact[z - a];
    for (auto b : desc.b) g += lt.log_qfact[b - z];
    out.gamma_eager = std::max(out.gamma_eager, g * to10);
  }

  // DCR bookkeeping: the reduced monomials the evaluator actually projects.
  out.gamma_dcr = -std::numeric_limits<double>::infinity();
  for (const auto& m : cumulative_monomials(dcr)) {
    if (vanishes_at(m, h)) continue;
    double g = 0;
    for (const auto& [d, e] : m.exps) g += static_cast<double>(std::abs(e)) * ctx.log10_phi[d];
    out.gamma_dcr = std::max(out.gamma_dcr, g);
  }
  return out;
}

IdentityReport identity_check(IdentityKind kind, std::int64_t max_tj, std::int64_t h, mpfr_prec_t bits) {
  if (h < 3) throw Error("identity checks need h >= 3");
  const std::int64_t k = h - 2;
  const std::int64_t L = std::min(max_tj, k);
  if (L < 0) return {};
  // External labels stop at L; the summed label x always runs to k.
  const std::int64_t B = k + 1;
  auto index = [B](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e, std::int64_t f) {
    return ((((a * B + b) * B + c) * B + d) * B + e) * B + f;
  };
  const std::int64_t n = B * B * B * B * B * B;

  // Dense 6j table over every label set, one shared projection context.
  auto ctx = make_extended_context_at_level(h, bits, 2 * k + 4);
  std::vector<mp::Float> six(static_cast<std::size_t>(n), mp::Float(bits));
  std::vector<char> live(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    SixJLabels lab;
    std::int64_t r = i;
    for (int s = 5; s >= 0; --s) {
      lab.tj[s] = r % B;
      r /= B;
    }
    if (!sixj_admissible(lab, k)) continue;
    DCR dcr = compile_sixj(lab);
    six[i] = amplitude_to_complex(evaluate(dcr, ctx), ctx).re;
    live[i] = 1;
  }
  auto S = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e,
               std::int64_t f) -> const mp::Float* {
    auto i = index(a, b, c, d, e, f);
    return live[i] ? &six[i] : nullptr;
  };
  std::vector<mp::Float> dim(static_cast<std::size_t>(B) + 1, mp::Float(bits));
  {
    const mp::Float step = mp::pi(bits) / mp::Float(static_cast<long>(h), bits);
    const mp::Float s = mp::sin(step);
    for (std::int64_t t = 0; t <= k; ++t) dim[t] = mp::sin(step * mp::Float(static_cast<long>(t + 1), bits)) / s;
  }
  auto adm = [k](std::int64_t a, std::int64_t b, std::int64_t c) { return triangle_admissible(a, b, c, k); };

  double worst = 0;
  std::int64_t checks = 0;
  std::int64_t nontrivial = 0;
  if (kind == IdentityKind::Orthogonality) {
    // sum_x [x+1][f+1] {a b x; c d f}{a b x; c d g} = delta_{fg}
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : worst) reduction(+ : checks, nontrivial)
    for (std::int64_t a = 0; a <= L; ++a) {
      for (std::int64_t b = 0; b <= L; ++b) {
        for (std::int64_t c = 0; c <= L; ++c) {
          for (std::int64_t d = 0; d <= L; ++d) {
            for (std::int64_t f = 0; f <= L; ++f) {
              if (!adm(a, d, f) || !adm(b, c, f)) continue;
              for (std::int64_t g = 0; g <= L; ++g) {
                if (!adm(a, d, g) || !adm(b, c, g)) continue;
                mp::Float sum(bits);
                for (std::int64_t x = 0; x <= k; ++x) {
                  const mp::Float* u = S(a, b, x, c, d, f);
                  const mp::Float* v = S(a, b, x, c, d, g);
                  if (!u || !v) continue;
                  sum += dim[x] * dim[f] * *u * *v;
                }
                if (f == g) {
                  sum -= mp::Float(1L, bits);
                  ++nontrivial;
                }
                worst = std::max(worst, mp::abs(sum).to_double());
                ++checks;
              }
            }
          }
        }
      }
    }
  } else {
    // sum_x (-1)^{(S+x)/2} [x+1] {a b x; c d p}{c d x; e f q}{e f x; b a r}
    //   = {p q r; e a d}{p q r; f b c}
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : worst) reduction(+ : checks, nontrivial)
    for (std::int64_t a = 0; a <= L; ++a) {
      for (std::int64_t b = 0; b <= L; ++b) {
        for (std::int64_t c = 0; c <= L; ++c) {
          for (std::int64_t d = 0; d <= L; ++d) {
            for (std::int64_t p = 0; p <= L; ++p) {
              if (!adm(a, d, p) || !adm(b, c, p)) continue;
              for (std::int64_t e = 0; e <= L; ++e) {
                for (std::int64_t f = 0; f <= L; ++f) {
                  for (std::int64_t q = 0; q <= L; ++q) {
                    if (!adm(c, f, q) || !adm(d, e, q)) continue;
                    for (std::int64_t r = 0; r <= L; ++r) {
                      if (!adm(e, a, r) || !adm(f, b, r)) continue;
                      const std::int64_t total = a + b + c + d + e + f + p + q + r;
                      mp::Float lhs(bits);
                      for (std::int64_t x = 0; x <= k; ++x) {
                        if ((total + x) % 2 != 0) continue;
                        const mp::Float* u = S(a, b, x, c, d, p);
                        const mp::Float* v = S(c, d, x, e, f, q);
                        const mp::Float* w = S(e, f, x, b, a, r);
                        if (!u || !v || !w) continue;
                        mp::Float t = dim[x] * *u * *v * *w;
                        if (((total + x) / 2) % 2 != 0) {
                          lhs -= t;
                        } else {
                          lhs += t;
                        }
                      }
                      mp::Float rhs(bits);
                      const mp::Float* s1 = S(p, q, r, e, a, d);
                      const mp::Float* s2 = S(p, q, r, f, b, c);
                      if (s1 && s2) {
                        rhs = *s1 * *s2;
                        if (!rhs.is_zero()) ++nontrivial;
                      }
                      worst = std::max(worst, mp::abs(lhs - rhs).to_double());
                      ++checks;
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return {worst, checks, nontrivial};
}

}  // namespace qdcr
