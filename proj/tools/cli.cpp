#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdcr/baseline.hpp"
#include "qdcr/dcr.hpp"
#include "qdcr/error.hpp"
#include "qdcr/projection.hpp"
#include "qdcr/qfactor.hpp"
#include "qdcr/statesum.hpp"
#include "qdcr/sweep.hpp"

namespace qdcr::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Engine { DcrF64, DcrMp, LseF64, LseMp, Exact, Classical };
enum class Format { Csv, Json, Text };

const std::map<std::string, Engine> kEngines = {{"dcr-f64", Engine::DcrF64}, {"dcr-mp", Engine::DcrMp},
                                                {"lse-f64", Engine::LseF64}, {"lse-mp", Engine::LseMp},
                                                {"exact", Engine::Exact},    {"classical", Engine::Classical}};
const std::map<std::string, Format> kFormats = {{"csv", Format::Csv}, {"json", Format::Json}, {"text", Format::Text}};

std::string engine_name(Engine e) {
  for (const auto& [k, v] : kEngines) {
    if (v == e) return k;
  }
  return "?";
}

std::string sci(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(digits - 1, 0), x);
  return buf;
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

double rel_dev(double got, double ref) { return ref == 0 ? std::abs(got) : std::abs(got - ref) / std::abs(ref); }

SixJLabels parse_spins(const std::vector<std::int64_t>& v) {
  if (v.size() != 6) throw InadmissibleError("--spins needs six twice-spin integers, got " + std::to_string(v.size()));
  SixJLabels l;
  for (int i = 0; i < 6; ++i) {
    if (v[i] < 0) throw InadmissibleError("twice-spins must be non-negative");
    l.tj[i] = v[i];
  }
  return l;
}

// A table with a header row, printed as CSV, JSON records or aligned text.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;

  void print(std::ostream& out, Format f) const {
    if (f == Format::Json) {
      json j;
      j["rows"] = json::array();
      for (const auto& r : rows) {
        json o;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
        j["rows"].push_back(o);
      }
      if (!footer.empty()) j["notes"] = footer;
      out << j.dump(2) << "\n";
      return;
    }
    if (f == Format::Csv) {
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
      }
      for (const auto& line : footer) out << "# " << line << "\n";
      return;
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << r[i];
      out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    for (const auto& l : footer) out << l << "\n";
  }
};

// Reference constants from the published tables.
struct T3Ref {
  std::int64_t j;
  double lse_f64;
  double dcr_f64;
  double truth;
};
constexpr T3Ref kTable3[] = {
    {30, -1.0930e-3, -1.0930e-3, -1.0930e-3}, {50, 9.1082e-4, 9.1082e-4, 9.1082e-4},
    {70, -7.6406e-4, -7.6286e-4, -7.6283e-4}, {90, 3.5642e-4, -6.6327e-4, -6.4428e-4},
    {110, -9.6881e-1, 1.5083e-3, 2.8290e-4},
};

struct T1Ref {
  std::int64_t j;
  std::int64_t k;
  double max_t;
  double abs_s;
  double delta_loss;
};
constexpr T1Ref kTable1[] = {
    {50, 200, 6.03e3, 2.19e-3, 6.4},     {100, 400, 2.96e10, 7.80e-4, 13.6}, {200, 800, 2.82e24, 2.77e-4, 28.0},
    {300, 1200, 4.74e38, 1.51e-4, 42.5}, {400, 1600, 1.01e53, 9.80e-5, 57.0},
};

struct T4Ref {
  std::int64_t j;
  std::int64_t k;
  double log10_kappa;
  double gamma_eager;
  double gamma_dcr;
};
constexpr T4Ref kTable4[] = {
    {10, 40, 1.27, 61.1, 19.0},        {50, 200, 7.10, 560.1, 104.5},     {100, 400, 14.39, 1352.7, 212.5},
    {200, 800, 28.97, 3177.3, 429.1},  {400, 1600, 58.12, 7307.1, 862.8}, {500, 2000, 72.70, 9518.5, 1079.8},
};

SixJLabels symmetric(std::int64_t j) { return SixJLabels{{2 * j, 2 * j, 2 * j, 2 * j, 2 * j, 2 * j}}; }

struct EvalConfig {
  std::vector<std::int64_t> spins;
  std::optional<std::int64_t> level;
  std::string engine = "dcr-f64";
  mpfr_prec_t bits = 256;
  int digits = 0;
  bool parts = false;
};

int cmd_eval(const EvalConfig& cfg, Format fmt, std::ostream& out) {
  const SixJLabels labels = parse_spins(cfg.spins);
  const Engine engine = kEngines.at(cfg.engine);
  if (engine != Engine::Classical && !cfg.level) throw InadmissibleError("--level is required for engine " + cfg.engine);
  if (engine != Engine::Classical) {
    if (*cfg.level < 1) throw InadmissibleError("--level must be at least 1");
    if (auto bad = first_inadmissible_triad(labels, *cfg.level)) {
      // Name the triad the same way the compiler does.
      static const char* kNames[] = {"(j1,j2,j3)", "(j1,j5,j6)", "(j2,j4,j6)", "(j3,j4,j5)"};
      auto t = labels.triads()[*bad];
      throw InadmissibleError(std::string("inadmissible triad ") + kNames[*bad] + " with twice-spins (" +
                              std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
                              ") at level k=" + std::to_string(*cfg.level));
    }
  }
  const std::int64_t h = cfg.level ? *cfg.level + 2 : 0;
  const bool mp_engine = engine == Engine::DcrMp || engine == Engine::LseMp || engine == Engine::Exact;
  const int digits = cfg.digits > 0 ? cfg.digits : (mp_engine ? 20 : 17);

  json j;
  j["engine"] = cfg.engine;
  j["spins"] = cfg.spins;
  if (cfg.level) j["level"] = *cfg.level;
  if (mp_engine || engine == Engine::Classical) j["bits"] = cfg.bits;
  std::string re;
  std::string im = sci(0.0, digits);
  std::optional<DCR> dcr;

  switch (engine) {
    case Engine::DcrF64: {
      dcr = compile_sixj(labels);
      auto ctx = make_double_context_at_level(h, dcr->d_max);
      auto amp = evaluate(*dcr, ctx);
      auto v = amplitude_to_complex(amp, ctx);
      re = sci(v.real(), digits);
      im = sci(v.imag(), digits);
      if (cfg.parts) {
        j["a"] = {sci(amp.a.real(), digits), sci(amp.a.imag(), digits)};
        j["r"] = {sci(amp.r.real(), digits), sci(amp.r.imag(), digits)};
        j["rad_balance"] = amp.rad_balance;
      }
      break;
    }
    case Engine::DcrMp: {
      dcr = compile_sixj(labels);
      auto ctx = make_extended_context_at_level(h, cfg.bits, dcr->d_max);
      auto amp = evaluate(*dcr, ctx);
      auto v = amplitude_to_complex(amp, ctx);
      re = v.re.to_string(digits);
      im = v.im.to_string(digits);
      if (cfg.parts) {
        j["a"] = {amp.a.re.to_string(digits), amp.a.im.to_string(digits)};
        j["r"] = {amp.r.re.to_string(digits), amp.r.im.to_string(digits)};
        j["rad_balance"] = amp.rad_balance;
      }
      break;
    }
    case Engine::LseF64:
      re = sci(lse_eval_sixj(labels, h), digits);
      break;
    case Engine::LseMp:
      re = lse_eval_sixj_mp(labels, h, cfg.bits).to_string(digits);
      break;
    case Engine::Exact: {
      dcr = compile_sixj(labels);
      auto amp = exact_field_eval(*dcr, h);
      auto v = amplitude_to_complex(amp, h, cfg.bits);
      re = v.re.to_string(digits);
      im = v.im.to_string(digits);
      j["field"] = "Q(zeta_" + std::to_string(2 * h) + ")";
      j["a"] = amp.a.to_string();
      j["r"] = amp.r.to_string();
      j["rad_balance"] = amp.rad_balance;
      break;
    }
    case Engine::Classical: {
      dcr = compile_sixj(labels);
      auto amp = classical_project(*dcr);
      auto v = amplitude_to_complex(amp, cfg.bits);
      re = v.re.to_string(digits);
      im = v.im.to_string(digits);
      j["a"] = amp.a.get_str();
      j["r"] = amp.r.get_str();
      j["a2r"] = mpq_class(amp.a * amp.a * amp.r).get_str();
      break;
    }
  }
  j["re"] = re;
  j["im"] = im;

  if (fmt == Format::Json) {
    if (dcr) j["dcr"] = json::parse(dcr_to_json(*dcr));
    out << j.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
      if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
      out << (first ? "" : ",") << cell;
      first = false;
    }
    out << "\n";
  } else {
    out << "engine " << cfg.engine << "  spins (twice) " << to_string(labels);
    if (cfg.level) out << "  level k=" << *cfg.level;
    out << "\n";
    if (j.contains("a")) out << "a = " << j["a"].dump() << "\nr = " << j["r"].dump() << "\n";
    if (j.contains("a2r")) out << "a^2 r = " << j["a2r"].get<std::string>() << "\n";
    if (!im.empty() && im[0] == '-') {
      out << "value = " << re << " - " << im.substr(1) << " i\n";
    } else {
      out << "value = " << re << " + " << im << " i\n";
    }
  }
  return 0;
}

int cmd_compile(const std::vector<std::int64_t>& spins, int indent, std::ostream& out) {
  out << dcr_to_json(compile_sixj(parse_spins(spins)), indent) << "\n";
  return 0;
}

struct SweepConfig {
  std::vector<std::int64_t> spins;
  double start = 0.0;
  double stop = 1.0;
  std::int64_t count = 100;
  bool real_axis = false;
  std::string engine = "dcr-f64";
  mpfr_prec_t bits = 256;
  bool serial = false;
};

int cmd_sweep(const SweepConfig& cfg, Format fmt, std::ostream& out) {
  const SixJLabels labels = parse_spins(cfg.spins);
  if (cfg.engine != "dcr-f64" && cfg.engine != "dcr-mp") {
    throw InadmissibleError("sweep supports engines dcr-f64 and dcr-mp");
  }
  const std::uint64_t compiles_before = compile_count();
  auto t0 = std::chrono::steady_clock::now();
  const DCR dcr = compile_sixj(labels);
  const double compile_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::uint64_t compiles = compile_count() - compiles_before;

  SweepSpec spec{cfg.start, cfg.stop, cfg.count, !cfg.real_axis};
  SweepEngine eng{cfg.engine == "dcr-mp" ? cfg.bits : 0, cfg.engine == "dcr-mp" ? 20 : 17};
  auto t1 = std::chrono::steady_clock::now();
  auto rows = cfg.serial ? sweep_serial(dcr, spec, eng) : sweep_parallel(dcr, spec, eng);
  const double wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();

  Table t;
  t.header = {"index", "t", "q_re", "q_im", "status", "re", "im", "seconds", "error"};
  double point_sum = 0;
  std::int64_t errors = 0;
  for (const auto& r : rows) {
    point_sum += r.seconds;
    if (!r.ok) ++errors;
    std::string err = r.error;
    for (auto& c : err) {
      if (c == ',' || c == '\n') c = ';';
    }
    t.rows.push_back({std::to_string(r.index), sci(r.t, 17), sci(r.q.real(), 17), sci(r.q.imag(), 17),
                      r.ok ? "OK" : "ERROR", r.ok ? r.re : "", r.ok ? r.im : "", sci(r.seconds, 3), err});
  }
  t.footer = {"compiles=" + std::to_string(compiles), "projections=" + std::to_string(rows.size()),
              "errors=" + std::to_string(errors), "compile_seconds=" + sci(compile_s, 3),
              "mean_point_seconds=" + sci(point_sum / static_cast<double>(rows.size()), 3),
              "wall_seconds=" + sci(wall_s, 3)};
  t.print(out, fmt);
  return 0;
}

int cmd_table(const std::string& which, mpfr_prec_t bits_opt, bool full, Format fmt, std::ostream& out) {
  Table t;
  if (which == "t3") {
    const mpfr_prec_t bits = bits_opt > 0 ? bits_opt : 2048;
    const std::int64_t k = 500;
    t.header = {"j",       "k",        "truth_paper",   "dcr_mp",       "rel_dev",     "lse_f64_paper",
                "lse_f64", "dcr_f64_paper", "dcr_f64",  "lse_f64_sign_ok", "dcr_f64_sign_ok"};
    const int n = static_cast<int>(std::size(kTable3));
    std::vector<std::vector<std::string>> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      const auto& ref = kTable3[i];
      const SixJLabels l = symmetric(ref.j);
      DCR dcr = compile_sixj(l);
      auto ctx = make_extended_context_at_level(k + 2, bits, dcr.d_max);
      double truth = amplitude_to_complex(evaluate(dcr, ctx), ctx).re.to_double();
      auto dctx = make_double_context_at_level(k + 2, dcr.d_max);
      double f64 = amplitude_to_complex(evaluate(dcr, dctx), dctx).real();
      double lse = lse_eval_sixj(l, k + 2);
      rows[i] = {std::to_string(ref.j), std::to_string(k), sci(ref.truth, 5), sci(truth, 8),
                 sci(rel_dev(truth, ref.truth), 2), sci(ref.lse_f64, 5), sci(lse, 5), sci(ref.dcr_f64, 5),
                 sci(f64, 5), (lse > 0) == (truth > 0) ? "yes" : "no", (f64 > 0) == (truth > 0) ? "yes" : "no"};
    }
    t.rows = rows;
    t.footer = {"truth column computed with " + std::to_string(bits) + "-bit projection at q = e^{i pi/502}"};
  } else if (which == "t1") {
    const mpfr_prec_t bits = bits_opt > 0 ? bits_opt : 256;
    t.header = {"j",     "k",       "max_T_paper", "max_T",          "rel_dev_max_T", "abs_S_paper",
                "abs_S", "rel_dev_abs_S", "delta_loss_paper", "delta_loss", "delta_loss_diff"};
    const int n = full ? static_cast<int>(std::size(kTable1)) : 2;
    std::vector<std::vector<std::string>> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      const auto& ref = kTable1[i];
      auto d = diagnostics_sixj(symmetric(ref.j), ref.k + 2, bits);
      rows[i] = {std::to_string(ref.j), std::to_string(ref.k), sci(ref.max_t, 3), sci(d.max_term, 5),
                 sci(rel_dev(d.max_term, ref.max_t), 2), sci(ref.abs_s, 3), sci(d.abs_value, 5),
                 sci(rel_dev(d.abs_value, ref.abs_s), 2), fixed(ref.delta_loss, 1), fixed(d.delta_loss, 3),
                 fixed(d.delta_loss - ref.delta_loss, 3)};
    }
    t.rows = rows;
    t.footer = {"T_z includes the global triangle prefactor; k = 4j"};
  } else if (which == "t4") {
    const mpfr_prec_t bits = bits_opt > 0 ? bits_opt : 256;
    t.header = {"j",           "k",           "log10_kappa_paper", "log10_kappa", "gamma_eager_paper", "gamma_eager",
                "rel_dev_eager", "gamma_dcr_paper", "gamma_dcr", "rel_dev_dcr", "delta_gamma_paper", "delta_gamma"};
    const int n = full ? static_cast<int>(std::size(kTable4)) : 3;
    std::vector<std::vector<std::string>> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      const auto& ref = kTable4[i];
      auto d = diagnostics_sixj(symmetric(ref.j), ref.k + 2, bits);
      rows[i] = {std::to_string(ref.j),
                 std::to_string(ref.k),
                 fixed(ref.log10_kappa, 2),
                 fixed(d.log10_kappa, 4),
                 fixed(ref.gamma_eager, 1),
                 fixed(d.gamma_eager, 3),
                 sci(rel_dev(d.gamma_eager, ref.gamma_eager), 2),
                 fixed(ref.gamma_dcr, 1),
                 fixed(d.gamma_dcr, 3),
                 sci(rel_dev(d.gamma_dcr, ref.gamma_dcr), 2),
                 fixed(ref.gamma_eager - ref.gamma_dcr, 1),
                 fixed(d.gamma_eager - d.gamma_dcr, 3)};
    }
    t.rows = rows;
    t.footer = {"gamma_eager = max_z log10([z+1]! prod[z-a_i]! prod[b_y-z]!); gamma_dcr = max_z sum_d |e_d| "
                "log10|Phi_d(q^2)| over M_z"};
  } else {
    throw InadmissibleError("unknown table '" + which + "' (expected t1, t3 or t4)");
  }
  t.print(out, fmt);
  return 0;
}

struct TvConfig {
  std::string path;
  std::int64_t level = 2;
  std::string convention = "weighted";
  mpfr_prec_t bits = 256;
  bool no_cache = false;
  bool serial = false;
};

int cmd_tv(const TvConfig& cfg, Format fmt, std::ostream& out) {
  Triangulation tri = load_triangulation(cfg.path);
  TvOptions opt;
  opt.k = cfg.level;
  opt.convention = cfg.convention == "literal" ? TvConvention::Literal : TvConvention::Weighted;
  opt.bits = cfg.bits;
  opt.use_cache = !cfg.no_cache;
  opt.parallel = !cfg.serial;
  auto r = tv_partition(tri, opt);
  Table t;
  t.header = {"re", "im", "colorings", "tetrahedra", "compiles", "cache_hits", "cache_misses", "cache_classes"};
  t.rows.push_back({r.value.re.to_string(20), r.value.im.to_string(20), std::to_string(r.colorings),
                    std::to_string(tri.tetrahedra.size()), std::to_string(r.compiles), std::to_string(r.cache_hits),
                    std::to_string(r.cache_misses), std::to_string(r.cache_classes)});
  t.footer = {"convention=" + cfg.convention + " level k=" + std::to_string(cfg.level)};
  t.print(out, fmt);
  return 0;
}

int cmd_diagnose(const std::vector<std::int64_t>& spins, std::int64_t level, mpfr_prec_t bits, Format fmt,
                 std::ostream& out) {
  auto d = diagnostics_sixj(parse_spins(spins), level + 2, bits);
  Table t;
  t.header = {"value", "abs_value", "max_term", "sum_terms", "log10_kappa", "delta_loss", "gamma_eager", "gamma_dcr",
              "terms"};
  t.rows.push_back({sci(d.value, 8), sci(d.abs_value, 8), sci(d.max_term, 8), sci(d.sum_terms, 8),
                    fixed(d.log10_kappa, 4), fixed(d.delta_loss, 4), fixed(d.gamma_eager, 4), fixed(d.gamma_dcr, 4),
                    std::to_string(d.terms)});
  t.footer = {"unit_roundoff=" + sci(d.unit_roundoff, 4) + " bits=" + std::to_string(bits)};
  t.print(out, fmt);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile q-hypergeometric series (quantum 6j-symbols) into cyclotomic form and evaluate them."};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format: csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  const std::string spins_help = "Six twice-spins j1..j6 (spin j=30 is 60)";

  EvalConfig ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one 6j-symbol");
  eval->add_option("--spins", ev.spins, spins_help)->required()->delimiter(',')->expected(6);
  eval->add_option("--level", ev.level, "Level k; q = e^{i pi/(k+2)}");
  eval->add_option("--engine", ev.engine, "dcr-f64, dcr-mp, lse-f64, lse-mp, exact or classical")
      ->check(CLI::IsMember({"dcr-f64", "dcr-mp", "lse-f64", "lse-mp", "exact", "classical"}));
  eval->add_option("--bits", ev.bits, "Mantissa bits for extended engines")->check(CLI::Range(53, 1 << 20));
  eval->add_option("--digits", ev.digits, "Significant digits printed");
  eval->add_flag("--parts", ev.parts, "Also print a and r of a*sqrt(r)");

  std::vector<std::int64_t> compile_spins;
  int indent = -1;
  auto* comp = app.add_subcommand("compile", "Dump the compiled DCR as JSON");
  comp->add_option("--spins", compile_spins, spins_help)->required()->delimiter(',')->expected(6);
  comp->add_option("--indent", indent, "JSON indent (-1 for compact)");

  SweepConfig sw;
  auto* sweep = app.add_subcommand("sweep", "Project one compiled DCR over a grid of q values");
  sweep->add_option("--spins", sw.spins, spins_help)->required()->delimiter(',')->expected(6);
  sweep->add_option("--start", sw.start, "First grid value t");
  sweep->add_option("--stop", sw.stop, "Last grid value t");
  sweep->add_option("--count", sw.count, "Number of points")->check(CLI::PositiveNumber);
  sweep->add_flag("--real-axis", sw.real_axis, "q = t instead of q = e^{i pi t}");
  sweep->add_option("--engine", sw.engine, "dcr-f64 or dcr-mp")->check(CLI::IsMember({"dcr-f64", "dcr-mp"}));
  sweep->add_option("--bits", sw.bits, "Mantissa bits for dcr-mp")->check(CLI::Range(53, 1 << 20));
  sweep->add_flag("--serial", sw.serial, "Disable the OpenMP worker pool");

  std::string which;
  mpfr_prec_t table_bits = 0;
  bool full = false;
  auto* table = app.add_subcommand("table", "Reproduce a published table (t1, t3 or t4)");
  table->add_option("which", which, "t1, t3 or t4")->required()->check(CLI::IsMember({"t1", "t3", "t4"}));
  table->add_option("--bits", table_bits, "Reference precision (default 2048 for t3, 256 otherwise)");
  table->add_flag("--full", full, "Include the large-j rows (slow)");

  TvConfig tv;
  auto* tvc = app.add_subcommand("tv", "Turaev-Viro state sum over a triangulation file");
  tvc->add_option("--triangulation", tv.path, "Triangulation JSON")->required();
  tvc->add_option("--level", tv.level, "Level k")->check(CLI::NonNegativeNumber);
  tvc->add_option("--convention", tv.convention, "weighted or literal")
      ->check(CLI::IsMember({"weighted", "literal"}));
  tvc->add_option("--bits", tv.bits, "Mantissa bits")->check(CLI::Range(53, 1 << 20));
  tvc->add_flag("--no-cache", tv.no_cache, "Compile every tetrahedron afresh");
  tvc->add_flag("--serial", tv.serial, "Disable the OpenMP worker pool");

  std::vector<std::int64_t> diag_spins;
  std::int64_t diag_level = 0;
  mpfr_prec_t diag_bits = 256;
  auto* diag = app.add_subcommand("diagnose", "Condition number, precision loss and dynamic-range measures");
  diag->add_option("--spins", diag_spins, spins_help)->required()->delimiter(',')->expected(6);
  diag->add_option("--level", diag_level, "Level k")->required();
  diag->add_option("--bits", diag_bits, "Mantissa bits")->check(CLI::Range(53, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Format fmt = kFormats.at(format);
  try {
    if (*eval) return cmd_eval(ev, fmt, out);
    if (*comp) return cmd_compile(compile_spins, indent, out);
    if (*sweep) return cmd_sweep(sw, fmt, out);
    if (*table) return cmd_table(which, table_bits, full, fmt, out);
    if (*tvc) return cmd_tv(tv, fmt, out);
    if (*diag) return cmd_diagnose(diag_spins, diag_level, diag_bits, fmt, out);
  } catch (const InadmissibleError& e) {
    err << "inadmissible: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace qdcr::cli
