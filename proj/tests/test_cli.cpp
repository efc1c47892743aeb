#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "qdcr/dcr.hpp"
#include "qdcr/projection.hpp"
#include "qdcr/series.hpp"
#include "qdcr/sweep.hpp"

using namespace qdcr;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qdcr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, sep);) out.push_back(f);
  return out;
}

std::string data(const std::string& name) { return std::string(QDCR_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("eval reproduces the j=30 truth value") {
  auto r = run({"--format", "json", "eval", "--spins", "60,60,60,60,60,60", "--level", "500", "--engine", "dcr-mp",
                "--bits", "2048"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  const double v = std::stod(j["re"].get<std::string>());
  CHECK(std::abs(v + 1.0930e-3) <= 5e-5 * 1.0930e-3);
  CHECK(dcr_from_json(j["dcr"].dump()) == compile_sixj(SixJLabels{{60, 60, 60, 60, 60, 60}}));
}

TEST_CASE("eval engines agree on a small symbol") {
  std::vector<double> vals;
  for (const char* e : {"dcr-f64", "dcr-mp", "lse-f64", "lse-mp", "exact"}) {
    auto r = run({"--format", "json", "eval", "--spins", "4,6,4,6,4,6", "--level", "9", "--engine", e});
    REQUIRE(r.code == 0);
    vals.push_back(std::stod(nlohmann::json::parse(r.out)["re"].get<std::string>()));
  }
  for (double v : vals) CHECK(v == doctest::Approx(vals[1]).epsilon(1e-12));
}

TEST_CASE("eval rejects inadmissible input with exit 2") {
  auto r = run({"eval", "--spins", "2,2,2,2,2,8", "--level", "10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("(j1,j5,j6)") != std::string::npos);
  auto lvl = run({"eval", "--spins", "6,6,6,6,6,6", "--level", "4"});
  CHECK(lvl.code == 2);
  CHECK(lvl.err.find("level") != std::string::npos);
  CHECK(run({"eval", "--spins", "1,1,1,1,1,1", "--engine", "classical"}).code == 2);
  CHECK(run({"eval", "--spins", "2,2,2", "--level", "3"}).code == 2);
  CHECK(run({"eval", "--spins", "2,2,2,2,2,2"}).code == 2);
  CHECK(run({"eval", "--spins", "2,2,2,2,2,2", "--level", "3", "--engine", "bogus"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("classical engine prints the exact pair") {
  auto r = run({"eval", "--spins", "2,2,2,2,2,2", "--engine", "classical"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("a = \"1/6\"") != std::string::npos);
  CHECK(r.out.find("a^2 r = 1/36") != std::string::npos);
  auto c = run({"--format", "csv", "eval", "--spins", "1,1,2,1,1,2", "--engine", "classical"});
  REQUIRE(c.code == 0);
  CHECK(lines(c.out).size() == 2);
}

TEST_CASE("parts are printed on request") {
  auto r = run({"--format", "json", "eval", "--spins", "2,2,2,2,2,2", "--level", "5", "--parts"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("a"));
  CHECK(j.contains("r"));
}

TEST_CASE("compile emits a DCR that round-trips") {
  auto r = run({"compile", "--spins", "20,20,20,20,20,20"});
  REQUIRE(r.code == 0);
  CHECK(dcr_from_json(r.out) == compile_sixj(SixJLabels{{20, 20, 20, 20, 20, 20}}));
}

TEST_CASE("sweep compiles once and isolates errors") {
  auto r = run({"--format", "csv", "sweep", "--spins", "2,2,2,2,2,2", "--start", "0.2", "--stop", "0.3", "--count",
                "11"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  CHECK(ls[0] == "index,t,q_re,q_im,status,re,im,seconds,error");
  CHECK(r.out.find("# compiles=1") != std::string::npos);
  CHECK(r.out.find("# projections=11") != std::string::npos);
  CHECK(ls[6].find("ERROR") != std::string::npos);
  CHECK(ls[6].find("pole") != std::string::npos);
  CHECK(ls[5].find(",OK,") != std::string::npos);

  auto real = run({"--format", "csv", "sweep", "--spins", "2,2,2,2,2,2", "--real-axis", "--start", "-1", "--stop", "1",
                   "--count", "3"});
  REQUIRE(real.code == 0);
  CHECK(lines(real.out)[2].find("ERROR") != std::string::npos);
}

TEST_CASE("one-point sweep equals eval") {
  auto s = run({"--format", "csv", "sweep", "--spins", "4,4,4,4,4,4", "--start", "0.1", "--stop", "0.1", "--count",
                "1"});
  auto e = run({"--format", "json", "eval", "--spins", "4,4,4,4,4,4", "--level", "8"});
  REQUIRE(s.code == 0);
  REQUIRE(e.code == 0);
  // Same point reached through t = 0.1 and through level 8; q differs by rounding only.
  const double want = std::stod(nlohmann::json::parse(e.out)["re"].get<std::string>());
  const double got = std::stod(split(lines(s.out)[1], ',')[5]);
  CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));
}

TEST_CASE("parallel sweep rows match the serial reference") {
  const DCR d = compile_sixj(SixJLabels{{40, 40, 40, 40, 40, 40}});
  SweepSpec spec{0.001, 0.2, 257, true};
  for (mpfr_prec_t bits : {0, 128}) {
    SweepEngine eng{bits, 17};
    auto a = sweep_serial(d, spec, eng);
    auto b = sweep_parallel(d, spec, eng);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].index == static_cast<std::int64_t>(i));
      CHECK(b[i].index == static_cast<std::int64_t>(i));
      CHECK(a[i].ok == b[i].ok);
      CHECK(a[i].re == b[i].re);
      CHECK(a[i].im == b[i].im);
    }
  }
}

TEST_CASE("table t3 embeds the reference column") {
  auto r = run({"--format", "csv", "table", "t3"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  CHECK(ls.size() >= 6);
  CHECK(ls[4].rfind("90,500,-6.4428e-04", 0) == 0);
  CHECK(ls[4].find(",no,yes") != std::string::npos);
  auto t4 = run({"--format", "json", "table", "t4"});
  REQUIRE(t4.code == 0);
  auto j = nlohmann::json::parse(t4.out);
  CHECK(j["rows"][0]["log10_kappa_paper"] == "1.27");
  CHECK(run({"table", "t9"}).code == 2);
}

TEST_CASE("tv command") {
  auto r = run({"--format", "json", "tv", "--triangulation", data("two_tets.json"), "--level", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"][0]["compiles"].get<std::string>() == j["rows"][0]["cache_classes"].get<std::string>());
  CHECK(run({"tv", "--triangulation", data("missing.json")}).code == 1);
  CHECK(run({"tv", "--triangulation", data("two_tets.json"), "--convention", "weird"}).code == 2);
}

TEST_CASE("diagnose command") {
  auto r = run({"--format", "json", "diagnose", "--spins", "20,20,20,20,20,20", "--level", "40"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::stod(j["rows"][0]["log10_kappa"].get<std::string>()) == doctest::Approx(1.27).epsilon(0.05));
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("eval") != std::string::npos);
}
