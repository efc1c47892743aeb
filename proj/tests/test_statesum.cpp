#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "qdcr/dcr.hpp"
#include "qdcr/error.hpp"
#include "qdcr/projection.hpp"
#include "qdcr/statesum.hpp"

#ifndef QDCR_DATA_DIR
#error "QDCR_DATA_DIR must point at data/triangulations"
#endif

using namespace qdcr;

namespace {

std::string data(const std::string& name) { return std::string(QDCR_DATA_DIR) + "/" + name; }

constexpr int kTriads[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}};

// Direct state sum: every coloring of the interior edges in 0..k, filtered by
// the triangle conditions, with 6j values from the trigonometric Racah sum.
mp::Float brute_force_tv(const Triangulation& tri, std::int64_t k, bool weighted, mpfr_prec_t bits) {
  const std::int64_t h = k + 2;
  const mp::Float theta = mp::pi(bits) / mp::Float(h, bits);
  std::set<std::array<int, 3>> faces;
  for (const auto& t : tri.tetrahedra) {
    for (const auto& f : kTriads) {
      std::array<int, 3> e{t[f[0]], t[f[1]], t[f[2]]};
      std::sort(e.begin(), e.end());
      faces.insert(e);
    }
  }
  std::vector<int> free;
  for (int e = 0; e < static_cast<int>(tri.edges.size()); ++e) {
    if (!tri.boundary.count(e)) free.push_back(e);
  }
  std::vector<std::int64_t> col(tri.edges.size(), 0);
  for (const auto& [e, v] : tri.boundary) col[e] = v;
  mp::Float total(bits);
  std::int64_t combos = 1;
  for (std::size_t i = 0; i < free.size(); ++i) combos *= (k + 1);
  for (std::int64_t c = 0; c < combos; ++c) {
    std::int64_t r = c;
    for (int e : free) {
      col[e] = r % (k + 1);
      r /= (k + 1);
    }
    bool ok = true;
    for (const auto& f : faces) ok = ok && oracle::triad_ok(col[f[0]], col[f[1]], col[f[2]], k);
    if (!ok) continue;
    mp::Float term(1L, bits);
    if (weighted) {
      int sign = 1;
      for (auto v : col) {
        term = term * oracle::qint_trig(v + 1, theta);
        if (v % 2) sign = -sign;
      }
      for (const auto& f : faces) {
        if (((col[f[0]] + col[f[1]] + col[f[2]]) / 2) % 2) sign = -sign;
      }
      if (sign < 0) term = -term;
    }
    for (const auto& t : tri.tetrahedra) {
      oracle::Tj tj;
      for (int s = 0; s < 6; ++s) tj[s] = col[t[s]];
      term = term * oracle::sixj_trig(tj, theta);
    }
    total += term;
  }
  mp::Float a(bits);
  for (std::int64_t t = 0; t <= k; ++t) {
    const mp::Float d = oracle::qint_trig(t + 1, theta);
    a += d * d;
  }
  for (std::int64_t v = 0; v < tri.num_vertices; ++v) total = total / a;
  return total;
}

double rel(const mp::Complex& got, const mp::Float& want) {
  const double num = mp::abs(got - mp::Complex(want, mp::Float(want.bits()))).to_double();
  const double den = std::abs(want.to_double());
  return den == 0 ? num : num / den;
}

std::string disjoint_tets(const std::vector<oracle::Tj>& labels) {
  nlohmann::json j;
  j["num_vertices"] = 4 * labels.size();
  j["edges"] = nlohmann::json::array();
  j["tetrahedra"] = nlohmann::json::array();
  j["boundary"] = nlohmann::json::object();
  for (std::size_t t = 0; t < labels.size(); ++t) {
    nlohmann::json tet = nlohmann::json::array();
    for (int s = 0; s < 6; ++s) {
      const std::string name = "t" + std::to_string(t) + "e" + std::to_string(s);
      j["edges"].push_back(name);
      tet.push_back(name);
      j["boundary"][name] = labels[t][s];
    }
    j["tetrahedra"].push_back(tet);
  }
  return j.dump();
}

}  // namespace

TEST_CASE("bundled triangulations load") {
  auto one = load_triangulation(data("single_tet.json"));
  CHECK(one.num_vertices == 4);
  CHECK(one.edges.size() == 6);
  CHECK(one.faces().size() == 4);
  auto two = load_triangulation(data("two_tets.json"));
  CHECK(two.tetrahedra.size() == 2);
  CHECK(two.faces().size() == 7);
  auto ball = load_triangulation(data("ball_4tet.json"));
  CHECK(ball.interior_edges().size() == 4);
  CHECK_THROWS_AS(load_triangulation(data("missing.json")), Error);
}

TEST_CASE("malformed triangulations name the location") {
  CHECK_THROWS_AS(parse_triangulation("{"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("[]"), ParseError);
  CHECK_THROWS_WITH_AS(parse_triangulation(R"({"num_vertices":4,"edges":["a","b"]})"),
                       doctest::Contains("tetrahedra"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_triangulation(R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],"tetrahedra":[["a","b","c","d","e","g"]]})"),
      doctest::Contains("/tetrahedra/0"), ParseError);
  CHECK_THROWS_AS(
      parse_triangulation(R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],"tetrahedra":[["a","a","c","d","e","f"]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_triangulation(R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],"tetrahedra":[["a","b","c","d","e"]]})"),
      ParseError);
  CHECK_THROWS_WITH_AS(
      parse_triangulation(
          R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],"tetrahedra":[["a","b","c","d","e","f"]],"boundary":{"z":2}})"),
      doctest::Contains("/boundary"), ParseError);
  CHECK_THROWS_AS(
      parse_triangulation(
          R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],"tetrahedra":[["a","b","c","d","e","f"]],"extra":1})"),
      ParseError);
}

TEST_CASE("admissible_colorings examples") {
  auto fixed = parse_triangulation(disjoint_tets({{2, 2, 2, 2, 2, 2}}));
  CHECK(admissible_colorings(fixed, 3).size() == 1);
  CHECK(admissible_colorings(fixed, 2).empty());
  auto bad = parse_triangulation(disjoint_tets({{2, 2, 2, 2, 2, 8}}));
  CHECK(admissible_colorings(bad, 8).empty());

  // One free edge: compare against filtering every color by hand.
  auto one_free = parse_triangulation(R"({"num_vertices":4,"edges":["a","b","c","d","e","f"],
      "tetrahedra":[["a","b","c","d","e","f"]],"boundary":{"a":1,"b":1,"c":2,"d":1,"e":1}})");
  for (std::int64_t k = 2; k <= 5; ++k) {
    std::size_t want = 0;
    for (std::int64_t x = 0; x <= k; ++x) want += oracle::sixj_ok({1, 1, 2, 1, 1, x}, k) ? 1 : 0;
    CHECK(admissible_colorings(one_free, k).size() == want);
  }

  auto open = load_triangulation(data("two_tets.json"));
  auto zero = admissible_colorings(open, 0);
  REQUIRE(zero.size() == 1);
  for (auto v : zero[0]) CHECK(v == 0);
}

TEST_CASE("colorings match a brute-force filter") {
  auto tri = load_triangulation(data("two_tets.json"));
  const auto faces = tri.faces();
  for (std::int64_t k = 0; k <= 3; ++k) {
    std::int64_t want = 0;
    std::int64_t combos = 1;
    for (std::size_t i = 0; i < tri.edges.size(); ++i) combos *= (k + 1);
    for (std::int64_t c = 0; c < combos; ++c) {
      std::vector<std::int64_t> col;
      std::int64_t r = c;
      for (std::size_t i = 0; i < tri.edges.size(); ++i) {
        col.push_back(r % (k + 1));
        r /= (k + 1);
      }
      bool ok = true;
      for (const auto& f : faces) ok = ok && oracle::triad_ok(col[f[0]], col[f[1]], col[f[2]], k);
      want += ok;
    }
    CHECK(static_cast<std::int64_t>(admissible_colorings(tri, k).size()) == want);
  }
}

TEST_CASE("single tetrahedron is one scaled amplitude") {
  const oracle::Tj t{2, 2, 2, 2, 2, 2};
  auto tri = parse_triangulation(disjoint_tets({t}));
  for (auto conv : {TvConvention::Weighted, TvConvention::Literal}) {
    TvOptions o;
    o.k = 3;
    o.convention = conv;
    auto r = tv_partition(tri, o);
    CHECK(r.colorings == 1);
    CHECK(rel(r.value, brute_force_tv(tri, 3, conv == TvConvention::Weighted, 256)) <= 1e-60);
  }
}

TEST_CASE("two glued tetrahedra match direct summation") {
  auto tri = load_triangulation(data("two_tets.json"));
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (auto conv : {TvConvention::Weighted, TvConvention::Literal}) {
      TvOptions o;
      o.k = k;
      o.convention = conv;
      auto r = tv_partition(tri, o);
      CHECK(rel(r.value, brute_force_tv(tri, k, conv == TvConvention::Weighted, 256)) <= 1e-60);
      CHECK(r.cache_classes <= static_cast<std::size_t>(r.cache_misses));
    }
  }
}

TEST_CASE("cache and scheduling are transparent") {
  auto tri = load_triangulation(data("two_tets.json"));
  TvOptions o;
  o.k = 3;
  auto cached = tv_partition(tri, o);
  o.use_cache = false;
  auto cold = tv_partition(tri, o);
  o.parallel = false;
  auto serial = tv_partition(tri, o);
  CHECK(cached.value.re == cold.value.re);
  CHECK(cached.value.im == cold.value.im);
  CHECK(serial.value.re == cold.value.re);
  CHECK(cached.cache_hits > 0);
  CHECK(cold.compiles == 2 * cold.colorings);
  CHECK(cached.compiles == static_cast<std::int64_t>(cached.cache_classes));
}

TEST_CASE("congruent tetrahedra compile once") {
  const SixJLabels base{{2, 4, 4, 2, 4, 4}};
  std::vector<oracle::Tj> tets;
  for (const auto& img : tetrahedral_images(base)) tets.push_back(img.tj);
  auto tri = parse_triangulation(disjoint_tets(tets));
  TvOptions o;
  o.k = 6;
  auto r = tv_partition(tri, o);
  CHECK(r.colorings == 1);
  CHECK(r.compiles == 1);
  CHECK(r.cache_classes == 1);
  CHECK(r.cache_hits == 23);
}

TEST_CASE("canonical keys") {
  for (const oracle::Tj& t : {oracle::Tj{2, 4, 4, 2, 4, 4}, oracle::Tj{1, 2, 3, 4, 3, 2}, oracle::Tj{6, 2, 4, 4, 6, 8}}) {
    const SixJLabels l{t};
    const auto key = canonical_key(l);
    CHECK(canonical_key(SixJLabels{key}) == key);
    auto images = tetrahedral_images(l);
    CHECK(images.size() == 24);
    for (const auto& img : images) CHECK(canonical_key(img) == key);
  }
}

TEST_CASE("property: 6j is invariant under the 24 tetrahedral symmetries") {
  const mpfr_prec_t bits = 256;
  for (const oracle::Tj& t : {oracle::Tj{6, 8, 4, 6, 4, 6}, oracle::Tj{3, 5, 4, 3, 5, 6}, oracle::Tj{10, 7, 5, 9, 6, 8}}) {
    for (std::int64_t h : {15, 23}) {
      if (!oracle::sixj_ok(t, h - 2)) continue;
      auto ref_dcr = compile_sixj(SixJLabels{t});
      auto ctx = make_extended_context_at_level(h, bits, 64);
      const auto ref = amplitude_to_complex(evaluate(ref_dcr, ctx), ctx);
      for (const auto& img : tetrahedral_images(SixJLabels{t})) {
        const auto d = compile_sixj(img);
        const auto v = amplitude_to_complex(evaluate(d, ctx), ctx);
        CHECK((mp::abs(v - ref) / mp::abs(ref)).to_double() <= 1e-10);
      }
    }
  }
}

TEST_CASE("experimental: 1-4 move invariance on the 3-ball") {
  auto one = load_triangulation(data("ball_1tet.json"));
  auto four = load_triangulation(data("ball_4tet.json"));
  // The all-2 boundary tetrahedron vanishes at k = 4.
  for (std::int64_t k : {3, 5, 6}) {
    TvOptions o;
    o.k = k;
    auto a = tv_partition(one, o);
    auto b = tv_partition(four, o);
    CHECK(mp::abs(a.value).to_double() > 0);
    CHECK((mp::abs(a.value - b.value) / mp::abs(a.value)).to_double() <= 1e-8);
  }
}

TEST_CASE("boundary colors above the level are rejected") {
  auto tri = parse_triangulation(disjoint_tets({{4, 4, 4, 4, 4, 4}}));
  TvOptions o;
  o.k = 2;
  CHECK_THROWS_AS(tv_partition(tri, o), InadmissibleError);
}
