#include "qdcr/statesum.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qdcr/error.hpp"
#include "qdcr/projection.hpp"
#include "qdcr/qfactor.hpp"

namespace qdcr {

namespace {

constexpr std::array<std::array<int, 3>, 4> kTriads = {{{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}}};

}  // namespace

std::vector<std::array<int, 3>> Triangulation::faces() const {
  std::set<std::array<int, 3>> seen;
  for (const auto& t : tetrahedra) {
    for (const auto& tri : kTriads) {
      std::array<int, 3> f = {t[tri[0]], t[tri[1]], t[tri[2]]};
      std::sort(f.begin(), f.end());
      seen.insert(f);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<int> Triangulation::interior_edges() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (!boundary.count(e)) out.push_back(e);
  }
  return out;
}

Triangulation parse_triangulation(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("triangulation JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("triangulation JSON: expected an object at /");
  for (const char* key : {"num_vertices", "edges", "tetrahedra"}) {
    if (!j.contains(key)) throw ParseError(std::string("triangulation JSON: missing key \"") + key + "\" at /");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "num_vertices" && key != "edges" && key != "tetrahedra" && key != "boundary") {
      throw ParseError("triangulation JSON: unexpected key \"" + key + "\" at /");
    }
  }
  Triangulation tri;
  if (!j["num_vertices"].is_number_integer() || j["num_vertices"].get<std::int64_t>() < 1) {
    throw ParseError("triangulation JSON: positive integer expected at /num_vertices");
  }
  tri.num_vertices = j["num_vertices"].get<std::int64_t>();

  std::map<std::string, int> ids;
  const auto& edges = j["edges"];
  if (!edges.is_array()) throw ParseError("triangulation JSON: array expected at /edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].is_string()) throw ParseError("triangulation JSON: string expected at /edges/" + std::to_string(i));
    auto name = edges[i].get<std::string>();
    if (!ids.emplace(name, static_cast<int>(i)).second) {
      throw ParseError("triangulation JSON: duplicate edge \"" + name + "\" at /edges/" + std::to_string(i));
    }
    tri.edges.push_back(name);
  }

  const auto& tets = j["tetrahedra"];
  if (!tets.is_array()) throw ParseError("triangulation JSON: array expected at /tetrahedra");
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const std::string where = "/tetrahedra/" + std::to_string(t);
    if (!tets[t].is_array() || tets[t].size() != 6) {
      throw ParseError("triangulation JSON: six edge names expected at " + where);
    }
    std::array<int, 6> tet{};
    for (std::size_t s = 0; s < 6; ++s) {
      const auto& v = tets[t][s];
      auto it = v.is_string() ? ids.find(v.get<std::string>()) : ids.end();
      if (it == ids.end()) throw ParseError("triangulation JSON: unknown edge at " + where + "/" + std::to_string(s));
      tet[s] = it->second;
    }
    auto sorted = tet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("triangulation JSON: repeated edge in " + where);
    }
    tri.tetrahedra.push_back(tet);
  }

  if (j.contains("boundary")) {
    const auto& b = j["boundary"];
    if (!b.is_object()) throw ParseError("triangulation JSON: object expected at /boundary");
    for (const auto& [name, val] : b.items()) {
      auto it = ids.find(name);
      if (it == ids.end()) throw ParseError("triangulation JSON: unknown edge at /boundary/" + name);
      if (!val.is_number_integer() || val.get<std::int64_t>() < 0) {
        throw ParseError("triangulation JSON: non-negative twice-spin expected at /boundary/" + name);
      }
      tri.boundary[it->second] = val.get<std::int64_t>();
    }
  }
  return tri;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triangulation file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

std::vector<SixJLabels> tetrahedral_images(const SixJLabels& labels) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  // Upper/lower swaps in an even number of columns.
  static constexpr std::array<std::array<bool, 3>, 4> kFlips = {
      {{false, false, false}, {true, true, false}, {true, false, true}, {false, true, true}}};
  const auto& t = labels.tj;
  std::vector<SixJLabels> out;
  out.reserve(24);
  for (const auto& p : kPerms) {
    for (const auto& f : kFlips) {
      SixJLabels img;
      for (int c = 0; c < 3; ++c) {
        std::int64_t up = t[p[c]];
        std::int64_t lo = t[p[c] + 3];
        if (f[c]) std::swap(up, lo);
        img.tj[c] = up;
        img.tj[c + 3] = lo;
      }
      out.push_back(img);
    }
  }
  return out;
}

SixJKey canonical_key(const SixJLabels& labels) {
  SixJKey best = labels.tj;
  for (const auto& img : tetrahedral_images(labels)) best = std::min(best, img.tj);
  return best;
}

std::size_t DCRCache::KeyHash::operator()(const SixJKey& k) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
  return h;
}

std::shared_ptr<const DCR> DCRCache::get(const SixJLabels& labels) {
  SixJKey key = canonical_key(labels);
  {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
  }
  // Compile under the writer lock so each class compiles exactly once.
  std::unique_lock lock(mu_);
  auto it = map_.find(key);
  if (it != map_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  auto dcr = std::make_shared<const DCR>(compile_sixj(SixJLabels{key}));
  map_.emplace(key, dcr);
  return dcr;
}

std::size_t DCRCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

std::vector<std::vector<std::int64_t>> admissible_colorings(const Triangulation& tri, std::int64_t k) {
  if (k < 0) throw Error("level k must be non-negative");
  const auto faces = tri.faces();
  const auto free = tri.interior_edges();
  for (const auto& [e, tj] : tri.boundary) {
    if (tj > k) throw InadmissibleError("boundary edge " + tri.edges[e] + " colored above level k");
  }
  // Each face is checked once, at the step that assigns its last free edge.
  std::vector<int> order(tri.edges.size(), -1);
  for (std::size_t i = 0; i < free.size(); ++i) order[free[i]] = static_cast<int>(i);
  std::vector<std::vector<std::array<int, 3>>> due(free.size() + 1);
  for (const auto& f : faces) {
    int last = -1;
    for (int e : f) last = std::max(last, order[e]);
    due[last + 1].push_back(f);
  }
  std::vector<std::int64_t> col(tri.edges.size(), 0);
  for (const auto& [e, tj] : tri.boundary) col[e] = tj;
  auto face_ok = [&](const std::array<int, 3>& f) { return triangle_admissible(col[f[0]], col[f[1]], col[f[2]], k); };

  std::vector<std::vector<std::int64_t>> out;
  for (const auto& f : due[0]) {
    if (!face_ok(f)) return out;
  }
  // Iterative depth-first search over the free edges.
  const std::size_t n = free.size();
  if (n == 0) {
    out.push_back(col);
    return out;
  }
  std::size_t depth = 0;
  col[free[0]] = -1;
  while (true) {
    auto& v = col[free[depth]];
    ++v;
    if (v > k) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    bool ok = true;
    for (const auto& f : due[depth + 1]) {
      if (!face_ok(f)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (depth + 1 == n) {
      out.push_back(col);
    } else {
      ++depth;
      col[free[depth]] = -1;
    }
  }
  return out;
}

SixJLabels tet_labels(const Triangulation& tri, std::size_t tet, const std::vector<std::int64_t>& coloring) {
  SixJLabels l;
  for (int s = 0; s < 6; ++s) l.tj[s] = coloring[tri.tetrahedra[tet][s]];
  return l;
}

TvResult tv_partition(const Triangulation& tri, const TvOptions& opt) {
  const std::int64_t k = opt.k;
  const std::int64_t h = k + 2;
  auto colorings = admissible_colorings(tri, k);
  auto ctx = make_extended_context_at_level(h, opt.bits, 2 * k + 4);

  std::vector<mp::Complex> dim;
  mp::Complex norm_a(opt.bits);
  for (std::int64_t t = 0; t <= k; ++t) {
    dim.push_back(ctx.project(qint_monomial(t + 1)));
    norm_a += dim.back() * dim.back();
  }
  const auto faces = tri.faces();
  const bool weighted = opt.convention == TvConvention::Weighted;

  DCRCache cache;
  std::atomic<std::int64_t> uncached_compiles{0};
  auto amplitude = [&](const SixJLabels& l) {
    std::shared_ptr<const DCR> dcr;
    if (opt.use_cache) {
      dcr = cache.get(l);
    } else {
      dcr = std::make_shared<const DCR>(compile_sixj(l));
      ++uncached_compiles;
    }
    return amplitude_to_complex(evaluate(*dcr, ctx), ctx);
  };

  const auto n = static_cast<std::int64_t>(colorings.size());
  std::vector<mp::Complex> terms(colorings.size(), mp::Complex(opt.bits));
  auto term = [&](std::int64_t c) {
    const auto& col = colorings[c];
    mp::Complex w = ctx.one;
    if (weighted) {
      int sign = 1;
      for (std::size_t e = 0; e < col.size(); ++e) {
        w = w * dim[col[e]];
        if (col[e] % 2 != 0) sign = -sign;
      }
      for (const auto& f : faces) {
        if (((col[f[0]] + col[f[1]] + col[f[2]]) / 2) % 2 != 0) sign = -sign;
      }
      if (sign < 0) w = -w;
    }
    for (std::size_t t = 0; t < tri.tetrahedra.size(); ++t) w = w * amplitude(tet_labels(tri, t, col));
    terms[c] = std::move(w);
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < n; ++c) term(c);
  } else {
    for (std::int64_t c = 0; c < n; ++c) term(c);
  }
  // Ordered reduction keeps the result independent of the thread schedule.
  mp::Complex sum(opt.bits);
  for (const auto& t : terms) sum += t;
  mp::Complex scale = ctx.one;
  for (std::int64_t v = 0; v < tri.num_vertices; ++v) scale = scale / norm_a;

  TvResult r;
  r.value = sum * scale;
  r.colorings = n;
  r.cache_hits = cache.hits();
  r.cache_misses = cache.misses();
  r.cache_classes = cache.size();
  r.compiles = opt.use_cache ? cache.misses() : uncached_compiles.load();
  return r;
}

}  // namespace qdcr
