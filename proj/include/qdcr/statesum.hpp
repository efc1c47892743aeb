#pragma once

// Turaev-Viro style state sums over small triangulations, with a shared cache
// of compiled 6j DCRs keyed by tetrahedral symmetry class.

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdcr/dcr.hpp"
#include "qdcr/mpreal.hpp"
#include "qdcr/series.hpp"

namespace qdcr {

/// Tetrahedron edges are stored as indices into `edges`, ordered (j1..j6):
/// for vertices (A,B,C,D) that is (AB, BC, CA, CD, AD, BD). The four faces are
/// the triads (1,2,3), (1,5,6), (2,4,6), (3,4,5).
struct Triangulation {
  std::int64_t num_vertices = 0;
  std::vector<std::string> edges;
  std::vector<std::array<int, 6>> tetrahedra;
  std::map<int, std::int64_t> boundary;

  /// Distinct faces as sorted edge-index triples.
  std::vector<std::array<int, 3>> faces() const;
  std::vector<int> interior_edges() const;
};

/// Throws ParseError with the offending JSON location.
Triangulation parse_triangulation(const std::string& json_text);
/// Throws Error when the file cannot be read.
Triangulation load_triangulation(const std::string& path);

using SixJKey = std::array<std::int64_t, 6>;

/// Lexicographic minimum over the 24 tetrahedral symmetries: permutations of
/// the column pairs (j1,j4), (j2,j5), (j3,j6) combined with swapping the upper
/// and lower entries in zero or two columns.
SixJKey canonical_key(const SixJLabels& labels);
/// All 24 images of the labels (with repeats when labels coincide).
std::vector<SixJLabels> tetrahedral_images(const SixJLabels& labels);

class DCRCache {
 public:
  /// Compiles on first sight of the canonical class; later calls hit.
  std::shared_ptr<const DCR> get(const SixJLabels& labels);

  std::int64_t hits() const { return hits_.load(); }
  std::int64_t misses() const { return misses_.load(); }
  std::size_t size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const SixJKey& k) const;
  };
  mutable std::shared_mutex mu_;
  std::unordered_map<SixJKey, std::shared_ptr<const DCR>, KeyHash> map_;
  std::atomic<std::int64_t> hits_{0};
  std::atomic<std::int64_t> misses_{0};
};

enum class TvConvention {
  Literal,   ///< prod of 6j amplitudes only, as printed
  Weighted,  ///< edge weights (-1)^{tj}[tj+1] and face signs (-1)^{(ta+tb+tc)/2}
};

struct TvOptions {
  std::int64_t k = 2;
  TvConvention convention = TvConvention::Weighted;
  mpfr_prec_t bits = 256;
  bool use_cache = true;
  bool parallel = true;
};

struct TvResult {
  mp::Complex value;
  std::int64_t colorings = 0;
  std::int64_t compiles = 0;
  std::int64_t cache_hits = 0;
  std::int64_t cache_misses = 0;
  std::size_t cache_classes = 0;
};

/// Every full edge coloring (indexed like tri.edges) with interior twice-spins
/// in 0..k, boundary colors fixed, and every face admissible at level k.
std::vector<std::vector<std::int64_t>> admissible_colorings(const Triangulation& tri, std::int64_t k);

/// Sum over colorings of weights times tetrahedron 6j amplitudes at
/// q = e^{i pi/(k+2)}, scaled by A^{-|V|} with A = sum_{t=0..k} [t+1]^2.
TvResult tv_partition(const Triangulation& tri, const TvOptions& opt);

/// The 6j tuple a tetrahedron sees under a coloring.
SixJLabels tet_labels(const Triangulation& tri, std::size_t tet, const std::vector<std::int64_t>& coloring);

}  // namespace qdcr
