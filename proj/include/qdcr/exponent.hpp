#pragma once

// Sparse exponent vectors over the cyclotomic basis {q, Phi_d(q^2)} and the
// free abelian group of cyclotomic monomials sigma * q^P * prod Phi_d(q^2)^e_d.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qdcr {

using Index = std::int64_t;
using Exponent = std::int64_t;

struct ExponentEntry {
  Index index;
  Exponent exp;
  bool operator==(const ExponentEntry&) const = default;
};

/// Sparse map d -> e_d with d >= 2. Entries are kept sorted by ascending d and
/// never hold a zero exponent.
class ExponentVector {
 public:
  using const_iterator = std::vector<ExponentEntry>::const_iterator;

  ExponentVector() = default;
  ExponentVector(std::initializer_list<std::pair<Index, Exponent>> init);

  /// Sorts, merges duplicate indices and drops zeros. Throws on d < 2.
  static ExponentVector from_entries(std::vector<ExponentEntry> entries);

  /// e_d, or 0 when d is not stored.
  Exponent operator[](Index d) const;

  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Largest stored index, 0 when empty.
  Index max_index() const { return entries_.empty() ? 0 : entries_.back().index; }

  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }
  const std::vector<ExponentEntry>& entries() const { return entries_; }

  bool operator==(const ExponentVector&) const = default;

 private:
  friend ExponentVector axpy(const ExponentVector&, const ExponentVector&, Exponent);
  friend ExponentVector scale(const ExponentVector&, Exponent);
  std::vector<ExponentEntry> entries_;
};

/// a + s*b, normalized.
ExponentVector axpy(const ExponentVector& a, const ExponentVector& b, Exponent s);
/// n*a, normalized (empty when n == 0).
ExponentVector scale(const ExponentVector& a, Exponent n);
/// Re-normalizes an arbitrary vector; idempotent.
ExponentVector normalize(const ExponentVector& e);
std::size_t support_size(const ExponentVector& e);

struct CycloMonomial {
  int sigma = 1;
  Exponent P = 0;
  ExponentVector exps;

  static CycloMonomial identity() { return {}; }
  bool is_identity() const { return sigma == 1 && P == 0 && exps.empty(); }
  bool operator==(const CycloMonomial&) const = default;
};

CycloMonomial mul(const CycloMonomial& a, const CycloMonomial& b);
CycloMonomial div(const CycloMonomial& a, const CycloMonomial& b);
CycloMonomial pow(const CycloMonomial& a, Exponent n);

/// g = root^2 * rad with rad square-free, rad.P in {0,1}; sigma goes to rad.
struct SquareSplit {
  CycloMonomial root;
  CycloMonomial rad;
};
SquareSplit sqrt_split(const CycloMonomial& g);

/// Checked 64-bit helpers. Throw OverflowError instead of wrapping.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_sub(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

// Per-thread count of exponent entries touched by the monomial algebra.
std::uint64_t exponent_op_count();
void reset_exponent_op_count();
void count_exponent_ops(std::uint64_t n);

nlohmann::ordered_json to_json(const CycloMonomial& m);
/// `where` is a JSON-pointer-like location used in error messages.
CycloMonomial monomial_from_json(const nlohmann::ordered_json& j, const std::string& where = "");

std::ostream& operator<<(std::ostream& os, const ExponentVector& e);
std::ostream& operator<<(std::ostream& os, const CycloMonomial& m);

}  // namespace qdcr
