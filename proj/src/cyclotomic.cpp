#include "qdcr/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qdcr/error.hpp"
#include "qdcr/exponent.hpp"
#include "qdcr/qfactor.hpp"

namespace qdcr {

namespace {

// Trial-division factorization into (prime, multiplicity) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int m = 0;
    while (n % p == 0) {
      n /= p;
      ++m;
    }
    f.push_back({p, m});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

// Exact long division by a monic integer polynomial; both ascending.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quo(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    quo[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] = checked_sub(num[i - dn + j], checked_mul(c, den[j]));
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw Error("cyclotomic division left a remainder");
  }
  return quo;
}

std::mutex& coeff_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::int64_t, std::unique_ptr<std::vector<std::int64_t>>>& coeff_table() {
  static std::map<std::int64_t, std::unique_ptr<std::vector<std::int64_t>>> table;
  return table;
}

const std::vector<std::int64_t>& coeffs_locked(std::int64_t d) {
  auto& table = coeff_table();
  auto it = table.find(d);
  if (it != table.end()) return *it->second;
  std::vector<std::int64_t> p(static_cast<std::size_t>(d) + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (auto m : divisors(d)) {
    if (m < d) p = divide_monic(std::move(p), coeffs_locked(m));
  }
  auto [ins, _] = table.emplace(d, std::make_unique<std::vector<std::int64_t>>(std::move(p)));
  return *ins->second;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_coeffs(std::int64_t d) {
  if (d < 1) throw Error("cyclotomic index must be positive, got " + std::to_string(d));
  std::lock_guard lock(coeff_mutex());
  return coeffs_locked(d);
}

std::int64_t totient(std::int64_t d) {
  if (d < 1) throw Error("totient of non-positive integer");
  std::int64_t t = d;
  for (auto [p, m] : factorize(d)) t = t / p * (p - 1);
  return t;
}

std::int64_t mobius(std::int64_t d) {
  if (d < 1) throw Error("mobius of non-positive integer");
  auto f = factorize(d);
  for (auto [p, m] : f) {
    if (m > 1) return 0;
  }
  return f.size() % 2 == 0 ? 1 : -1;
}

std::int64_t phi_at_one(std::int64_t d) {
  if (d < 2) throw Error("phi_at_one needs d >= 2");
  auto f = factorize(d);
  return f.size() == 1 ? f[0].first : 1;
}

}  // namespace qdcr
