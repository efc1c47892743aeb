#include "qdcr/qfactor.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "qdcr/error.hpp"

namespace qdcr {

namespace {

// Node-based maps keep references stable across inserts. Racing fills compute
// equal values, so whichever insert wins is fine.
template <class V>
class MemoTable {
 public:
  template <class Make>
  const V& get(std::int64_t key, Make&& make) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return *it->second;
    }
    auto value = std::make_unique<V>(make());
    std::unique_lock lock(mu_);
    auto [it, inserted] = map_.try_emplace(key, std::move(value));
    return *it->second;
  }

  void clear() {
    std::unique_lock lock(mu_);
    map_.clear();
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::int64_t, std::unique_ptr<V>> map_;
};

MemoTable<std::vector<std::int64_t>>& divisor_table() {
  static MemoTable<std::vector<std::int64_t>> table;
  return table;
}

MemoTable<CycloMonomial>& qfact_table() {
  static MemoTable<CycloMonomial> table;
  return table;
}

}  // namespace

const std::vector<std::int64_t>& divisors(std::int64_t n) {
  if (n <= 0) throw Error("divisors: n must be positive, got " + std::to_string(n));
  return divisor_table().get(n, [n] {
    std::vector<std::int64_t> low;
    std::vector<std::int64_t> high;
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      low.push_back(d);
      if (d != n / d) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
  });
}

CycloMonomial qint_monomial(std::int64_t n) {
  if (n <= 0) {
    throw InadmissibleError("quantum integer argument must be positive, got " + std::to_string(n));
  }
  const auto& divs = divisors(n);
  std::vector<ExponentEntry> entries;
  entries.reserve(divs.size());
  for (auto d : divs) {
    if (d > 1) entries.push_back({d, 1});
  }
  count_exponent_ops(entries.size());
  return {1, 1 - n, ExponentVector::from_entries(std::move(entries))};
}

const CycloMonomial& qfact_monomial(std::int64_t n) {
  if (n < 0) {
    throw InadmissibleError("quantum factorial argument must be non-negative, got " + std::to_string(n));
  }
  return qfact_table().get(n, [n] {
    std::vector<ExponentEntry> entries;
    entries.reserve(n > 1 ? static_cast<std::size_t>(n - 1) : 0);
    for (std::int64_t d = 2; d <= n; ++d) entries.push_back({d, n / d});
    count_exponent_ops(entries.size());
    return CycloMonomial{1, checked_mul(n, 1 - n) / 2, ExponentVector::from_entries(std::move(entries))};
  });
}

void clear_qfactor_caches() {
  divisor_table().clear();
  qfact_table().clear();
}

}  // namespace qdcr
