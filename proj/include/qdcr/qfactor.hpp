#pragma once

// Cyclotomic factorization of quantum integers and quantum factorials:
//   [n]_q  = q^(1-n)     prod_{d|n, d>1} Phi_d(q^2)
//   [n]_q! = q^(n(1-n)/2) prod_{d=2..n}  Phi_d(q^2)^floor(n/d)

#include <cstdint>
#include <vector>

#include "qdcr/exponent.hpp"

namespace qdcr {

/// All positive divisors of n in ascending order. Memoized.
const std::vector<std::int64_t>& divisors(std::int64_t n);

CycloMonomial qint_monomial(std::int64_t n);
/// Memoized; the reference stays valid for the life of the process.
const CycloMonomial& qfact_monomial(std::int64_t n);

/// Drops the divisor and factorial memo tables (used for cold-start timing).
void clear_qfactor_caches();

}  // namespace qdcr
