#pragma once

// Integer facts about cyclotomic polynomials.

#include <cstdint>
#include <vector>

namespace qdcr {

/// Coefficients of Phi_d in ascending powers, from exact division of x^d - 1
/// by the lower Phi_m (m | d, m < d). Cached; the reference stays valid.
const std::vector<std::int64_t>& cyclotomic_coeffs(std::int64_t d);

/// Euler's phi(d) = deg Phi_d.
std::int64_t totient(std::int64_t d);
std::int64_t mobius(std::int64_t d);

/// Phi_d(1): p when d = p^m, 1 otherwise (d >= 2).
std::int64_t phi_at_one(std::int64_t d);

}  // namespace qdcr
