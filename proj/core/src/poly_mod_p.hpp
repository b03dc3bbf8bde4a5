#pragma once

// Univariate polynomial factorization over the prime field F_p, used for
// splitting rational primes in Z[theta]. Coefficients are held reduced in
// uint64 (p < 2^62); products go through 128-bit intermediates. The
// randomized equal-degree step uses a fixed recorded seed and the final
// factor list is sorted canonically, so results are deterministic.

#include <cstdint>
#include <vector>

#include "hms/integers.hpp"

namespace hms::detail {

using PPoly = std::vector<std::uint64_t>;  // ascending, coefficients in [0, p)

/// Reduces an integer polynomial mod p (ascending, trimmed, nonneg coeffs).
PPoly ppoly_from_int(const IntVec& poly, std::uint64_t p);

PPoly ppoly_mul(const PPoly& a, const PPoly& b, std::uint64_t p);
PPoly ppoly_rem(PPoly a, const PPoly& b, std::uint64_t p);
PPoly ppoly_gcd(PPoly a, PPoly b, std::uint64_t p);  // monic
PPoly ppoly_derivative(const PPoly& a, std::uint64_t p);
void ppoly_make_monic(PPoly& a, std::uint64_t p);

/// a^e mod (m, p) with an arbitrary-precision exponent.
PPoly ppoly_powmod(const PPoly& a, const Int& e, const PPoly& m, std::uint64_t p);

struct PFactor {
    PPoly poly;             // monic irreducible
    unsigned multiplicity;  // >= 1
};

/// Complete factorization of a nonconstant monic polynomial over F_p:
/// squarefree decomposition (handling the characteristic-p derivative
/// collapse), distinct-degree splitting, then equal-degree splitting by
/// exhaustive root scan (degree 1) or seeded Cantor-Zassenhaus. Factors are
/// sorted by (degree, ascending coefficient vector) and multiplicities sum
/// to deg(f) with each factor counted deg times.
std::vector<PFactor> factor_mod_p(const PPoly& f, std::uint64_t p);

}  // namespace hms::detail
