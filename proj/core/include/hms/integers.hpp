#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hms {

/// Arbitrary-precision integer; all exact arithmetic in the library runs on
/// this type.
using Int = mpz_class;
/// Exact rational, used internally for root isolation.
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// Floor division (rounds toward -inf), matching the HNF reduction convention.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Natural log of a positive Int, stable for values far beyond double range.
double log_int(const Int& v);

/// Nearest-double conversion (GMP's native conversion).
inline double to_double(const Int& v) { return v.get_d(); }

std::string to_string(const Int& v);

// -- Exact linear algebra on small integer matrices (degree <= 8 scale) ----

/// Determinant by fraction-free Bareiss elimination.
Int det_bareiss(IntMat m);

/// Solves x * m = rhs for an integer row vector x (Cramer on the transposed
/// system); empty optional if the solution is not integral or m is singular.
std::optional<IntVec> solve_left_integer(const IntMat& m, const IntVec& rhs);

/// Canonical Hermite normal form of the row module spanned by `rows`
/// (vectors of fixed width n). Returns the n x n triangular basis, rows
/// indexed by their leading coordinate: basis[i][j] = 0 for j > i,
/// basis[i][i] > 0, and 0 <= basis[k][i] < basis[i][i] for k > i.
/// Empty result if the module has rank < n.
IntMat hnf_triangular(std::vector<IntVec> rows, std::size_t n);

}  // namespace hms
