#pragma once

// Exact real-root machinery for integer polynomials: Sturm-sequence root
// counting, bisection-based isolation/refinement, squarefreeness, and the
// root-guided irreducibility test used by field construction. Internal to
// the library; everything here works on ascending coefficient vectors.

#include <optional>
#include <vector>

#include "hms/integers.hpp"

namespace hms::detail {

using QPoly = std::vector<Rat>;

/// Drops leading (highest-degree) zero coefficients; the zero polynomial
/// becomes the empty vector.
void q_trim(QPoly& p);

QPoly q_from_int(const IntVec& p);
QPoly q_derivative(const QPoly& p);

/// Euclidean remainder a mod b (b nonzero).
QPoly q_rem(QPoly a, const QPoly& b);

/// Monic gcd over Q.
QPoly q_gcd(QPoly a, QPoly b);

int sign_at(const QPoly& p, const Rat& x);

/// Sturm chain p, p', -rem(...), ...
std::vector<QPoly> sturm_chain(const QPoly& p);

/// Number of distinct real roots in the half-open interval (a, b], a < b.
int count_roots_between(const std::vector<QPoly>& chain, const Rat& a, const Rat& b);

/// A bound B with every real root of p inside [-B, B] (Cauchy bound).
Rat root_bound(const IntVec& p);

/// True iff gcd(p, p') is constant.
bool is_squarefree(const IntVec& p);

struct RealRoots {
    std::vector<double> roots;  // increasing
    double error;               // uniform absolute error bound
};

/// All distinct real roots of a squarefree integer polynomial, each bracketed
/// by exact bisection to width <= width_target before conversion to double.
RealRoots isolate_real_roots(const IntVec& p, double width_target);

/// Irreducibility over Z of a monic squarefree totally real polynomial, given
/// its full set of real roots: every proper subset of roots is expanded into
/// a candidate monic factor, coefficients are rounded to integers, and the
/// candidate is confirmed or refuted by exact polynomial division. Exact
/// division is the final arbiter, so a "reducible" verdict is always correct;
/// the root precision makes missed factors impossible at the coefficient
/// scale this library targets (degree <= 8).
bool is_irreducible(const IntVec& p, const std::vector<double>& roots);

/// Exact division of integer polynomials: quotient if the remainder is zero,
/// empty optional otherwise. Divisor must be monic.
std::optional<IntVec> divide_exact_monic(const IntVec& dividend, const IntVec& divisor);

}  // namespace hms::detail
