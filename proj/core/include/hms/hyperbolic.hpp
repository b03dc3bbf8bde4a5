#pragma once

#include <array>
#include <string>
#include <vector>

#include "hms/modular_group.hpp"

namespace hms {

/// Conjugacy type of an element of SL2(R) read off |trace|:
/// elliptic < 2, parabolic = 2, hyperbolic > 2.
enum class IsometryClass { Elliptic, Parabolic, Hyperbolic };

/// Classification from a floating trace. Values within 1e-12 of |tr| = 2
/// count as parabolic; exact traces should go through classify_embeddings,
/// which bypasses the tolerance wherever the trace is a rational integer.
IsometryClass classify(double tr);

/// Per-embedding classification of g in SL2(O). A rational-integer trace t
/// is decided exactly (every embedding sees the same t); otherwise the
/// floating embeddings are classified with the 1e-12 parabolic tolerance.
std::vector<IsometryClass> classify_embeddings(const GroupElement& g);

bool is_totally_hyperbolic(const GroupElement& g);

/// log(x + sqrt(x^2 - 1)) evaluated stably: the direct formula up to
/// x = 1e8, and log(2x) - 1/(4x^2) beyond, where x^2 - 1 would lose all
/// of the correction to rounding. Requires x >= 1.
double acosh_stable(double x);

/// Translation length of a hyperbolic isometry: 2 cosh(l/2) = |tr| gives
/// l = 2 acosh(|tr| / 2). Throws NotHyperbolicError unless |tr| > 2.
double translation_length(double tr);

/// Logarithmic lower bound 2 log(|tr| - 1) <= translation_length(tr),
/// avoiding acosh entirely. Throws NotHyperbolicError unless |tr| > 2.
double displacement_lower_bound_single(double tr);

/// Length of the closed geodesic of a totally hyperbolic element acting on
/// the product of hyperbolic planes: the Euclidean norm
/// sqrt(sum_i translation_length(tr_i)^2) over the embedded traces. Throws
/// NotTotallyHyperbolicError listing the non-hyperbolic indices (1-based).
double product_geodesic_length(const std::vector<double>& traces);

/// Same, from the exact element: classifies embeddings first (exact for
/// rational traces), then evaluates on the floating embedded traces.
double product_geodesic_length(const GroupElement& g);

/// A point x + iy of the upper half-plane, y > 0.
struct UpperHalfPoint {
    double x;
    double y;
};

/// One point per real embedding.
using ProductPoint = std::vector<UpperHalfPoint>;

/// Moebius action z -> (az + b) / (cz + d) of a real matrix with det 1
/// (within 1e-9 relative to |ad| + |bc|, so exactly unimodular matrices of
/// any size pass; DegenerateMatrixError otherwise). Preserves y > 0.
UpperHalfPoint moebius_apply(const std::array<double, 4>& m, UpperHalfPoint z);

/// Hyperbolic distance: cosh d(z, w) = 1 + |z - w|^2 / (2 y_z y_w).
double hyperbolic_distance(UpperHalfPoint z, UpperHalfPoint w);

/// Displacement of the product point z under A in SL2(O):
/// sqrt(sum_i d(z_i, sigma_i(A) z_i)^2), with sigma_i(A) the i-th embedded
/// real matrix. z must have one coordinate per embedding.
double displacement_at(const ProductPoint& z, const GroupElement& A);

}  // namespace hms
