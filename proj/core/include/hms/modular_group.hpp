#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hms/ideal.hpp"
#include "hms/number_field.hpp"

namespace hms {

/// A matrix in SL2(O): four power-basis elements with det = ad - bc = 1,
/// enforced exactly at construction (DegenerateMatrixError otherwise).
class GroupElement {
public:
    GroupElement(AlgebraicInteger a, AlgebraicInteger b, AlgebraicInteger c,
                 AlgebraicInteger d);

    static GroupElement identity(FieldPtr field);
    /// Elementary matrices [[1, beta], [0, 1]] and [[1, 0], [beta, 1]].
    static GroupElement elementary_upper(const AlgebraicInteger& beta);
    static GroupElement elementary_lower(const AlgebraicInteger& beta);

    const AlgebraicInteger& a() const { return a_; }
    const AlgebraicInteger& b() const { return b_; }
    const AlgebraicInteger& c() const { return c_; }
    const AlgebraicInteger& d() const { return d_; }
    const FieldPtr& field() const { return a_.field(); }

    AlgebraicInteger trace() const { return a_ + d_; }

    GroupElement operator*(const GroupElement& other) const;
    GroupElement inverse() const;
    friend bool operator==(const GroupElement& x, const GroupElement& y);
    friend bool operator!=(const GroupElement& x, const GroupElement& y);

    std::string str() const;

private:
    AlgebraicInteger a_, b_, c_, d_;
};

/// The doubled trace coordinates of a matrix:
///   dx0 = a + d,  dx1 = a - d,  dx2 = b + c,  dx3 = b - c,  dy0 = dx0 - 2,
/// i.e. twice the quadric coordinates x0 = (a+d)/2, x1 = (a-d)/2,
/// x2 = (b+c)/2, x3 = (b-c)/2, y0 = x0 - 1. Doubling keeps every value in O;
/// on SL2 the identity dx0^2 - dx1^2 - dx2^2 + dx3^2 = 4 holds exactly.
struct TraceDecomposition {
    AlgebraicInteger dx0;
    AlgebraicInteger dx1;
    AlgebraicInteger dx2;
    AlgebraicInteger dx3;
    AlgebraicInteger dy0;
};

TraceDecomposition trace_decomposition(const GroupElement& g);

/// Principal congruence subgroup membership: a-1, b, c, d-1 all in I.
bool in_gamma(const GroupElement& g, const Ideal& ideal);

/// Certified congruence constraints on a non-trivial element of Gamma(I),
/// stated with cleared denominators so everything is exact:
///   membership_ok: 4*dy0 in I^2           (i.e. y0 in I^2 / 8)
///   norm_ok:       |N(dy0)| * 4^n >= N(I)^2 (i.e. |N(y0)| >= N(I)^2 / 8^n),
/// the latter only meaningful when dy0 != 0 (norm_applicable). abs_norm_dy0
/// carries |N(dy0)| = 2^n * |N(y0)| for reporting.
struct Lemma1Result {
    bool membership_ok;
    bool norm_applicable;
    bool norm_ok;  // false when not applicable
    Int abs_norm_dy0;
};

/// Throws NotInGammaError when g is not in Gamma(I).
Lemma1Result lemma1_check(const GroupElement& g, const Ideal& ideal);

/// The trace bound guaranteed at some embedding for non-trivial elements of
/// Gamma(I): N(I)^(2/n) / 4 - 2.
double lemma2_bound(const Ideal& ideal);

/// True iff max_j |sigma_j(tr g)| >= lemma2_bound(ideal). Throws
/// NotInGammaError, and ZeroY0Error when tr g = 2 (the bound only applies to
/// dy0 != 0).
bool lemma2_check(const GroupElement& g, const Ideal& ideal);

/// An element of SL2(O / I): the four entries reduced to the canonical HNF
/// fundamental domain, so cosets compare bit-identically.
class ResidueMatrix {
public:
    ResidueMatrix(const Ideal& ideal, const GroupElement& g);

    const IntVec& a() const { return a_; }
    const IntVec& b() const { return b_; }
    const IntVec& c() const { return c_; }
    const IntVec& d() const { return d_; }

    bool is_identity() const;
    /// Residue product, reduced canonically.
    ResidueMatrix multiply(const ResidueMatrix& other) const;
    friend bool operator==(const ResidueMatrix& x, const ResidueMatrix& y);
    friend bool operator!=(const ResidueMatrix& x, const ResidueMatrix& y);

private:
    ResidueMatrix(const Ideal* ideal, IntVec a, IntVec b, IntVec c, IntVec d);

    const Ideal* ideal_;  // non-owning; the caller keeps the ideal alive
    IntVec a_, b_, c_, d_;
};

ResidueMatrix reduce_mod(const GroupElement& g, const Ideal& ideal);

/// |SL2(O/P^t)| for a prime P of residue norm q: q^(3t) - q^(3t-2).
Int order_sl2_prime_power(const Int& residue_norm, unsigned long t);

/// |SL2(O/I)| assembled over the prime factorization of I by the Chinese
/// remainder theorem; equals N(I)^3 * prod_{P | I} (1 - N(P)^-2) and is
/// strictly below N(I)^3 for I != O. Factorization errors propagate.
Int congruence_quotient_order(const Ideal& ideal);

/// Bounds on the index of Gamma(I) in SL2(O): the upper bound is
/// |SL2(O/I)| (the reduction map need not be surjective a priori), the lower
/// bound is the smallest positive rational integer in I.
struct IndexBounds {
    Int upper;
    Int lower;
};

IndexBounds index_bounds(const Ideal& ideal);

/// Order of the subgroup of SL2(O/I) generated by the reductions of the
/// elementary matrices E12(theta^j), E21(theta^j), j < n -- the exact image
/// of SL2(O), computed by breadth-first closure over packed residue keys.
/// Independent of the counting formula, so the two serve as mutual oracles.
///
/// Throws CapExceededError once more than `cap` elements are found, and
/// std::invalid_argument when N(I) > 65535 (key packing would overflow).
Int brute_force_image_order(const Ideal& ideal, std::uint64_t cap = 100000);

/// A seeded pseudo-random element of Gamma(I): a product of `word_length`
/// elementary matrices E12(beta) / E21(beta) with beta drawn from I by taking
/// random small integer combinations of the HNF basis rows (coefficients in
/// [-3, 3]). Deterministic for fixed (ideal, word_length, seed).
GroupElement random_gamma_element(const Ideal& ideal, unsigned word_length,
                                  std::uint64_t seed);

}  // namespace hms
