#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hms/integers.hpp"
#include "hms/number_field.hpp"

namespace hms {

/// A nonzero ideal of O = Z[theta] in Hermite normal form.
///
/// The stored basis is lower-triangular over the power basis: row i is an
/// ideal element of theta-degree exactly i, i.e. basis[i][j] = 0 for j > i
/// and basis[i][i] > 0: additionally every entry below a pivot is reduced,
/// 0 <= basis[k][i] < basis[i][i] for k > i. This normal form is canonical,
/// so two Ideal objects represent the same ideal iff their bases are
/// bit-identical (operator== relies on this).
class Ideal {
public:
    /// Ideal generated by a list of elements (as an O-module, i.e. closed
    /// under multiplication by theta). Throws ZeroElementError when the
    /// generated module is not of full rank (only the zero ideal).
    static Ideal from_generators(FieldPtr field, const std::vector<AlgebraicInteger>& gens);

    /// Principal ideal (g).
    static Ideal principal(const AlgebraicInteger& g);

    /// Ideal (m) for a rational integer m != 0.
    static Ideal from_int(FieldPtr field, const Int& m);

    const FieldPtr& field() const { return field_; }
    /// HNF basis rows, ascending theta-degree.
    const IntMat& basis() const { return basis_; }

    /// |O / I| = product of the diagonal, always positive.
    const Int& norm() const { return norm_; }

    /// The smallest positive rational integer contained in the ideal:
    /// basis()[0][0].
    const Int& min_rational_integer() const { return basis_[0][0]; }

    bool contains(const AlgebraicInteger& a) const;

    /// Coordinates reduced modulo the HNF basis into the canonical
    /// fundamental domain (each coordinate i lies in [0, basis[i][i])).
    /// Two elements are congruent mod I iff they reduce identically.
    IntVec reduce(const AlgebraicInteger& a) const;

    Ideal multiply(const Ideal& other) const;
    Ideal power(unsigned long exponent) const;

    friend bool operator==(const Ideal& a, const Ideal& b);
    friend bool operator!=(const Ideal& a, const Ideal& b);

    std::string str() const;

private:
    Ideal(FieldPtr field, IntMat basis);

    FieldPtr field_;
    IntMat basis_;
    Int norm_;
};

/// One prime power factor of an ideal.
struct IdealFactor {
    Ideal prime;
    unsigned long exponent;
    /// Residue characteristic p and residue degree f, so the prime has norm
    /// p^f.
    Int p;
    int f;
};

/// Primes of O above the rational prime p, obtained by factoring the minimal
/// polynomial mod p. The list is sorted deterministically: by residue degree,
/// then lexicographically by the (reduced, ascending) coefficient vector of
/// the local generator polynomial g with prime = (p, g(theta)). Throws
/// NotPrimeError when p is not prime.
std::vector<IdealFactor> primes_above(const FieldPtr& field, const Int& p);

/// Full prime factorization of I, sorted by (p, residue degree, generator).
/// Factoring needs norm(I)'s rational prime factorization; norms whose
/// second-largest-prime cofactor survives trial division past 10^6 raise
/// NormTooLargeToFactorError.
std::vector<IdealFactor> factor_ideal(const Ideal& ideal);

}  // namespace hms
