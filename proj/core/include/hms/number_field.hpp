#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hms/integers.hpp"

namespace hms {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A monogenic totally real number field K = Q(theta), with the ring of
/// integers taken to be Z[theta]. The defining polynomial must be monic,
/// squarefree, irreducible and split completely over R; construction rejects
/// anything else. The n real roots are isolated exactly and refined to
/// absolute error below `root_error()`, stored in increasing order.
///
/// The monogenicity of Z[theta] is an assumption, not something this class
/// can verify; the shipped presets (q-sqrt2, q-sqrt3, q-sqrt5, cubic-7) are
/// fields for which it is known to hold.
class NumberField {
public:
    /// Builds a field from an ascending coefficient vector (constant term
    /// first, leading coefficient last and equal to 1). Degree is capped at 8,
    /// the range the irreducibility search is designed for.
    ///
    /// Throws NotMonicError, NotSquarefreeError, NotTotallyRealError,
    /// ReducibleError, or std::invalid_argument (degree 0 or above the cap).
    static FieldPtr create(std::string label, IntVec min_poly);

    const std::string& label() const { return label_; }
    const IntVec& min_poly() const { return min_poly_; }
    int degree() const { return degree_; }

    /// Real embeddings of theta, strictly increasing.
    const std::vector<double>& embeddings() const { return roots_; }
    /// Uniform absolute error bound on every stored root.
    double root_error() const { return root_error_; }

    /// Structural identity: same defining polynomial.
    bool same_as(const NumberField& other) const { return min_poly_ == other.min_poly_; }

private:
    NumberField(std::string label, IntVec min_poly, std::vector<double> roots,
                double root_error);

    std::string label_;
    IntVec min_poly_;
    int degree_;
    std::vector<double> roots_;
    double root_error_;
};

/// Per-embedding values of an element together with a documented absolute
/// error bound for each.
struct Embeddings {
    std::vector<double> value;
    std::vector<double> error;
};

/// An element of O = Z[theta], stored as the exact integer coordinate vector
/// of the power basis 1, theta, ..., theta^(n-1). Immutable value type; all
/// operations are pure and exact.
class AlgebraicInteger {
public:
    AlgebraicInteger(FieldPtr field, IntVec coords);

    static AlgebraicInteger from_int(FieldPtr field, Int value);
    static AlgebraicInteger zero(FieldPtr field) { return from_int(std::move(field), 0); }
    static AlgebraicInteger one(FieldPtr field) { return from_int(std::move(field), 1); }
    static AlgebraicInteger theta(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const IntVec& coords() const { return coords_; }

    bool is_zero() const;
    /// True when all nonconstant coordinates vanish.
    bool is_rational() const;

    AlgebraicInteger operator-() const;
    friend AlgebraicInteger operator+(const AlgebraicInteger& a, const AlgebraicInteger& b);
    friend AlgebraicInteger operator-(const AlgebraicInteger& a, const AlgebraicInteger& b);
    friend AlgebraicInteger operator*(const AlgebraicInteger& a, const AlgebraicInteger& b);
    friend AlgebraicInteger operator*(const Int& k, const AlgebraicInteger& a);
    friend bool operator==(const AlgebraicInteger& a, const AlgebraicInteger& b);
    friend bool operator!=(const AlgebraicInteger& a, const AlgebraicInteger& b);

    /// Row i holds the coordinates of a * theta^i: the matrix of
    /// multiplication by `a` in the power basis.
    IntMat multiplication_matrix() const;

    /// Product of all real embeddings, computed exactly as det of the
    /// multiplication matrix.
    Int norm() const;
    /// Sum of all real embeddings, the trace of the multiplication matrix.
    Int trace() const;

    /// Floating-point embeddings sigma_1(a), ..., sigma_n(a) with per-value
    /// absolute error bounds (coordinate size x root error x n x |theta|^(n-1)).
    Embeddings embed() const;

    std::string str() const;

private:
    FieldPtr field_;
    IntVec coords_;
};

/// Throws FieldMismatchError unless both elements live in structurally the
/// same field.
void require_same_field(const AlgebraicInteger& a, const AlgebraicInteger& b);

}  // namespace hms
