#include "hms/number_field.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hms/errors.hpp"
#include "poly_roots.hpp"

namespace hms {

namespace {

constexpr int kMaxDegree = 8;
constexpr double kRootWidthTarget = 1e-15;

}  // namespace

NumberField::NumberField(std::string label, IntVec min_poly, std::vector<double> roots,
                         double root_error)
    : label_(std::move(label)),
      min_poly_(std::move(min_poly)),
      degree_(static_cast<int>(min_poly_.size()) - 1),
      roots_(std::move(roots)),
      root_error_(root_error) {}

FieldPtr NumberField::create(std::string label, IntVec min_poly) {
    if (min_poly.size() < 2)
        throw std::invalid_argument("field: minimal polynomial must have degree >= 1");
    if (min_poly.size() > kMaxDegree + 1)
        throw std::invalid_argument("field: degree capped at 8");
    if (min_poly.back() != 1)
        throw NotMonicError("field: minimal polynomial must be monic (leading coefficient 1)");
    if (!detail::is_squarefree(min_poly))
        throw NotSquarefreeError("field: minimal polynomial has repeated roots");

    auto isolated = detail::isolate_real_roots(min_poly, kRootWidthTarget);
    const auto degree = min_poly.size() - 1;
    if (isolated.roots.size() != degree)
        throw NotTotallyRealError("field: minimal polynomial has " +
                                  std::to_string(isolated.roots.size()) + " real roots, needs " +
                                  std::to_string(degree));
    if (!detail::is_irreducible(min_poly, isolated.roots))
        throw ReducibleError("field: minimal polynomial factors over the integers");

    return FieldPtr(new NumberField(std::move(label), std::move(min_poly),
                                    std::move(isolated.roots), isolated.error));
}

void require_same_field(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    if (!a.field()->same_as(*b.field()))
        throw FieldMismatchError("elements belong to different fields (" + a.field()->label() +
                                 " vs " + b.field()->label() + ")");
}

AlgebraicInteger::AlgebraicInteger(FieldPtr field, IntVec coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw std::invalid_argument("element: null field");
    if (coords_.size() != static_cast<std::size_t>(field_->degree()))
        throw std::invalid_argument("element: expected " + std::to_string(field_->degree()) +
                                    " coordinates, got " + std::to_string(coords_.size()));
}

AlgebraicInteger AlgebraicInteger::from_int(FieldPtr field, Int value) {
    if (!field) throw std::invalid_argument("element: null field");
    IntVec coords(static_cast<std::size_t>(field->degree()), Int(0));
    coords[0] = std::move(value);
    return AlgebraicInteger(std::move(field), std::move(coords));
}

AlgebraicInteger AlgebraicInteger::theta(FieldPtr field) {
    if (!field) throw std::invalid_argument("element: null field");
    const auto n = static_cast<std::size_t>(field->degree());
    if (n == 1) {
        // theta is the rational root itself: x + c0 = 0.
        return from_int(std::move(field), -field->min_poly()[0]);
    }
    IntVec coords(n, Int(0));
    coords[1] = 1;
    return AlgebraicInteger(std::move(field), std::move(coords));
}

bool AlgebraicInteger::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool AlgebraicInteger::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

AlgebraicInteger AlgebraicInteger::operator-() const {
    IntVec coords(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords[i] = -coords_[i];
    return AlgebraicInteger(field_, std::move(coords));
}

AlgebraicInteger operator+(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    require_same_field(a, b);
    IntVec coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = a.coords_[i] + b.coords_[i];
    return AlgebraicInteger(a.field_, std::move(coords));
}

AlgebraicInteger operator-(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    require_same_field(a, b);
    IntVec coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = a.coords_[i] - b.coords_[i];
    return AlgebraicInteger(a.field_, std::move(coords));
}

namespace {

/// Reduces an ascending coefficient vector of degree < 2n-1 modulo the monic
/// minimal polynomial, in place; the result occupies the first n slots.
void reduce_by_min_poly(IntVec& c, const IntVec& min_poly) {
    const std::size_t n = min_poly.size() - 1;
    for (std::size_t k = c.size(); k-- > n;) {
        if (c[k] == 0) continue;
        const Int lead = c[k];
        c[k] = 0;
        // theta^k = theta^(k-n) * (theta^n) = -theta^(k-n) * (lower part).
        for (std::size_t j = 0; j < n; ++j) c[k - n + j] -= lead * min_poly[j];
    }
    c.resize(n);
}

}  // namespace

AlgebraicInteger operator*(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    require_same_field(a, b);
    const std::size_t n = a.coords_.size();
    IntVec prod(2 * n - 1, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coords_[j] == 0) continue;
            prod[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    reduce_by_min_poly(prod, a.field_->min_poly());
    return AlgebraicInteger(a.field_, std::move(prod));
}

AlgebraicInteger operator*(const Int& k, const AlgebraicInteger& a) {
    IntVec coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = k * a.coords_[i];
    return AlgebraicInteger(a.field_, std::move(coords));
}

bool operator==(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    require_same_field(a, b);
    return a.coords_ == b.coords_;
}

bool operator!=(const AlgebraicInteger& a, const AlgebraicInteger& b) { return !(a == b); }

IntMat AlgebraicInteger::multiplication_matrix() const {
    const std::size_t n = coords_.size();
    IntMat m(n);
    IntVec row = coords_;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = row;
        if (i + 1 == n) break;
        // Multiply by theta: shift up one degree, then reduce.
        IntVec next(n + 1, Int(0));
        for (std::size_t j = 0; j < n; ++j) next[j + 1] = row[j];
        reduce_by_min_poly(next, field_->min_poly());
        row = std::move(next);
    }
    return m;
}

Int AlgebraicInteger::norm() const { return det_bareiss(multiplication_matrix()); }

Int AlgebraicInteger::trace() const {
    const IntMat m = multiplication_matrix();
    Int t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

Embeddings AlgebraicInteger::embed() const {
    const auto& roots = field_->embeddings();
    const std::size_t n = coords_.size();
    Embeddings out;
    out.value.reserve(n);
    out.error.reserve(n);
    for (const double root : roots) {
        // Horner evaluation; error from the root uncertainty dominates, with
        // a small cushion for the floating evaluation itself.
        double acc = 0.0;
        double coeff_scale = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            acc = acc * root + to_double(coords_[i]);
            coeff_scale = coeff_scale * std::abs(root) + std::abs(to_double(coords_[i]));
        }
        const double deriv_scale =
            static_cast<double>(n) * coeff_scale * std::pow(std::max(1.0, std::abs(root)), n - 1);
        out.value.push_back(acc);
        out.error.push_back(deriv_scale * field_->root_error() +
                            coeff_scale * 1e-15 * static_cast<double>(n) + 1e-300);
    }
    return out;
}

std::string AlgebraicInteger::str() const {
    std::ostringstream os;
    bool printed = false;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        if (printed && coords_[i] > 0) os << "+";
        if (i == 0) {
            os << coords_[i].get_str();
        } else {
            if (coords_[i] == -1)
                os << "-";
            else if (coords_[i] != 1)
                os << coords_[i].get_str() << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        printed = true;
    }
    if (!printed) os << "0";
    return os.str();
}

}  // namespace hms
