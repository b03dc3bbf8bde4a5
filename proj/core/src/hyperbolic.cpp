#include "hms/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hms/errors.hpp"

namespace hms {

namespace {

constexpr double kParabolicTol = 1e-12;
constexpr double kDetTol = 1e-9;

}  // namespace

IsometryClass classify(double tr) {
    const double a = std::abs(tr);
    if (std::abs(a - 2.0) <= kParabolicTol) return IsometryClass::Parabolic;
    return a > 2.0 ? IsometryClass::Hyperbolic : IsometryClass::Elliptic;
}

std::vector<IsometryClass> classify_embeddings(const GroupElement& g) {
    const AlgebraicInteger tr = g.trace();
    const auto n = static_cast<std::size_t>(g.field()->degree());
    if (tr.is_rational()) {
        // Every embedding sees the same rational integer; compare exactly.
        const Int& t = tr.coords()[0];
        IsometryClass cls;
        if (t == 2 || t == -2)
            cls = IsometryClass::Parabolic;
        else if (t > 2 || t < -2)
            cls = IsometryClass::Hyperbolic;
        else
            cls = IsometryClass::Elliptic;
        return std::vector<IsometryClass>(n, cls);
    }
    const auto emb = tr.embed();
    std::vector<IsometryClass> out;
    out.reserve(n);
    for (const double t : emb.value) out.push_back(classify(t));
    return out;
}

bool is_totally_hyperbolic(const GroupElement& g) {
    const auto classes = classify_embeddings(g);
    return std::all_of(classes.begin(), classes.end(),
                       [](IsometryClass c) { return c == IsometryClass::Hyperbolic; });
}

double acosh_stable(double x) {
    if (x < 1.0) throw std::invalid_argument("acosh_stable: argument below 1");
    if (x <= 1e8) return std::log(x + std::sqrt(x * x - 1.0));
    // Beyond 1e8 the direct form loses the whole correction to rounding;
    // acosh(x) = log(2x) - 1/(4x^2) - O(x^-4).
    return std::log(2.0 * x) - 1.0 / (4.0 * x * x);
}

double translation_length(double tr) {
    const double a = std::abs(tr);
    if (classify(tr) != IsometryClass::Hyperbolic)
        throw NotHyperbolicError("translation_length: |trace| = " + std::to_string(a) +
                                 " is not above 2");
    return 2.0 * acosh_stable(a / 2.0);
}

double displacement_lower_bound_single(double tr) {
    const double a = std::abs(tr);
    if (classify(tr) != IsometryClass::Hyperbolic)
        throw NotHyperbolicError("displacement_lower_bound_single: |trace| = " +
                                 std::to_string(a) + " is not above 2");
    return 2.0 * std::log(a - 1.0);
}

double product_geodesic_length(const std::vector<double>& traces) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < traces.size(); ++i)
        if (classify(traces[i]) != IsometryClass::Hyperbolic) bad.push_back(i + 1);
    if (!bad.empty()) {
        std::string what = "product_geodesic_length: non-hyperbolic factor at embedding";
        for (const auto i : bad) what += " " + std::to_string(i);
        throw NotTotallyHyperbolicError(what, std::move(bad));
    }
    double sum_sq = 0.0;
    for (const double t : traces) {
        const double l = translation_length(t);
        sum_sq += l * l;
    }
    return std::sqrt(sum_sq);
}

double product_geodesic_length(const GroupElement& g) {
    const auto classes = classify_embeddings(g);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] != IsometryClass::Hyperbolic) bad.push_back(i + 1);
    if (!bad.empty()) {
        std::string what = "product_geodesic_length: non-hyperbolic factor at embedding";
        for (const auto i : bad) what += " " + std::to_string(i);
        throw NotTotallyHyperbolicError(what, std::move(bad));
    }
    const auto emb = g.trace().embed();
    double sum_sq = 0.0;
    for (const double t : emb.value) {
        // Classification already certified hyperbolicity (exactly, for
        // rational traces); clamp defensively against |t| within tolerance.
        const double a = std::max(std::abs(t), 2.0 + 1e-15);
        const double l = 2.0 * acosh_stable(a / 2.0);
        sum_sq += l * l;
    }
    return std::sqrt(sum_sq);
}

UpperHalfPoint moebius_apply(const std::array<double, 4>& m, UpperHalfPoint z) {
    const double det = m[0] * m[3] - m[1] * m[2];
    // Relative tolerance: an exactly unimodular matrix with entries of size M
    // evaluates to 1 +/- O(M^2 eps) in doubles, so an absolute test would
    // reject honest large matrices.
    const double scale = std::max(1.0, std::abs(m[0] * m[3]) + std::abs(m[1] * m[2]));
    if (std::abs(det - 1.0) > kDetTol * scale)
        throw DegenerateMatrixError("moebius_apply: determinant " + std::to_string(det) +
                                    " is not 1");
    if (!(z.y > 0.0)) throw std::invalid_argument("moebius_apply: point not in upper half-plane");
    // Real part via (az + b)(conj(cz + d)) / |cz + d|^2; imaginary part via
    // the det-1 invariant Im(gz) = Im(z) / |cz + d|^2, which stays positive
    // where the difference form im_num*re_den - re_num*im_den would cancel
    // catastrophically for large entries.
    const double re_num = m[0] * z.x + m[1];
    const double im_num = m[0] * z.y;
    const double re_den = m[2] * z.x + m[3];
    const double im_den = m[2] * z.y;
    const double den = re_den * re_den + im_den * im_den;
    return UpperHalfPoint{(re_num * re_den + im_num * im_den) / den, z.y / den};
}

double hyperbolic_distance(UpperHalfPoint z, UpperHalfPoint w) {
    if (!(z.y > 0.0) || !(w.y > 0.0))
        throw std::invalid_argument("hyperbolic_distance: points must be in the upper half-plane");
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    return acosh_stable(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

double displacement_at(const ProductPoint& z, const GroupElement& A) {
    const auto n = static_cast<std::size_t>(A.field()->degree());
    if (z.size() != n)
        throw std::invalid_argument("displacement_at: expected one point per embedding");
    const auto ea = A.a().embed().value;
    const auto eb = A.b().embed().value;
    const auto ec = A.c().embed().value;
    const auto ed = A.d().embed().value;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const UpperHalfPoint image =
            moebius_apply({ea[i], eb[i], ec[i], ed[i]}, z[i]);
        const double d = hyperbolic_distance(z[i], image);
        sum_sq += d * d;
    }
    return std::sqrt(sum_sq);
}

}  // namespace hms
