#include "hms/modular_group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "hms/errors.hpp"

namespace hms {

GroupElement::GroupElement(AlgebraicInteger a, AlgebraicInteger b, AlgebraicInteger c,
                           AlgebraicInteger d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    require_same_field(a_, b_);
    require_same_field(a_, c_);
    require_same_field(a_, d_);
    const AlgebraicInteger det = a_ * d_ - b_ * c_;
    if (!(det == AlgebraicInteger::one(a_.field())))
        throw DegenerateMatrixError("matrix determinant is " + det.str() + ", expected 1");
}

GroupElement GroupElement::identity(FieldPtr field) {
    auto one = AlgebraicInteger::one(field);
    auto zero = AlgebraicInteger::zero(field);
    return GroupElement(one, zero, zero, one);
}

GroupElement GroupElement::elementary_upper(const AlgebraicInteger& beta) {
    auto one = AlgebraicInteger::one(beta.field());
    auto zero = AlgebraicInteger::zero(beta.field());
    return GroupElement(one, beta, zero, one);
}

GroupElement GroupElement::elementary_lower(const AlgebraicInteger& beta) {
    auto one = AlgebraicInteger::one(beta.field());
    auto zero = AlgebraicInteger::zero(beta.field());
    return GroupElement(one, zero, beta, one);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return GroupElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                        c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

GroupElement GroupElement::inverse() const { return GroupElement(d_, -b_, -c_, a_); }

bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }

std::string GroupElement::str() const {
    return "[[" + a_.str() + ", " + b_.str() + "], [" + c_.str() + ", " + d_.str() + "]]";
}

TraceDecomposition trace_decomposition(const GroupElement& g) {
    const auto two = AlgebraicInteger::from_int(g.field(), 2);
    TraceDecomposition t{g.a() + g.d(), g.a() - g.d(), g.b() + g.c(), g.b() - g.c(),
                         g.a() + g.d()};
    t.dy0 = t.dx0 - two;
    return t;
}

bool in_gamma(const GroupElement& g, const Ideal& ideal) {
    const auto one = AlgebraicInteger::one(g.field());
    return ideal.contains(g.a() - one) && ideal.contains(g.b()) && ideal.contains(g.c()) &&
           ideal.contains(g.d() - one);
}

Lemma1Result lemma1_check(const GroupElement& g, const Ideal& ideal) {
    if (!in_gamma(g, ideal))
        throw NotInGammaError("lemma1_check: matrix is not in the congruence subgroup");
    const AlgebraicInteger dy0 = trace_decomposition(g).dy0;
    const Ideal i_squared = ideal.multiply(ideal);

    Lemma1Result r{};
    r.membership_ok = i_squared.contains(Int(4) * dy0);
    r.norm_applicable = !dy0.is_zero();
    r.abs_norm_dy0 = 0;
    r.norm_ok = false;
    if (r.norm_applicable) {
        r.abs_norm_dy0 = abs(dy0.norm());
        const auto n = static_cast<unsigned long>(g.field()->degree());
        r.norm_ok = r.abs_norm_dy0 * pow_int(Int(4), n) >= ideal.norm() * ideal.norm();
    }
    return r;
}

double lemma2_bound(const Ideal& ideal) {
    const double n = ideal.field()->degree();
    return std::exp((2.0 / n) * log_int(ideal.norm())) / 4.0 - 2.0;
}

bool lemma2_check(const GroupElement& g, const Ideal& ideal) {
    if (!in_gamma(g, ideal))
        throw NotInGammaError("lemma2_check: matrix is not in the congruence subgroup");
    if (trace_decomposition(g).dy0.is_zero())
        throw ZeroY0Error("lemma2_check: trace is exactly 2, bound does not apply");
    const auto traces = g.trace().embed();
    double max_abs = 0.0;
    for (const double t : traces.value) max_abs = std::max(max_abs, std::abs(t));
    // Tiny slack absorbs the floating embedding error; the bound itself has
    // real margin for true congruence elements.
    return max_abs >= lemma2_bound(ideal) - 1e-9;
}

ResidueMatrix::ResidueMatrix(const Ideal* ideal, IntVec a, IntVec b, IntVec c, IntVec d)
    : ideal_(ideal), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

ResidueMatrix::ResidueMatrix(const Ideal& ideal, const GroupElement& g)
    : ResidueMatrix(&ideal, ideal.reduce(g.a()), ideal.reduce(g.b()), ideal.reduce(g.c()),
                    ideal.reduce(g.d())) {}

bool ResidueMatrix::is_identity() const {
    const auto one =
        ideal_->reduce(AlgebraicInteger::one(ideal_->field()));
    const auto zero =
        ideal_->reduce(AlgebraicInteger::zero(ideal_->field()));
    return a_ == one && b_ == zero && c_ == zero && d_ == one;
}

ResidueMatrix ResidueMatrix::multiply(const ResidueMatrix& other) const {
    const auto& field = ideal_->field();
    const AlgebraicInteger a1(field, a_), b1(field, b_), c1(field, c_), d1(field, d_);
    const AlgebraicInteger a2(field, other.a_), b2(field, other.b_), c2(field, other.c_),
        d2(field, other.d_);
    return ResidueMatrix(ideal_, ideal_->reduce(a1 * a2 + b1 * c2),
                         ideal_->reduce(a1 * b2 + b1 * d2), ideal_->reduce(c1 * a2 + d1 * c2),
                         ideal_->reduce(c1 * b2 + d1 * d2));
}

bool operator==(const ResidueMatrix& x, const ResidueMatrix& y) {
    return *x.ideal_ == *y.ideal_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ &&
           x.d_ == y.d_;
}

bool operator!=(const ResidueMatrix& x, const ResidueMatrix& y) { return !(x == y); }

ResidueMatrix reduce_mod(const GroupElement& g, const Ideal& ideal) {
    return ResidueMatrix(ideal, g);
}

Int order_sl2_prime_power(const Int& residue_norm, unsigned long t) {
    if (t == 0) throw std::invalid_argument("order_sl2_prime_power: exponent must be >= 1");
    return pow_int(residue_norm, 3 * t) - pow_int(residue_norm, 3 * t - 2);
}

Int congruence_quotient_order(const Ideal& ideal) {
    Int order = 1;
    for (const auto& factor : factor_ideal(ideal))
        order *= order_sl2_prime_power(pow_int(factor.p, static_cast<unsigned long>(factor.f)),
                                       factor.exponent);
    return order;
}

IndexBounds index_bounds(const Ideal& ideal) {
    return IndexBounds{congruence_quotient_order(ideal), ideal.min_rational_integer()};
}

namespace {

// Fixed-size residue vectors for the BFS over SL2(O/I); degree <= 8 and
// every coordinate below its HNF pivot, which brute_force_image_order caps
// at 65535 overall, so int64 never overflows in the ring operations.
constexpr std::size_t kMaxDeg = 8;
using RVec = std::array<std::int64_t, kMaxDeg>;

struct ResidueRing {
    std::size_t n = 0;
    std::int64_t norm = 1;
    std::array<std::int64_t, kMaxDeg> min_poly{};  // ascending, degree n monic
    std::array<std::array<std::int64_t, kMaxDeg>, kMaxDeg> basis{};
    std::array<std::int64_t, kMaxDeg> stride{};

    explicit ResidueRing(const Ideal& ideal) {
        n = ideal.basis().size();
        const auto& mp = ideal.field()->min_poly();
        for (std::size_t i = 0; i < n; ++i) min_poly[i] = mp[i].get_si();
        std::int64_t s = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) basis[i][j] = ideal.basis()[i][j].get_si();
            stride[i] = s;
            s *= basis[i][i];
        }
        norm = s;
    }

    void reduce(RVec& c) const {
        for (std::size_t i = n; i-- > 0;) {
            const std::int64_t d = basis[i][i];
            std::int64_t q = c[i] / d;
            if (c[i] % d < 0) --q;  // floor
            if (q == 0) continue;
            for (std::size_t j = 0; j <= i; ++j) c[j] -= q * basis[i][j];
        }
    }

    RVec mul(const RVec& x, const RVec& y) const {
        std::array<std::int64_t, 2 * kMaxDeg> prod{};
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] += x[i] * y[j];
        }
        for (std::size_t k = 2 * n - 1; k-- > n;) {
            const std::int64_t lead = prod[k];
            if (lead == 0) continue;
            prod[k] = 0;
            for (std::size_t j = 0; j < n; ++j) prod[k - n + j] -= lead * min_poly[j];
        }
        RVec out{};
        for (std::size_t j = 0; j < n; ++j) out[j] = prod[j];
        reduce(out);
        return out;
    }

    RVec add(const RVec& x, const RVec& y) const {
        RVec out{};
        for (std::size_t j = 0; j < n; ++j) out[j] = x[j] + y[j];
        reduce(out);
        return out;
    }

    std::uint64_t index_of(const RVec& c) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            idx += static_cast<std::uint64_t>(c[i]) * static_cast<std::uint64_t>(stride[i]);
        return idx;
    }
};

struct RMat {
    RVec a, b, c, d;
};

}  // namespace

Int brute_force_image_order(const Ideal& ideal, std::uint64_t cap) {
    if (ideal.norm() > 65535)
        throw std::invalid_argument(
            "brute_force_image_order: residue ring larger than 65535 elements");
    const ResidueRing ring(ideal);
    const auto nn = static_cast<std::uint64_t>(ring.norm);

    const auto key_of = [&ring, nn](const RMat& m) {
        return ((ring.index_of(m.a) * nn + ring.index_of(m.b)) * nn + ring.index_of(m.c)) * nn +
               ring.index_of(m.d);
    };

    // Generators: the elementary matrices over the power basis of O.
    std::vector<RMat> gens;
    RVec zero{};
    RVec one{};
    one[0] = 1;
    ring.reduce(one);
    for (std::size_t j = 0; j < ring.n; ++j) {
        RVec theta_j{};
        theta_j[j] = 1;
        ring.reduce(theta_j);
        gens.push_back(RMat{one, theta_j, zero, one});
        gens.push_back(RMat{one, zero, theta_j, one});
    }

    RMat id{one, zero, zero, one};
    std::unordered_set<std::uint64_t> visited{key_of(id)};
    std::deque<RMat> frontier{id};
    while (!frontier.empty()) {
        const RMat m = frontier.front();
        frontier.pop_front();
        for (const auto& g : gens) {
            RMat next;
            next.a = ring.add(ring.mul(m.a, g.a), ring.mul(m.b, g.c));
            next.b = ring.add(ring.mul(m.a, g.b), ring.mul(m.b, g.d));
            next.c = ring.add(ring.mul(m.c, g.a), ring.mul(m.d, g.c));
            next.d = ring.add(ring.mul(m.c, g.b), ring.mul(m.d, g.d));
            if (visited.insert(key_of(next)).second) {
                if (visited.size() > cap)
                    throw CapExceededError("brute_force_image_order: more than " +
                                           std::to_string(cap) + " elements reached");
                frontier.push_back(next);
            }
        }
    }
    return Int(static_cast<unsigned long>(visited.size()));
}

GroupElement random_gamma_element(const Ideal& ideal, unsigned word_length,
                                  std::uint64_t seed) {
    if (word_length == 0)
        throw std::invalid_argument("random_gamma_element: word length must be >= 1");
    const auto& field = ideal.field();
    std::mt19937_64 rng(seed);

    GroupElement g = GroupElement::identity(field);
    const auto n = ideal.basis().size();
    for (unsigned w = 0; w < word_length; ++w) {
        // beta = random small combination of the HNF basis rows: always in I.
        IntVec coords(n, Int(0));
        for (std::size_t i = 0; i < n; ++i) {
            const long k = static_cast<long>(rng() % 7) - 3;
            if (k == 0) continue;
            for (std::size_t j = 0; j <= i; ++j) coords[j] += k * ideal.basis()[i][j];
        }
        const AlgebraicInteger beta(field, std::move(coords));
        const bool upper = (rng() & 1) != 0;
        g = g * (upper ? GroupElement::elementary_upper(beta)
                       : GroupElement::elementary_lower(beta));
    }
    return g;
}

}  // namespace hms
