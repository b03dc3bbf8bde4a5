#include "hms/ideal.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hms/errors.hpp"
#include "poly_mod_p.hpp"

namespace hms {

Ideal::Ideal(FieldPtr field, IntMat basis)
    : field_(std::move(field)), basis_(std::move(basis)), norm_(1) {
    for (std::size_t i = 0; i < basis_.size(); ++i) norm_ *= basis_[i][i];
}

Ideal Ideal::from_generators(FieldPtr field, const std::vector<AlgebraicInteger>& gens) {
    if (!field) throw std::invalid_argument("ideal: null field");
    const auto n = static_cast<std::size_t>(field->degree());
    std::vector<IntVec> rows;
    rows.reserve(gens.size() * n);
    for (const auto& g : gens) {
        if (!g.field()->same_as(*field))
            throw FieldMismatchError("ideal: generator from a different field");
        // Rows of the multiplication matrix are g, g*theta, ..., exactly the
        // Z-generators of the O-module (g); stacking them for every g gives
        // the ideal generated by all of them.
        IntMat m = g.multiplication_matrix();
        for (auto& row : m) rows.push_back(std::move(row));
    }
    IntMat basis = hnf_triangular(std::move(rows), n);
    if (basis.empty())
        throw ZeroElementError("ideal: generators span only a rank-deficient module");
    return Ideal(std::move(field), std::move(basis));
}

Ideal Ideal::principal(const AlgebraicInteger& g) {
    if (g.is_zero()) throw ZeroElementError("ideal: zero generator");
    return from_generators(g.field(), {g});
}

Ideal Ideal::from_int(FieldPtr field, const Int& m) {
    if (m == 0) throw ZeroElementError("ideal: zero generator");
    return principal(AlgebraicInteger::from_int(std::move(field), abs(m)));
}

IntVec Ideal::reduce(const AlgebraicInteger& a) const {
    if (!a.field()->same_as(*field_))
        throw FieldMismatchError("ideal: element from a different field");
    IntVec c = a.coords();
    for (std::size_t i = c.size(); i-- > 0;) {
        const Int q = floor_div(c[i], basis_[i][i]);
        if (q == 0) continue;
        for (std::size_t j = 0; j <= i; ++j) c[j] -= q * basis_[i][j];
    }
    return c;
}

bool Ideal::contains(const AlgebraicInteger& a) const {
    const IntVec r = reduce(a);
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

Ideal Ideal::multiply(const Ideal& other) const {
    if (!field_->same_as(*other.field_))
        throw FieldMismatchError("ideal: product across different fields");
    const auto n = basis_.size();
    std::vector<IntVec> rows;
    rows.reserve(n * n);
    for (const auto& bi : basis_) {
        const AlgebraicInteger x(field_, bi);
        for (const auto& cj : other.basis_) {
            rows.push_back((x * AlgebraicInteger(field_, cj)).coords());
        }
    }
    IntMat basis = hnf_triangular(std::move(rows), n);
    if (basis.empty()) throw ZeroElementError("ideal: degenerate product");
    return Ideal(field_, std::move(basis));
}

Ideal Ideal::power(unsigned long exponent) const {
    if (exponent == 0)
        throw std::invalid_argument("ideal: power exponent must be >= 1");
    Ideal result = *this;
    for (unsigned long i = 1; i < exponent; ++i) result = result.multiply(*this);
    return result;
}

bool operator==(const Ideal& a, const Ideal& b) {
    if (!a.field_->same_as(*b.field_))
        throw FieldMismatchError("ideal: comparison across different fields");
    return a.basis_ == b.basis_;  // HNF is canonical
}

bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

std::string Ideal::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        os << (i ? ", (" : "(");
        for (std::size_t j = 0; j < basis_[i].size(); ++j)
            os << (j ? "," : "") << basis_[i][j].get_str();
        os << ")";
    }
    os << "]";
    return os.str();
}

namespace {

bool is_rational_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

/// g(theta) for a monic-or-smaller polynomial g over [0, p); degree n inputs
/// are first reduced by the minimal polynomial (g - min_poly has degree < n).
AlgebraicInteger lift_to_element(const FieldPtr& field, const detail::PPoly& g) {
    const auto n = static_cast<std::size_t>(field->degree());
    IntVec coords(n, Int(0));
    if (g.size() == n + 1) {
        for (std::size_t i = 0; i < n; ++i)
            coords[i] = Int(static_cast<unsigned long>(g[i])) - field->min_poly()[i];
    } else {
        for (std::size_t i = 0; i < g.size(); ++i)
            coords[i] = Int(static_cast<unsigned long>(g[i]));
    }
    return AlgebraicInteger(field, std::move(coords));
}

}  // namespace

std::vector<IdealFactor> primes_above(const FieldPtr& field, const Int& p) {
    if (!is_rational_prime(p))
        throw NotPrimeError("primes_above: " + to_string(p) + " is not a rational prime");
    if (!p.fits_ulong_p() || p >= Int(1) << 62)
        throw std::invalid_argument("primes_above: prime exceeds the supported modulus range");
    const auto pu = static_cast<std::uint64_t>(p.get_ui());

    const detail::PPoly f = detail::ppoly_from_int(field->min_poly(), pu);
    const auto factors = detail::factor_mod_p(f, pu);

    std::vector<IdealFactor> out;
    out.reserve(factors.size());
    for (const auto& [g, mult] : factors) {
        const int residue_degree = static_cast<int>(g.size()) - 1;
        Ideal prime = Ideal::from_generators(
            field, {AlgebraicInteger::from_int(field, p), lift_to_element(field, g)});
        if (prime.norm() != pow_int(p, static_cast<unsigned long>(residue_degree)))
            throw std::logic_error("primes_above: residue norm mismatch");
        out.push_back(IdealFactor{std::move(prime), mult, p, residue_degree});
    }
    return out;
}

namespace {

/// Prime factorization of a positive integer by trial division up to 1e6,
/// accepting one remaining prime cofactor. Ascending primes.
std::vector<std::pair<Int, unsigned long>> factor_rational(Int n) {
    std::vector<std::pair<Int, unsigned long>> out;
    auto strip = [&n, &out](const Int& p) {
        unsigned long e = 0;
        while (divides(p, n)) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (Int p = 3; p <= 1000000 && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        if (!is_rational_prime(n))
            throw NormTooLargeToFactorError(
                "ideal norm has a composite cofactor beyond trial-division range: " +
                to_string(n));
        out.emplace_back(n, 1);
    }
    return out;
}

bool ideal_subset(const Ideal& inner, const Ideal& outer) {
    for (const auto& row : inner.basis())
        if (!outer.contains(AlgebraicInteger(inner.field(), row))) return false;
    return true;
}

}  // namespace

std::vector<IdealFactor> factor_ideal(const Ideal& ideal) {
    std::vector<IdealFactor> out;
    if (ideal.norm() == 1) return out;

    Int norm_check = 1;
    for (const auto& pe : factor_rational(ideal.norm())) {
        for (auto& factor : primes_above(ideal.field(), pe.first)) {
            // Valuation of the ideal at this prime: largest k with I inside P^k.
            unsigned long v = 0;
            Ideal pk = factor.prime;
            while (ideal_subset(ideal, pk)) {
                ++v;
                if (!divides(pk.norm() * factor.prime.norm(), ideal.norm())) break;
                pk = pk.multiply(factor.prime);
            }
            if (v == 0) continue;
            norm_check *= pow_int(factor.prime.norm(), v);
            factor.exponent = v;
            out.push_back(std::move(factor));
        }
    }
    if (norm_check != ideal.norm())
        throw std::logic_error("factor_ideal: prime valuations do not account for the norm");
    return out;
}

}  // namespace hms
