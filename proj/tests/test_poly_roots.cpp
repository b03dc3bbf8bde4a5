#include "doctest.h"

#include <cmath>

#include "hms/integers.hpp"
#include "poly_roots.hpp"

using hms::Int;
using hms::IntVec;
using hms::Rat;
namespace detail = hms::detail;

namespace {

IntVec ipoly(std::initializer_list<long> coeffs) {
    IntVec p;
    for (const long c : coeffs) p.emplace_back(c);
    return p;
}

detail::QPoly qpoly(std::initializer_list<long> coeffs) {
    detail::QPoly p;
    for (const long c : coeffs) p.emplace_back(c);
    detail::q_trim(p);
    return p;
}

}  // namespace

TEST_CASE("sturm chain counts real roots exactly") {
    // x^2 - x - 1: two real roots.
    const auto chain = detail::sturm_chain(qpoly({-1, -1, 1}));
    CHECK(detail::count_roots_between(chain, Rat(-100), Rat(100)) == 2);
    CHECK(detail::count_roots_between(chain, Rat(0), Rat(100)) == 1);
    CHECK(detail::count_roots_between(chain, Rat(-100), Rat(0)) == 1);
    // Half-open (a, b]: the golden ratio is not in (2, 100].
    CHECK(detail::count_roots_between(chain, Rat(2), Rat(100)) == 0);

    // x^2 + 1: no real roots.
    const auto none = detail::sturm_chain(qpoly({1, 0, 1}));
    CHECK(detail::count_roots_between(none, Rat(-100), Rat(100)) == 0);

    // x^3 + x^2 - 2x - 1: three real roots (totally real cubic).
    const auto cubic = detail::sturm_chain(qpoly({-1, -2, 1, 1}));
    CHECK(detail::count_roots_between(cubic, Rat(-100), Rat(100)) == 3);
}

TEST_CASE("rational polynomial helpers") {
    SUBCASE("q_trim drops leading zeros") {
        detail::QPoly p = {Rat(1), Rat(2), Rat(0), Rat(0)};
        detail::q_trim(p);
        CHECK(p.size() == 2);
        detail::QPoly z = {Rat(0), Rat(0)};
        detail::q_trim(z);
        CHECK(z.empty());
    }
    SUBCASE("derivative and remainder") {
        const auto d = detail::q_derivative(qpoly({-1, -1, 1}));  // 2x - 1
        REQUIRE(d.size() == 2);
        CHECK(d[0] == Rat(-1));
        CHECK(d[1] == Rat(2));
        // (x^2 - x - 1) mod (2x - 1) = -5/4.
        const auto r = detail::q_rem(qpoly({-1, -1, 1}), d);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == Rat(-5, 4));
    }
    SUBCASE("gcd of coprime polynomials is constant") {
        const auto g = detail::q_gcd(qpoly({-1, -1, 1}), qpoly({-2, 0, 1}));
        CHECK(g.size() == 1);
    }
    SUBCASE("gcd finds the shared factor") {
        // (x-1)(x+2) and (x-1)(x-3) share (x-1).
        const auto g = detail::q_gcd(qpoly({-2, 1, 1}), qpoly({3, -4, 1}));
        REQUIRE(g.size() == 2);
        CHECK(g[0] == Rat(-1));
        CHECK(g[1] == Rat(1));  // monic
    }
}

TEST_CASE("root bound dominates all real roots") {
    const Rat b = detail::root_bound(ipoly({-1, -1, 1}));
    CHECK(b > 1);  // strict Cauchy bound
    const auto chain = detail::sturm_chain(qpoly({-1, -1, 1}));
    CHECK(detail::count_roots_between(chain, -b, b) == 2);
}

TEST_CASE("isolate_real_roots reaches 1e-15 accuracy") {
    SUBCASE("golden field") {
        const auto rr = detail::isolate_real_roots(ipoly({-1, -1, 1}), 1e-15);
        REQUIRE(rr.roots.size() == 2);
        CHECK(rr.roots[0] == doctest::Approx(-0.618033988749894848).epsilon(1e-14));
        CHECK(rr.roots[1] == doctest::Approx(1.61803398874989484820).epsilon(1e-14));
        CHECK(rr.roots[0] < rr.roots[1]);  // increasing order
        CHECK(rr.error < 1e-13);
    }
    SUBCASE("totally real cubic x^3 + x^2 - 2x - 1") {
        const auto rr = detail::isolate_real_roots(ipoly({-1, -2, 1, 1}), 1e-15);
        REQUIRE(rr.roots.size() == 3);
        CHECK(rr.roots[0] == doctest::Approx(-1.80193773580483825).epsilon(1e-14));
        CHECK(rr.roots[1] == doctest::Approx(-0.445041867912628809).epsilon(1e-14));
        CHECK(rr.roots[2] == doctest::Approx(1.24697960371746706).epsilon(1e-14));
    }
    SUBCASE("rational roots found exactly") {
        // (x - 2)(x + 3) = x^2 + x - 6.
        const auto rr = detail::isolate_real_roots(ipoly({-6, 1, 1}), 1e-15);
        REQUIRE(rr.roots.size() == 2);
        CHECK(rr.roots[0] == doctest::Approx(-3.0).epsilon(1e-15));
        CHECK(rr.roots[1] == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("is_squarefree") {
    CHECK(detail::is_squarefree(ipoly({-1, -1, 1})));
    CHECK_FALSE(detail::is_squarefree(ipoly({1, -2, 1})));  // (x-1)^2
    CHECK_FALSE(detail::is_squarefree(ipoly({0, 0, 1})));   // x^2
}

TEST_CASE("irreducibility over the rationals via root subsets") {
    const auto check_irreducible = [](std::initializer_list<long> coeffs) {
        const IntVec p = ipoly(coeffs);
        const auto rr = detail::isolate_real_roots(p, 1e-15);
        return detail::is_irreducible(p, rr.roots);
    };
    CHECK(check_irreducible({-1, -1, 1}));       // x^2 - x - 1
    CHECK(check_irreducible({-2, 0, 1}));        // x^2 - 2
    CHECK(check_irreducible({-1, -2, 1, 1}));    // totally real cubic
    CHECK_FALSE(check_irreducible({-1, 0, 1}));  // (x-1)(x+1)
    CHECK_FALSE(check_irreducible({6, -5, 1}));  // (x-2)(x-3)
    CHECK_FALSE(check_irreducible({6, 0, -5, 0, 1}));  // (x^2-2)(x^2-3)
}

TEST_CASE("divide_exact_monic") {
    // (x^2 - 2)(x^2 - 3) = x^4 - 5x^2 + 6.
    const IntVec quartic = ipoly({6, 0, -5, 0, 1});
    const auto q = detail::divide_exact_monic(quartic, ipoly({-2, 0, 1}));
    REQUIRE(q.has_value());
    REQUIRE(q->size() == 3);
    CHECK((*q)[0] == -3);
    CHECK((*q)[1] == 0);
    CHECK((*q)[2] == 1);

    CHECK_FALSE(detail::divide_exact_monic(quartic, ipoly({-1, 0, 1})).has_value());
}
