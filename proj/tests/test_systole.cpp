#include "doctest.h"

#include <cmath>

#include "hms/errors.hpp"
#include "hms/systole.hpp"

using hms::AlgebraicInteger;
using hms::FieldPtr;
using hms::GroupElement;
using hms::Ideal;
using hms::Int;
using hms::IntVec;
using hms::NumberField;

namespace {

FieldPtr golden() { return NumberField::create("q-sqrt5", {Int(-1), Int(-1), Int(1)}); }
FieldPtr rational() { return NumberField::create("q-rational", {Int(0), Int(1)}); }

AlgebraicInteger el(const FieldPtr& f, std::initializer_list<long> coords) {
    IntVec v;
    for (const long c : coords) v.emplace_back(c);
    return AlgebraicInteger(f, std::move(v));
}

IntVec matrix_key(const GroupElement& g) {
    IntVec key;
    for (const auto* part : {&g.a(), &g.b(), &g.c(), &g.d()})
        for (const auto& c : part->coords()) key.push_back(c);
    return key;
}

}  // namespace

TEST_CASE("free action requires norm at least 4^degree") {
    const auto f = golden();
    CHECK(hms::free_action_check(Ideal::from_int(f, 7)));   // 49 >= 16
    CHECK(hms::free_action_check(Ideal::from_int(f, 4)));   // 16 >= 16
    CHECK_FALSE(hms::free_action_check(Ideal::from_int(f, 2)));
    CHECK_FALSE(hms::free_action_check(Ideal::principal(el(f, {-1, 2}))));  // 5 < 16
    const auto q = rational();
    CHECK(hms::free_action_check(Ideal::from_int(q, 5)));
    CHECK_FALSE(hms::free_action_check(Ideal::from_int(q, 3)));
}

TEST_CASE("explicit witness element") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    const auto witness = hms::upper_bound_witness(seven);
    // B = [[1 - N^2, N], [-N, 1]] at N = 49.
    CHECK(witness.matrix.a() == el(f, {-2400, 0}));
    CHECK(witness.matrix.b() == el(f, {49, 0}));
    CHECK(witness.matrix.c() == el(f, {-49, 0}));
    CHECK(witness.matrix.d() == el(f, {1, 0}));
    CHECK(hms::in_gamma(witness.matrix, seven));
    CHECK(witness.matrix.trace() == el(f, {-2399, 0}));
    // length = sqrt(2) * 2 * acosh((49^2 - 2)/2), frozen.
    CHECK(witness.length == doctest::Approx(22.0131026774314780).epsilon(1e-13));
    // And it must respect the closed-form bound 4 sqrt(2) log 49.
    CHECK(witness.length <= hms::upper_bound_closed_form(seven) + 1e-9);

    CHECK_THROWS_AS(hms::upper_bound_witness(Ideal::from_int(f, 1)),
                    hms::NormTooSmallError);
    CHECK_THROWS_AS(hms::upper_bound_witness(Ideal::from_int(rational(), 2)),
                    hms::NormTooSmallError);
}

TEST_CASE("norm-form lower bound with exact validity test") {
    const auto f = golden();
    const auto lower7 = hms::systole_lower_bound(Ideal::from_int(f, 7));
    CHECK(lower7.value == doctest::Approx(0.574003387879123880).epsilon(1e-13));
    CHECK(lower7.valid);  // 49^2 = 2401 >= 40^2 = 1600

    const auto lower2 = hms::systole_lower_bound(Ideal::from_int(f, 2));
    CHECK(lower2.value == doctest::Approx(-6.51269413406058738).epsilon(1e-13));
    CHECK_FALSE(lower2.valid);  // 16 < 1600

    const auto lower11 = hms::systole_lower_bound(Ideal::from_int(f, 11));
    CHECK(lower11.value == doctest::Approx(3.130817355832376530).epsilon(1e-13));
    CHECK(lower11.valid);

    const auto q = rational();
    const auto lower41 = hms::systole_lower_bound(Ideal::from_int(q, 41));
    CHECK(lower41.value == doctest::Approx(7.47652935858935861).epsilon(1e-13));
    CHECK(lower41.valid);  // 41^2 >= 40
    // Boundary: N = 40 over degree 1 is exactly the threshold (40^2 >= 40^1).
    CHECK(hms::systole_lower_bound(Ideal::from_int(q, 40)).valid);
    CHECK_FALSE(hms::systole_lower_bound(Ideal::from_int(q, 6)).valid);  // 36 < 40
}

TEST_CASE("order-form bound never exceeds the norm-form bound") {
    const auto f = golden();
    CHECK(hms::theorem_bound(Ideal::from_int(f, 7)) ==
          doctest::Approx(0.573610632596800797).epsilon(1e-13));
    CHECK(hms::theorem_bound(Ideal::from_int(f, 11)) ==
          doctest::Approx(3.11516898317637411).epsilon(1e-13));
    CHECK(hms::theorem_bound(Ideal::from_int(f, 13)) ==
          doctest::Approx(4.07578495361112356).epsilon(1e-13));
    CHECK(hms::theorem_bound(Ideal::from_int(f, 2)) ==
          doctest::Approx(-6.573541635319424593).epsilon(1e-13));
    for (const long m : {2L, 3L, 7L, 11L, 13L}) {
        const auto ideal = Ideal::from_int(f, m);
        CHECK(hms::theorem_bound(ideal) <=
              hms::systole_lower_bound(ideal).value + 1e-9);
    }
}

TEST_CASE("closed-form upper bounds") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    CHECK(hms::upper_bound_closed_form(seven) ==
          doctest::Approx(22.0154601916278001).epsilon(1e-13));
    CHECK(hms::upper_bound_index_form(2, Int(117600)) ==
          doctest::Approx(132.088048086378923).epsilon(1e-13));
    CHECK(hms::upper_bound_closed_form(seven) <=
          hms::upper_bound_index_form(2, Int(117600)) + 1e-9);
}

TEST_CASE("box search at height 1 over the golden (7)") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    const auto result = hms::search_shortest(seven, 1);

    CHECK(result.search_height == 1);
    CHECK(result.exhaustive);
    CHECK_FALSE(result.budget_exceeded);
    // |b| = |c| = 9 box elements, |a| = 6 -> 486 tuples.
    CHECK(result.tuples_examined == 486);
    CHECK(result.candidates > 0);
    CHECK(result.totally_hyperbolic + result.skipped_mixed == result.candidates);

    // Frozen minimum: [[1, -7], [7, -48]], trace -47, length sqrt(2) l(47).
    CHECK(result.length == doctest::Approx(10.8885806299776065).epsilon(1e-13));
    CHECK(result.matrix.a() == el(f, {1, 0}));
    CHECK(result.matrix.b() == el(f, {-7, 0}));
    CHECK(result.matrix.c() == el(f, {7, 0}));
    CHECK(result.matrix.d() == el(f, {-48, 0}));

    // Certified bracket.
    const auto lower = hms::systole_lower_bound(seven);
    REQUIRE(lower.valid);
    CHECK(result.length >= lower.value - 1e-9);
    CHECK(result.length <= hms::upper_bound_witness(seven).length + 1e-12);
}

TEST_CASE("box search at height 2 finds the lexicographic tie-winner") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    const auto result = hms::search_shortest(seven, 2);

    CHECK(result.exhaustive);
    CHECK(result.tuples_examined == 12500);  // 25 * 25 * 20
    CHECK(result.length == doctest::Approx(10.8885806299776065).epsilon(1e-13));
    // Same length as height 1, but a lex-smaller coordinate key now wins.
    const IntVec expected = {Int(-13), Int(7),  Int(-14), Int(14),
                             Int(-14), Int(14), Int(-34), Int(-7)};
    CHECK(matrix_key(result.matrix) == expected);
}

TEST_CASE("search results are reproducible") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    const auto r1 = hms::search_shortest(seven, 2);
    const auto r2 = hms::search_shortest(seven, 2);
    CHECK(r1.length == r2.length);
    CHECK(r1.matrix == r2.matrix);
    CHECK(r1.tuples_examined == r2.tuples_examined);
    CHECK(r1.candidates == r2.candidates);
}

TEST_CASE("search budget semantics: deterministic prefix") {
    const auto f = golden();
    const auto seven = Ideal::from_int(f, 7);
    hms::SearchOptions options;
    options.tuple_cap = 1000;
    const auto result = hms::search_shortest(seven, 2, options);
    CHECK(result.budget_exceeded);
    CHECK_FALSE(result.exhaustive);
    CHECK(result.tuples_examined == 1000);
    // The injected witness keeps the result meaningful.
    CHECK(result.length <= hms::upper_bound_witness(seven).length + 1e-12);
    const auto again = hms::search_shortest(seven, 2, options);
    CHECK(result.matrix == again.matrix);
    CHECK(result.length == again.length);
}

TEST_CASE("degree-1 search: witness wins its tie lexicographically") {
    const auto q = rational();
    const auto three = Ideal::from_int(q, 3);
    const auto result = hms::search_shortest(three, 1);
    // 3 * 3 * 2 tuples; minimum |trace| is 7, shared by the witness
    // [[-8, 3], [-3, 1]] and a box candidate; the witness key is smaller.
    CHECK(result.tuples_examined == 18);
    CHECK(result.exhaustive);
    CHECK(result.length == doctest::Approx(3.849694600476827580).epsilon(1e-13));
    CHECK(result.matrix.a() == el(q, {-8}));
    CHECK(result.matrix.b() == el(q, {3}));
    CHECK(result.matrix.c() == el(q, {-3}));
    CHECK(result.matrix.d() == el(q, {1}));
}

TEST_CASE("search rejects degenerate inputs") {
    const auto f = golden();
    CHECK_THROWS_AS(hms::search_shortest(Ideal::from_int(f, 1), 1),
                    hms::NormTooSmallError);
    CHECK_THROWS_AS(hms::search_shortest(Ideal::from_int(f, 7), 0),
                    std::invalid_argument);
}

TEST_CASE("verification suite on golden ideals") {
    const auto f = golden();
    SUBCASE("(7): everything passes and displacements get exercised") {
        const auto report = hms::verify_suite(Ideal::from_int(f, 7), 60, 1);
        CHECK(report.samples == 60);
        CHECK(report.all_passed());
        CHECK(report.lemma1_failures == 0);
        CHECK(report.lemma2_failures == 0);
        CHECK(report.trace_ineq_failures == 0);
        CHECK(report.displacement_failures == 0);
        CHECK(report.displacement_checks > 0);
        CHECK(report.counterexamples.empty());
        CHECK(report.trivial_skipped < 60);
    }
    SUBCASE("(2): lower bound invalid, displacement checks skipped") {
        const auto report = hms::verify_suite(Ideal::from_int(f, 2), 40, 3);
        CHECK(report.all_passed());
        CHECK(report.displacement_checks == 0);
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto a = hms::verify_suite(Ideal::from_int(f, 7), 25, 9);
        const auto b = hms::verify_suite(Ideal::from_int(f, 7), 25, 9);
        CHECK(a.trivial_skipped == b.trivial_skipped);
        CHECK(a.displacement_checks == b.displacement_checks);
    }
    SUBCASE("zero samples rejected") {
        CHECK_THROWS_AS(hms::verify_suite(Ideal::from_int(f, 7), 0, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("full report assembly") {
    const auto f = golden();
    SUBCASE("(7)") {
        const auto report = hms::make_report("q-sqrt5", "{\"int\":7}", Ideal::from_int(f, 7));
        CHECK(report.field_label == "q-sqrt5");
        CHECK(report.ideal_descriptor == "{\"int\":7}");
        CHECK(report.ideal_norm == 49);
        CHECK(report.order == 117600);
        CHECK(report.free_action_certified);
        CHECK(report.lower_bound_norm_form.valid);
        REQUIRE(report.upper_bound_witness.has_value());
        CHECK(report.upper_bound_witness->length ==
              doctest::Approx(22.0131026774314780).epsilon(1e-13));
        CHECK_FALSE(report.empirical_shortest.has_value());
        // The full chain in one place.
        CHECK(report.theorem_bound <= report.lower_bound_norm_form.value + 1e-9);
        CHECK(report.lower_bound_norm_form.value <=
              report.upper_bound_witness->length + 1e-9);
        CHECK(report.upper_bound_witness->length <= report.upper_bound_closed_form + 1e-9);
        CHECK(report.upper_bound_closed_form <= report.upper_bound_index_form + 1e-9);
        CHECK(report.order < hms::pow_int(report.ideal_norm, 3));
    }
    SUBCASE("whole ring: degenerate but well-formed") {
        const auto report = hms::make_report("q-sqrt5", "{\"int\":1}", Ideal::from_int(f, 1));
        CHECK(report.ideal_norm == 1);
        CHECK(report.order == 1);
        CHECK_FALSE(report.free_action_certified);
        CHECK_FALSE(report.lower_bound_norm_form.valid);
        CHECK_FALSE(report.upper_bound_witness.has_value());
        CHECK(report.upper_bound_closed_form == 0.0);
    }
}
