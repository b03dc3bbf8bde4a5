#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hms/hyperbolic.hpp"
#include "hms/ideal.hpp"
#include "hms/modular_group.hpp"

namespace hms {

/// True iff N(I) >= 4^n, the hypothesis under which Gamma(I) acts freely on
/// the product of upper half-planes (so the quotient is a manifold and
/// geodesic lengths are honest).
bool free_action_check(const Ideal& ideal);

/// The explicit short element B = [[1 - N^2, N], [-N, 1]] with N = N(I):
/// it lies in Gamma(I), has |tr| = N^2 - 2, and its geodesic has length
/// exactly sqrt(n) * 2 * acosh((N^2 - 2) / 2) <= 4 sqrt(n) log N. Requires
/// N(I) > 2 (NormTooSmallError otherwise; at N <= 2 the element is not
/// hyperbolic).
struct WitnessBound {
    GroupElement matrix;
    double length;
};

WitnessBound upper_bound_witness(const Ideal& ideal);

/// Universal lower bound on geodesic lengths in the level-I cover:
///   (4 / sqrt(n)) log N(I) - 2 sqrt(n) log 40,
/// valid (flag) only when N(I) >= 40^(n/2), tested exactly as N^2 >= 40^n.
struct LowerBound {
    double value;
    bool valid;
};

LowerBound systole_lower_bound(const Ideal& ideal);

/// The same lower bound re-expressed through the quotient order:
///   (4 / (3 sqrt(n))) log |SL2(O/I)| - 2 sqrt(n) log 40.
/// Since the order is below N(I)^3 this never exceeds systole_lower_bound.
double theorem_bound(const Ideal& ideal);
double theorem_bound_from_order(int degree, const Int& order);

/// Closed-form upper bounds: 4 sqrt(n) log N(I), and the weaker index form
/// 4 n^(3/2) log |SL2(O/I)|.
double upper_bound_closed_form(const Ideal& ideal);
double upper_bound_index_form(int degree, const Int& order);

/// Empirical shortest-geodesic search over a coordinate box. This is an
/// upper ESTIMATE of the systole (a short geodesic could avoid any bounded
/// box), never a certificate.
struct SearchOptions {
    /// Give up (returning the best length seen, marked non-exhaustive) after
    /// this many (b, c, a) tuples.
    std::uint64_t tuple_cap = 100000000ULL;
};

struct SearchResult {
    double length;
    GroupElement matrix;
    long search_height;
    bool exhaustive;        // full box scanned
    bool budget_exceeded;   // tuple cap hit (implies !exhaustive)
    std::uint64_t tuples_examined;
    std::uint64_t candidates;        // group elements accepted into Gamma(I)
    std::uint64_t totally_hyperbolic;
    std::uint64_t skipped_mixed;     // accepted but not totally hyperbolic
};

/// Scans b, c over I-elements whose power-basis coordinates lie in
/// [-height*r, height*r] (r the least positive rational integer in I), a
/// over the class 1 + I in the same box, keeping d = (1 + bc) / a whenever
/// the division is exact in O and d = 1 mod I. Every totally hyperbolic
/// survivor contributes its product geodesic length; the witness element of
/// upper_bound_witness is always injected (so N(I) > 2 is required and the
/// result set is never empty). Minimum length wins; ties break
/// to the lexicographically least concatenated coordinate vector of
/// (a, b, c, d). Deterministic for fixed inputs, including across thread
/// schedules.
SearchResult search_shortest(const Ideal& ideal, long height,
                             const SearchOptions& options = {});

/// One randomized-check suite run: seeded Gamma(I) samples pushed through
/// the congruence checks (lemma1_check), the embedded-trace bound
/// (lemma2_check), the per-embedding trace inequality
///   |sigma_i(dy0)| - 2 <= |sigma_i(tr)| <= 2 + |sigma_i(dy0)|,
/// and, for totally hyperbolic samples when the lower bound is valid, the
/// pointwise displacement test displacement_at(z, A) >= lower bound at 10
/// seeded points z. Failures are collected, not thrown.
struct VerifyReport {
    std::uint64_t samples = 0;
    std::uint64_t trivial_skipped = 0;  // dy0 = 0: lemma checks vacuous
    std::uint64_t lemma1_failures = 0;
    std::uint64_t lemma2_failures = 0;
    std::uint64_t trace_ineq_failures = 0;
    std::uint64_t displacement_checks = 0;
    std::uint64_t displacement_failures = 0;
    /// Matrices that failed anything, verbatim.
    std::vector<GroupElement> counterexamples;

    bool all_passed() const {
        return lemma1_failures == 0 && lemma2_failures == 0 &&
               trace_ineq_failures == 0 && displacement_failures == 0;
    }
};

VerifyReport verify_suite(const Ideal& ideal, std::uint64_t samples,
                          std::uint64_t seed);

/// Everything the bounds pipeline produces for one (field, ideal) pair.
struct SystoleReport {
    std::string field_label;
    std::string ideal_descriptor;  // echo of the input descriptor
    Ideal ideal;
    Int ideal_norm;
    Int order;  // |SL2(O/I)|
    bool free_action_certified;
    LowerBound lower_bound_norm_form;
    double theorem_bound;
    /// Absent in the degenerate case N(I) <= 2, where the witness element is
    /// not hyperbolic.
    std::optional<WitnessBound> upper_bound_witness;
    double upper_bound_closed_form;
    double upper_bound_index_form;
    std::optional<SearchResult> empirical_shortest;
};

/// Assembles the full report (without the search, which cmd_search adds).
SystoleReport make_report(const std::string& field_label,
                          const std::string& ideal_descriptor,
                          const Ideal& ideal);

}  // namespace hms
