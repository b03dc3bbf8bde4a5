#include "hms/systole.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hms/errors.hpp"

namespace hms {

namespace {

const double kLog40 = std::log(40.0);

double sqrt_degree(int degree) { return std::sqrt(static_cast<double>(degree)); }

}  // namespace

bool free_action_check(const Ideal& ideal) {
    return ideal.norm() >= pow_int(Int(4), static_cast<unsigned long>(ideal.field()->degree()));
}

WitnessBound upper_bound_witness(const Ideal& ideal) {
    const Int& n_ideal = ideal.norm();
    if (n_ideal <= 2)
        throw NormTooSmallError("upper_bound_witness: needs ideal norm above 2, got " +
                                to_string(n_ideal));
    const auto& field = ideal.field();
    const Int n_sq = n_ideal * n_ideal;
    GroupElement witness(AlgebraicInteger::from_int(field, 1 - n_sq),
                         AlgebraicInteger::from_int(field, n_ideal),
                         AlgebraicInteger::from_int(field, -n_ideal),
                         AlgebraicInteger::from_int(field, 1));
    if (!in_gamma(witness, ideal))
        throw std::logic_error("upper_bound_witness: witness fell outside the subgroup");
    // |trace| = N^2 - 2; all embeddings agree, so the geodesic length is
    // sqrt(n) * 2 * acosh((N^2 - 2) / 2). Evaluated through the same routine
    // the search uses, so an injected witness merges bit-identically.
    const double length = product_geodesic_length(witness);
    const double closed = upper_bound_closed_form(ideal);
    if (length > closed + 1e-9)
        throw std::logic_error("upper_bound_witness: length exceeds 4*sqrt(n)*log(norm)");
    return WitnessBound{std::move(witness), length};
}

LowerBound systole_lower_bound(const Ideal& ideal) {
    const int degree = ideal.field()->degree();
    const double s = sqrt_degree(degree);
    const double value = (4.0 / s) * log_int(ideal.norm()) - 2.0 * s * kLog40;
    // Hypothesis N >= 40^(n/2), tested exactly as N^2 >= 40^n.
    const bool valid =
        ideal.norm() * ideal.norm() >= pow_int(Int(40), static_cast<unsigned long>(degree));
    return LowerBound{value, valid};
}

double theorem_bound_from_order(int degree, const Int& order) {
    const double s = sqrt_degree(degree);
    return (4.0 / (3.0 * s)) * log_int(order) - 2.0 * s * kLog40;
}

double theorem_bound(const Ideal& ideal) {
    return theorem_bound_from_order(ideal.field()->degree(), congruence_quotient_order(ideal));
}

double upper_bound_closed_form(const Ideal& ideal) {
    return 4.0 * sqrt_degree(ideal.field()->degree()) * log_int(ideal.norm());
}

double upper_bound_index_form(int degree, const Int& order) {
    const double n = degree;
    return 4.0 * n * std::sqrt(n) * log_int(order);
}

// ---------------------------------------------------------------------------
// Box search

namespace {

/// All elements of I with coordinate j in [lo[j], hi[j]], enumerated through
/// the triangular HNF structure: the row of theta-degree i is the last
/// contributor to coordinate i, so scanning rows from degree n-1 downwards
/// pins each coordinate in turn. Output order is deterministic.
class BoxEnumerator {
public:
    BoxEnumerator(const Ideal& ideal, IntVec lo, IntVec hi, std::size_t max_count)
        : basis_(ideal.basis()), lo_(std::move(lo)), hi_(std::move(hi)), max_(max_count) {}

    std::vector<IntVec> run() {
        out_.clear();
        IntVec coords(basis_.size(), Int(0));
        descend(basis_.size(), coords);
        return std::move(out_);
    }

private:
    void descend(std::size_t level, IntVec& coords) {
        if (level == 0) {
            if (out_.size() >= max_)
                throw CapExceededError("search: coordinate box holds more than " +
                                       std::to_string(max_) + " ideal elements");
            out_.push_back(coords);
            return;
        }
        const std::size_t i = level - 1;
        const Int& d = basis_[i][i];
        // k*d + coords[i] must land in [lo_i, hi_i].
        Int k_lo, k_hi;
        mpz_cdiv_q(k_lo.get_mpz_t(), Int(lo_[i] - coords[i]).get_mpz_t(), d.get_mpz_t());
        mpz_fdiv_q(k_hi.get_mpz_t(), Int(hi_[i] - coords[i]).get_mpz_t(), d.get_mpz_t());
        for (Int k = k_lo; k <= k_hi; ++k) {
            for (std::size_t j = 0; j <= i; ++j) coords[j] += k * basis_[i][j];
            descend(i, coords);
            for (std::size_t j = 0; j <= i; ++j) coords[j] -= k * basis_[i][j];
        }
    }

    const IntMat& basis_;
    IntVec lo_, hi_;
    std::size_t max_;
    std::vector<IntVec> out_;
};

/// Multiplication data for one candidate `a`: adjugate and determinant of
/// its multiplication matrix, so x = v * adj / det solves x * M_a = v.
struct DivisorData {
    IntVec coords;
    IntMat adjugate;
    Int det;
};

IntMat adjugate_of(const IntMat& m) {
    const std::size_t n = m.size();
    IntMat adj(n, IntVec(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    IntMat minor(n - 1, IntVec(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor[mr][mc] = m[r][c];
                    ++mc;
                }
                ++mr;
            }
            const Int cof = det_bareiss(minor);
            adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return adj;
}

struct Candidate {
    double length = 0.0;
    IntVec key;  // coords of a, b, c, d concatenated
    bool set = false;

    /// Minimum by (length, lexicographic key).
    void offer(double len, IntVec cand_key) {
        if (!set || len < length || (len == length && cand_key < key)) {
            length = len;
            key = std::move(cand_key);
            set = true;
        }
    }
};

struct ChunkResult {
    Candidate best;
    std::uint64_t tuples = 0;
    std::uint64_t candidates = 0;
    std::uint64_t hyperbolic = 0;
    std::uint64_t mixed = 0;
    std::exception_ptr error;
};

/// Geodesic length of the (guaranteed totally hyperbolic) trace embeddings.
double length_from_embedded_traces(const std::vector<double>& traces) {
    double sum_sq = 0.0;
    for (const double t : traces) {
        const double a = std::max(std::abs(t), 2.0 + 1e-15);
        const double l = 2.0 * acosh_stable(a / 2.0);
        sum_sq += l * l;
    }
    return std::sqrt(sum_sq);
}

}  // namespace

SearchResult search_shortest(const Ideal& ideal, long height, const SearchOptions& options) {
    if (height < 1) throw std::invalid_argument("search: height must be >= 1");
    const auto& field = ideal.field();
    const auto n = static_cast<std::size_t>(field->degree());
    const Int radius = Int(height) * ideal.min_rational_integer();

    // b and c range over I inside the box; a over 1 + I inside the same box.
    constexpr std::size_t kListCap = 2000000;
    const IntVec lo_bc(n, -radius), hi_bc(n, radius);
    const std::vector<IntVec> bc_list = BoxEnumerator(ideal, lo_bc, hi_bc, kListCap).run();

    IntVec lo_a = lo_bc, hi_a = hi_bc;
    lo_a[0] -= 1;
    hi_a[0] -= 1;
    std::vector<DivisorData> a_list;
    for (IntVec& x : BoxEnumerator(ideal, lo_a, hi_a, kListCap).run()) {
        x[0] += 1;  // shift the class representative: a = 1 + (element of I)
        const AlgebraicInteger a(field, x);
        IntMat m = a.multiplication_matrix();
        Int det = det_bareiss(m);
        if (det == 0) continue;  // cannot happen for proper I; defensive
        a_list.push_back(DivisorData{std::move(x), adjugate_of(m), std::move(det)});
    }

    const auto n_b = static_cast<std::uint64_t>(bc_list.size());
    const auto n_a = static_cast<std::uint64_t>(a_list.size());
    const unsigned __int128 total =
        static_cast<unsigned __int128>(n_b) * n_b * n_a;
    const unsigned __int128 budget =
        std::min<unsigned __int128>(total, options.tuple_cap);

    const LowerBound lower = systole_lower_bound(ideal);
    const WitnessBound witness = upper_bound_witness(ideal);

    // Deterministic parallel scan: contiguous b-ranges per worker, merged in
    // worker order; the examined set is the exact index prefix [0, budget).
    const auto worker = [&](std::uint64_t b_begin, std::uint64_t b_end, ChunkResult& out) {
        try {
            const auto one = AlgebraicInteger::one(field);
            for (std::uint64_t ib = b_begin; ib < b_end; ++ib) {
                const AlgebraicInteger b_el(field, bc_list[ib]);
                for (std::uint64_t ic = 0; ic < n_b; ++ic) {
                    const unsigned __int128 base =
                        (static_cast<unsigned __int128>(ib) * n_b + ic) * n_a;
                    if (base >= budget) break;
                    const AlgebraicInteger c_el(field, bc_list[ic]);
                    const IntVec v = (one + b_el * c_el).coords();
                    const std::uint64_t a_limit =
                        static_cast<std::uint64_t>(std::min<unsigned __int128>(n_a, budget - base));
                    for (std::uint64_t ia = 0; ia < a_limit; ++ia) {
                        ++out.tuples;
                        const DivisorData& da = a_list[ia];
                        // d = (1 + b*c) / a, exact in O or rejected.
                        IntVec d_coords(n);
                        bool integral = true;
                        for (std::size_t col = 0; col < n && integral; ++col) {
                            Int num = 0;
                            for (std::size_t row = 0; row < n; ++row)
                                num += v[row] * da.adjugate[row][col];
                            if (!divides(da.det, num)) {
                                integral = false;
                                break;
                            }
                            d_coords[col] = num / da.det;
                        }
                        if (!integral) continue;
                        // d = 1 mod I.
                        IntVec d_minus_one = d_coords;
                        d_minus_one[0] -= 1;
                        if (!ideal.contains(AlgebraicInteger(field, d_minus_one))) continue;
                        ++out.candidates;

                        // Totally hyperbolic filter on the trace embeddings;
                        // rational traces are decided exactly.
                        IntVec tr(n);
                        for (std::size_t j = 0; j < n; ++j) tr[j] = da.coords[j] + d_coords[j];
                        const AlgebraicInteger trace(field, tr);
                        bool hyperbolic = true;
                        std::vector<double> traces;
                        if (trace.is_rational()) {
                            hyperbolic = tr[0] > 2 || tr[0] < -2;
                            if (hyperbolic)
                                traces.assign(n, to_double(tr[0]));
                        } else {
                            traces = trace.embed().value;
                            for (const double t : traces)
                                if (classify(t) != IsometryClass::Hyperbolic) {
                                    hyperbolic = false;
                                    break;
                                }
                        }
                        if (!hyperbolic) {
                            ++out.mixed;
                            continue;
                        }
                        ++out.hyperbolic;
                        const double length = length_from_embedded_traces(traces);
                        if (lower.valid && length < lower.value - 1e-9) {
                            throw Error(
                                "search: candidate shorter than the certified lower bound: " +
                                GroupElement(AlgebraicInteger(field, da.coords), b_el, c_el,
                                             AlgebraicInteger(field, d_coords))
                                    .str());
                        }
                        IntVec key;
                        key.reserve(4 * n);
                        for (const auto& x : da.coords) key.push_back(x);
                        for (const auto& x : bc_list[ib]) key.push_back(x);
                        for (const auto& x : bc_list[ic]) key.push_back(x);
                        for (const auto& x : d_coords) key.push_back(x);
                        out.best.offer(length, std::move(key));
                    }
                }
            }
        } catch (...) {
            out.error = std::current_exception();
        }
    };

    unsigned n_threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    if (total < 10000 || n_b < 2 * n_threads) n_threads = 1;
    std::vector<ChunkResult> chunks(n_threads);
    if (n_threads == 1) {
        worker(0, n_b, chunks[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = (n_b + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(t * per, n_b);
            const std::uint64_t end = std::min<std::uint64_t>(begin + per, n_b);
            pool.emplace_back(worker, begin, end, std::ref(chunks[t]));
        }
        for (auto& th : pool) th.join();
    }

    // Merge in chunk order (deterministic regardless of scheduling).
    Candidate best;
    std::uint64_t tuples = 0, candidates = 0, hyperbolic = 0, mixed = 0;
    for (auto& chunk : chunks) {
        if (chunk.error) std::rethrow_exception(chunk.error);
        if (chunk.best.set) best.offer(chunk.best.length, std::move(chunk.best.key));
        tuples += chunk.tuples;
        candidates += chunk.candidates;
        hyperbolic += chunk.hyperbolic;
        mixed += chunk.mixed;
    }

    // The explicit witness always joins the candidate set.
    {
        const GroupElement& w = witness.matrix;
        IntVec key;
        key.reserve(4 * n);
        for (const auto& x : w.a().coords()) key.push_back(x);
        for (const auto& x : w.b().coords()) key.push_back(x);
        for (const auto& x : w.c().coords()) key.push_back(x);
        for (const auto& x : w.d().coords()) key.push_back(x);
        best.offer(witness.length, std::move(key));
    }

    // Rebuild the winning matrix from its key (validates the determinant).
    const auto slice = [&best, n](std::size_t part) {
        return IntVec(best.key.begin() + static_cast<std::ptrdiff_t>(part * n),
                      best.key.begin() + static_cast<std::ptrdiff_t>((part + 1) * n));
    };
    GroupElement minimizer(AlgebraicInteger(field, slice(0)), AlgebraicInteger(field, slice(1)),
                           AlgebraicInteger(field, slice(2)), AlgebraicInteger(field, slice(3)));

    SearchResult result{best.length,
                        std::move(minimizer),
                        height,
                        /*exhaustive=*/budget == total,
                        /*budget_exceeded=*/budget < total,
                        /*tuples_examined=*/tuples,
                        candidates,
                        hyperbolic,
                        mixed};
    return result;
}

// ---------------------------------------------------------------------------
// Randomized verification suite

VerifyReport verify_suite(const Ideal& ideal, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("verify_suite: samples must be >= 1");
    VerifyReport report;
    report.samples = samples;

    const auto& field = ideal.field();
    const auto n = static_cast<std::size_t>(field->degree());
    const LowerBound lower = systole_lower_bound(ideal);

    for (std::uint64_t i = 0; i < samples; ++i) {
        const unsigned word = 2 + static_cast<unsigned>(i % 6);
        const GroupElement a =
            random_gamma_element(ideal, word, seed * 0x9e3779b97f4a7c15ULL + i * 2654435761ULL);
        const TraceDecomposition t = trace_decomposition(a);
        if (t.dy0.is_zero()) {
            ++report.trivial_skipped;
            continue;
        }
        bool failed = false;

        const Lemma1Result l1 = lemma1_check(a, ideal);
        if (!l1.membership_ok || !l1.norm_ok) {
            ++report.lemma1_failures;
            failed = true;
        }
        if (!lemma2_check(a, ideal)) {
            ++report.lemma2_failures;
            failed = true;
        }

        // Doubled trace inequality at every embedding:
        // |s(dy0)| - 2 <= |s(tr)| <= 2 + |s(dy0)|.
        const auto e_dy0 = t.dy0.embed();
        const auto e_tr = t.dx0.embed();
        for (std::size_t j = 0; j < n; ++j) {
            const double y = std::abs(e_dy0.value[j]);
            const double tr = std::abs(e_tr.value[j]);
            const double slack = 1e-9 + e_dy0.error[j] + e_tr.error[j];
            if (!(y - 2.0 <= tr + slack && tr <= 2.0 + y + slack)) {
                ++report.trace_ineq_failures;
                failed = true;
                break;
            }
        }

        if (lower.valid && is_totally_hyperbolic(a)) {
            std::mt19937_64 rng(seed * 0xd1342543de82ef95ULL + i + 17);
            for (int k = 0; k < 10; ++k) {
                ProductPoint z(n);
                for (auto& p : z) {
                    p.x = -2.0 + static_cast<double>(rng() % 4001) / 1000.0;
                    p.y = 0.5 + static_cast<double>(rng() % 2001) / 1000.0;
                }
                ++report.displacement_checks;
                if (displacement_at(z, a) < lower.value - 1e-9) {
                    ++report.displacement_failures;
                    failed = true;
                }
            }
        }

        if (failed) report.counterexamples.push_back(a);
    }
    return report;
}

SystoleReport make_report(const std::string& field_label, const std::string& ideal_descriptor,
                          const Ideal& ideal) {
    const int degree = ideal.field()->degree();
    const Int order = congruence_quotient_order(ideal);

    SystoleReport report{field_label,
                         ideal_descriptor,
                         ideal,
                         ideal.norm(),
                         order,
                         free_action_check(ideal),
                         systole_lower_bound(ideal),
                         theorem_bound_from_order(degree, order),
                         std::nullopt,
                         upper_bound_closed_form(ideal),
                         upper_bound_index_form(degree, order),
                         std::nullopt};
    if (ideal.norm() > 2) report.upper_bound_witness = upper_bound_witness(ideal);

    // Bound-chain invariants; a violation is an implementation bug, never
    // data, so it throws.
    const double slack = 1e-9;
    if (report.theorem_bound > report.lower_bound_norm_form.value + slack)
        throw Error("report: order-form bound exceeds the norm-form bound");
    if (report.upper_bound_witness) {
        if (report.lower_bound_norm_form.valid &&
            report.lower_bound_norm_form.value > report.upper_bound_witness->length + slack)
            throw Error("report: lower bound exceeds the witness length");
        if (report.upper_bound_witness->length > report.upper_bound_closed_form + slack)
            throw Error("report: witness length exceeds the closed-form bound");
    }
    if (ideal.norm() > 1) {
        if (!(order < pow_int(ideal.norm(), 3)))
            throw Error("report: quotient order is not below norm^3");
        // 4*sqrt(n)*log(N) <= 4*n^(3/2)*log(order) exactly when N <= order^n.
        if (pow_int(order, static_cast<unsigned long>(degree)) >= ideal.norm() &&
            report.upper_bound_closed_form > report.upper_bound_index_form + slack)
            throw Error("report: closed-form bound exceeds the index-form bound");
    }
    return report;
}

}  // namespace hms
