// Acceptance gate: seven independent end-to-end checks, one pass/fail line
// each on stdout, exit 0 iff all pass. argv[1] is the CLI binary, argv[2]
// the preset directory (both used only by the determinism check).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hms/errors.hpp"
#include "hms/hyperbolic.hpp"
#include "hms/ideal.hpp"
#include "hms/integers.hpp"
#include "hms/modular_group.hpp"
#include "hms/number_field.hpp"
#include "hms/systole.hpp"

namespace {

using hms::AlgebraicInteger;
using hms::FieldPtr;
using hms::GroupElement;
using hms::Ideal;
using hms::Int;
using hms::IntVec;
using hms::NumberField;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FieldPtr make_rational() { return NumberField::create("q-rational", {Int(0), Int(1)}); }
FieldPtr make_golden() { return NumberField::create("q-sqrt5", {Int(-1), Int(-1), Int(1)}); }
FieldPtr make_cubic() {
    return NumberField::create("cubic-7", {Int(-1), Int(-2), Int(1), Int(1)});
}

/// The element 2*theta - 1 (just -1 over the rationals, where theta = 0).
AlgebraicInteger two_theta_minus_one(const FieldPtr& field) {
    IntVec coords(static_cast<std::size_t>(field->degree()), Int(0));
    coords[0] = -1;
    if (field->degree() > 1) coords[1] = 2;
    return AlgebraicInteger(field, std::move(coords));
}

/// The fixed (field, ideal) matrix shared by the bound-chain and
/// exact-arithmetic criteria.
std::vector<std::pair<FieldPtr, Ideal>> test_matrix() {
    std::vector<std::pair<FieldPtr, Ideal>> entries;
    const FieldPtr rational = make_rational();
    for (const long m : {2L, 3L, 4L, 11L, 41L})
        entries.emplace_back(rational, Ideal::from_int(rational, m));

    const FieldPtr golden = make_golden();
    for (const long m : {2L, 3L, 4L, 7L, 11L})
        entries.emplace_back(golden, Ideal::from_int(golden, m));
    entries.emplace_back(golden, Ideal::principal(two_theta_minus_one(golden)));
    for (const auto& factor : hms::primes_above(golden, 11))
        entries.emplace_back(golden, factor.prime);

    const FieldPtr cubic = make_cubic();
    for (const long m : {2L, 3L})
        entries.emplace_back(cubic, Ideal::from_int(cubic, m));
    return entries;
}

// ---------------------------------------------------------------------------

bool check_order_oracle(std::string& detail) {
    const auto t0 = Clock::now();
    std::size_t cases = 0;
    for (const FieldPtr& field : {make_rational(), make_golden()}) {
        std::vector<Ideal> ideals;
        for (const long m : {2L, 3L, 4L}) ideals.push_back(Ideal::from_int(field, m));
        ideals.push_back(Ideal::from_generators(field, {two_theta_minus_one(field)}));
        ideals.push_back(hms::primes_above(field, 11)[0].prime);
        for (const Ideal& ideal : ideals) {
            const Int formula = hms::congruence_quotient_order(ideal);
            const Int closure = hms::brute_force_image_order(ideal);
            if (formula != closure) {
                detail = "formula " + hms::to_string(formula) + " != closure " +
                         hms::to_string(closure) + " on " + ideal.str();
                return false;
            }
            ++cases;
        }
    }
    // Two independently derived spot values.
    const FieldPtr golden = make_golden();
    const FieldPtr rational = make_rational();
    if (hms::congruence_quotient_order(Ideal::from_int(golden, 2)) != 60 ||
        hms::congruence_quotient_order(Ideal::from_int(rational, 3)) != 24) {
        detail = "spot value mismatch for |SL2(O/(2))| = 60 or |SL2(Z/3)| = 24";
        return false;
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 60.0) {
        detail = "over the 60 s budget";
        return false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu ideals, formula == closure, %.2fs", cases, elapsed);
    detail = buf;
    return true;
}

bool check_verify_suite(std::string& detail) {
    const auto t0 = Clock::now();
    const FieldPtr golden = make_golden();
    std::uint64_t samples = 0;
    for (const long m : {2L, 3L, 7L, 11L}) {
        const auto report = hms::verify_suite(Ideal::from_int(golden, m), 500, 20260814ULL);
        samples += report.samples;
        if (!report.all_passed()) {
            detail = "failures on (" + std::to_string(m) +
                     "): lemma1 " + std::to_string(report.lemma1_failures) +
                     ", lemma2 " + std::to_string(report.lemma2_failures) +
                     ", trace " + std::to_string(report.trace_ineq_failures) +
                     ", displacement " + std::to_string(report.displacement_failures);
            return false;
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 120.0) {
        detail = "over the 120 s budget";
        return false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%llu samples, zero failures, %.2fs",
                  static_cast<unsigned long long>(samples), elapsed);
    detail = buf;
    return true;
}

bool check_pointwise_displacement(std::string& detail) {
    const FieldPtr golden = make_golden();
    const Ideal ideal = Ideal::from_int(golden, 7);
    const hms::LowerBound lower = hms::systole_lower_bound(ideal);
    if (!lower.valid) {
        detail = "lower bound unexpectedly invalid for (7)";
        return false;
    }
    const double threshold = lower.value - 1e-9;
    int checked = 0;
    double min_seen = 1e300;
    for (std::uint64_t attempt = 0; checked < 200 && attempt < 4000; ++attempt) {
        const GroupElement A =
            hms::random_gamma_element(ideal, 2 + attempt % 6, 900 + attempt);
        if (hms::trace_decomposition(A).dy0.is_zero()) continue;
        std::mt19937_64 rng(55501ULL + 7919ULL * static_cast<std::uint64_t>(checked));
        hms::ProductPoint z;
        for (int i = 0; i < golden->degree(); ++i) {
            const double x = static_cast<double>(rng() % 4001) / 1000.0 - 2.0;
            const double y = 0.5 + static_cast<double>(rng() % 2001) / 1000.0;
            z.push_back({x, y});
        }
        const double disp = hms::displacement_at(z, A);
        min_seen = std::min(min_seen, disp);
        if (disp < threshold) {
            detail = "displacement " + std::to_string(disp) + " below " +
                     std::to_string(threshold) + " at sample " + std::to_string(checked);
            return false;
        }
        ++checked;
    }
    if (checked != 200) {
        detail = "only drew " + std::to_string(checked) + " samples with dy0 != 0";
        return false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "200 pairs, min displacement %.4f >= %.4f", min_seen,
                  lower.value);
    detail = buf;
    return true;
}

bool check_search_sandwich(std::string& detail) {
    const auto t0 = Clock::now();
    const FieldPtr golden = make_golden();
    const Ideal ideal = Ideal::from_int(golden, 7);
    const hms::SearchResult result = hms::search_shortest(ideal, 2);
    const hms::LowerBound lower = hms::systole_lower_bound(ideal);
    const hms::WitnessBound witness = hms::upper_bound_witness(ideal);

    if (result.length < lower.value - 1e-9) {
        detail = "search length " + std::to_string(result.length) + " below lower bound";
        return false;
    }
    if (result.length > witness.length + 1e-9 || result.length > 22.013103 + 1e-6) {
        detail = "search length " + std::to_string(result.length) + " above witness bound";
        return false;
    }
    const AlgebraicInteger tr = witness.matrix.trace();
    if (!tr.is_rational() || abs(tr.coords()[0]) != 2399) {
        detail = "witness trace is not -2399: " + tr.str();
        return false;
    }
    const double reference = std::sqrt(2.0) * 2.0 * std::acosh(1199.5);
    if (std::abs(witness.length - reference) > 1e-9) {
        detail = "witness length " + std::to_string(witness.length) +
                 " != sqrt(2)*2*acosh(1199.5)";
        return false;
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 300.0) {
        detail = "over the 300 s budget";
        return false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.6f in [%.6f, %.6f], witness |tr| = 2399, %.2fs",
                  result.length, lower.value, witness.length, elapsed);
    detail = buf;
    return true;
}

bool check_bound_chain(std::string& detail) {
    constexpr double kSlack = 1e-9;
    std::size_t cases = 0;
    for (const auto& [field, ideal] : test_matrix()) {
        bool ok = false;
        try {
            const hms::SystoleReport report =
                hms::make_report(field->label(), ideal.str(), ideal);
            const double lower = report.lower_bound_norm_form.value;
            ok = report.theorem_bound <= lower + kSlack &&
                 report.upper_bound_closed_form <= report.upper_bound_index_form + kSlack;
            if (report.upper_bound_witness) {
                ok = ok && lower <= report.upper_bound_witness->length + kSlack &&
                     report.upper_bound_witness->length <=
                         report.upper_bound_closed_form + kSlack;
            }
            if (report.ideal_norm > 1)
                ok = ok && report.order < hms::pow_int(report.ideal_norm, 3);
        } catch (const std::exception& e) {
            detail = std::string("report failed on ") + field->label() + " " + ideal.str() +
                     ": " + e.what();
            return false;
        }
        if (!ok) {
            detail = "chain violated on " + field->label() + " " + ideal.str();
            return false;
        }
        ++cases;
    }
    detail = std::to_string(cases) + " reports, theorem <= lower <= witness <= closed <= index";
    return true;
}

bool check_exact_arithmetic(std::string& detail) {
    std::vector<Ideal> constructed;
    for (auto& [field, ideal] : test_matrix()) constructed.push_back(ideal);

    std::uint64_t field_seed = 41;
    for (const FieldPtr& field : {make_rational(), make_golden(), make_cubic()}) {
        const auto n = static_cast<std::size_t>(field->degree());
        std::mt19937_64 rng(field_seed++);
        const auto random_element = [&](long spread) {
            const auto width = static_cast<std::uint64_t>(2 * spread + 1);
            while (true) {
                IntVec coords(n);
                bool nonzero = false;
                for (auto& c : coords) {
                    c = static_cast<long>(rng() % width) - spread;
                    nonzero = nonzero || c != 0;
                }
                if (nonzero) return AlgebraicInteger(field, std::move(coords));
            }
        };

        // Embedding products track the exact norm to relative 1e-9.
        for (int i = 0; i < 1000; ++i) {
            const AlgebraicInteger a = random_element(50);
            double prod = 1.0;
            for (const double v : a.embed().value) prod *= v;
            const double exact = hms::to_double(a.norm());
            const double rel = std::abs(prod - exact) / std::max(1.0, std::abs(exact));
            if (rel > 1e-9) {
                detail = "embedding product off by " + std::to_string(rel) + " on " + a.str();
                return false;
            }
        }

        // Ideal norms multiply exactly.
        const auto random_ideal = [&]() {
            std::vector<AlgebraicInteger> gens{random_element(9)};
            if (rng() % 2 == 0) gens.push_back(random_element(9));
            return Ideal::from_generators(field, gens);
        };
        for (int i = 0; i < 100; ++i) {
            const Ideal a = random_ideal();
            const Ideal b = random_ideal();
            if (a.multiply(b).norm() != a.norm() * b.norm()) {
                detail = "norm not multiplicative on " + a.str() + " * " + b.str();
                return false;
            }
            constructed.push_back(a);
            constructed.push_back(b);
        }
    }

    // min_rational_integer r satisfies r <= N and r^n >= N, both exactly.
    for (const Ideal& ideal : constructed) {
        const Int& r = ideal.min_rational_integer();
        const auto n = static_cast<unsigned long>(ideal.field()->degree());
        if (r > ideal.norm() || hms::pow_int(r, n) < ideal.norm()) {
            detail = "min rational integer " + hms::to_string(r) + " outside [N^(1/n), N] on " +
                     ideal.str();
            return false;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "3 fields x 1000 elements, 300 ideal pairs, %zu ideals",
                  constructed.size());
    detail = buf;
    return true;
}

struct CliRun {
    bool ran = false;
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& command) {
    CliRun run;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return run;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) run.output.append(buf, got);
    const int status = pclose(pipe);
    if (status == -1) return run;
    run.ran = true;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

bool check_cli_determinism(const std::string& cli, const std::string& presets,
                           std::string& detail) {
    const std::vector<std::string> commands = {
        cli + " bounds --field " + presets + "/q-sqrt5.json --ideal '{\"int\":7}'" +
            " --ideal '{\"prime_above\":11,\"index\":1}' --format json",
        cli + " search --field " + presets + "/q-sqrt5.json --ideal '{\"int\":7}'" +
            " --height 2 --format json",
        cli + " search --field " + presets + "/q-rational.json --ideal '{\"int\":3}'" +
            " --height 2 --format csv",
        cli + " verify --field " + presets + "/q-sqrt5.json --ideal '{\"int\":3}'" +
            " --samples 100 --seed 42 --format json",
        cli + " order --field " + presets + "/q-rational.json --ideal '{\"int\":12}'" +
            " --format csv",
        cli + " bounds --ideal '{\"gen\":[-1,2]}' --format csv",
    };
    for (const std::string& command : commands) {
        const CliRun first = run_cli(command + " 2>/dev/null");
        const CliRun second = run_cli(command + " 2>/dev/null");
        if (!first.ran || !second.ran) {
            detail = "could not launch: " + command;
            return false;
        }
        if (first.exit_code != 0 || second.exit_code != 0) {
            detail = "exit " + std::to_string(first.exit_code) + "/" +
                     std::to_string(second.exit_code) + " from: " + command;
            return false;
        }
        if (first.output.empty() || first.output != second.output) {
            detail = "stdout differs across reruns of: " + command;
            return false;
        }
    }
    detail = std::to_string(commands.size()) + " commands, byte-identical reruns";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <hms-cli-path> <presets-dir>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const std::string presets = argv[2];

    struct Criterion {
        const char* name;
        bool passed;
        std::string detail;
    };
    std::vector<Criterion> results;
    const auto run = [&results](const char* name, auto&& fn) {
        Criterion c{name, false, {}};
        try {
            c.passed = fn(c.detail);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("unexpected exception: ") + e.what();
        }
        results.push_back(std::move(c));
    };

    run("quotient order formula vs generated closure", check_order_oracle);
    run("congruence lemma suite, 500 samples x 4 ideals", check_verify_suite);
    run("pointwise displacement >= lower bound on (7)", check_pointwise_displacement);
    run("box search sandwiched between proved bounds", check_search_sandwich);
    run("bound chain ordered with 1e-9 slack", check_bound_chain);
    run("exact arithmetic cross-checks", check_exact_arithmetic);
    run("CLI reruns byte-identical", [&](std::string& detail) {
        return check_cli_determinism(cli, presets, detail);
    });

    bool all = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        std::printf("%s  criterion %zu: %s (%s)\n", c.passed ? "PASS" : "FAIL", i + 1,
                    c.name, c.detail.c_str());
        all = all && c.passed;
    }
    return all ? 0 : 1;
}
