#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hms/errors.hpp"
#include "hms/io.hpp"
#include "hms/modular_group.hpp"
#include "hms/systole.hpp"
#include "hms/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

constexpr std::uint64_t kDefaultSearchCap = 100000000ULL;  // (b, c, a) tuples
constexpr std::uint64_t kDefaultOrderCap = 100000ULL;      // BFS group elements

struct RunConfig {
    std::string command;
    std::string field_path;  // empty: builtin q-sqrt5
    std::vector<std::string> ideals;
    long height = 1;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0;  // resolved per command unless given explicitly
    std::string format = "json";
    std::string out_path;  // empty: stdout
};

hms::Json config_to_json(const RunConfig& cfg, const std::string& field_label) {
    hms::Json c = hms::Json::object();
    c["field"] = cfg.field_path.empty() ? "builtin:q-sqrt5" : cfg.field_path;
    c["field_label"] = field_label;
    c["ideals"] = cfg.ideals;
    c["height"] = cfg.height;
    c["samples"] = cfg.samples;
    c["seed"] = cfg.seed;
    c["cap"] = cfg.cap;
    c["format"] = cfg.format;
    c["out"] = cfg.out_path.empty() ? "-" : cfg.out_path;
    return c;
}

std::string csv_quote(const std::string& cell) {
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

struct CommandOutput {
    std::vector<hms::Json> reports;    // json mode
    std::string csv_header;            // csv mode
    std::vector<std::string> csv_rows;
    int exit_code = kExitOk;
};

CommandOutput cmd_bounds(const RunConfig& cfg, const hms::FieldPtr& field,
                         const std::vector<hms::Ideal>& ideals) {
    CommandOutput out;
    out.csv_header = hms::report_csv_header();
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        const hms::SystoleReport report =
            hms::make_report(field->label(), cfg.ideals[i], ideals[i]);
        out.reports.push_back(hms::report_to_json(report));
        out.csv_rows.push_back(hms::report_to_csv_row(report));
    }
    return out;
}

CommandOutput cmd_search(const RunConfig& cfg, const hms::FieldPtr& field,
                         const std::vector<hms::Ideal>& ideals) {
    CommandOutput out;
    out.csv_header = hms::report_csv_header();
    bool truncated = false;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        hms::SystoleReport report = hms::make_report(field->label(), cfg.ideals[i], ideals[i]);
        hms::SearchOptions options;
        options.tuple_cap = cfg.cap;
        report.empirical_shortest = hms::search_shortest(ideals[i], cfg.height, options);
        truncated = truncated || report.empirical_shortest->budget_exceeded;
        out.reports.push_back(hms::report_to_json(report));
        out.csv_rows.push_back(hms::report_to_csv_row(report));
    }
    if (truncated) out.exit_code = kExitBudget;
    return out;
}

CommandOutput cmd_verify(const RunConfig& cfg, const hms::FieldPtr& field,
                         const std::vector<hms::Ideal>& ideals) {
    (void)field;
    CommandOutput out;
    out.csv_header =
        "ideal,samples,trivial_skipped,lemma1_failures,lemma2_failures,"
        "trace_ineq_failures,displacement_checks,displacement_failures,all_passed";
    bool failed = false;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        const hms::VerifyReport report = hms::verify_suite(ideals[i], cfg.samples, cfg.seed);
        hms::Json doc = hms::Json::object();
        doc["ideal"] = cfg.ideals[i];
        doc["samples"] = report.samples;
        doc["trivial_skipped"] = report.trivial_skipped;
        doc["lemma1_failures"] = report.lemma1_failures;
        doc["lemma2_failures"] = report.lemma2_failures;
        doc["trace_ineq_failures"] = report.trace_ineq_failures;
        doc["displacement_checks"] = report.displacement_checks;
        doc["displacement_failures"] = report.displacement_failures;
        doc["all_passed"] = report.all_passed();
        hms::Json bad = hms::Json::array();
        for (const auto& g : report.counterexamples) {
            bad.push_back(hms::matrix_to_json(g));
            std::cerr << "hms: counterexample: " << g.str() << "\n";
        }
        doc["counterexamples"] = std::move(bad);
        out.reports.push_back(std::move(doc));

        std::string row = csv_quote(cfg.ideals[i]);
        row += "," + std::to_string(report.samples);
        row += "," + std::to_string(report.trivial_skipped);
        row += "," + std::to_string(report.lemma1_failures);
        row += "," + std::to_string(report.lemma2_failures);
        row += "," + std::to_string(report.trace_ineq_failures);
        row += "," + std::to_string(report.displacement_checks);
        row += "," + std::to_string(report.displacement_failures);
        row += std::string(",") + (report.all_passed() ? "true" : "false");
        out.csv_rows.push_back(std::move(row));

        failed = failed || !report.all_passed();
    }
    if (failed) out.exit_code = kExitInvariant;
    return out;
}

CommandOutput cmd_order(const RunConfig& cfg, const hms::FieldPtr& field,
                        const std::vector<hms::Ideal>& ideals) {
    (void)field;
    CommandOutput out;
    out.csv_header = "ideal,norm,order,index_upper,index_lower,brute,equal";
    bool mismatch = false;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        const hms::Int order = hms::congruence_quotient_order(ideals[i]);
        const hms::IndexBounds bounds = hms::index_bounds(ideals[i]);

        bool skipped = false;
        hms::Int brute = 0;
        if (ideals[i].norm() > 65535) {
            skipped = true;  // packed-key cross-check not representable
        } else {
            try {
                brute = hms::brute_force_image_order(ideals[i], cfg.cap);
            } catch (const hms::CapExceededError&) {
                skipped = true;
            }
        }

        hms::Json doc = hms::Json::object();
        doc["ideal"] = cfg.ideals[i];
        doc["norm"] = hms::to_string(ideals[i].norm());
        doc["order"] = hms::to_string(order);
        doc["index_upper"] = hms::to_string(bounds.upper);
        doc["index_lower"] = hms::to_string(bounds.lower);
        if (skipped) {
            doc["brute_force"] = nullptr;
            doc["equal"] = nullptr;
        } else {
            doc["brute_force"] = hms::to_string(brute);
            doc["equal"] = (brute == order);
            if (brute != order) mismatch = true;
        }
        doc["brute_skipped"] = skipped;
        out.reports.push_back(std::move(doc));

        std::string row = csv_quote(cfg.ideals[i]);
        row += "," + hms::to_string(ideals[i].norm());
        row += "," + hms::to_string(order);
        row += "," + hms::to_string(bounds.upper);
        row += "," + hms::to_string(bounds.lower);
        row += ",";
        if (!skipped) row += hms::to_string(brute);
        row += ",";
        if (!skipped) row += (brute == order) ? "true" : "false";
        out.csv_rows.push_back(std::move(row));
    }
    if (mismatch) out.exit_code = kExitInvariant;
    return out;
}

std::string render_payload(const RunConfig& cfg, const std::string& field_label,
                           const CommandOutput& result) {
    const hms::Json config = config_to_json(cfg, field_label);
    const std::string config_hash = hms::fnv1a_hex(config.dump());
    if (cfg.format == "csv") {
        std::string payload = "# hms " + std::string(hms::kVersion) + " command=" + cfg.command +
                              " config_hash=" + config_hash + "\n";
        payload += "# config " + config.dump() + "\n";
        payload += result.csv_header + "\n";
        for (const auto& row : result.csv_rows) payload += row + "\n";
        return payload;
    }
    hms::Json envelope = hms::Json::object();
    envelope["version"] = hms::kVersion;
    envelope["command"] = cfg.command;
    envelope["config"] = config;
    envelope["config_hash"] = config_hash;
    envelope["reports"] = result.reports;
    return envelope.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"systole bounds for principal congruence covers of Hilbert modular varieties"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<CLI::Option*> cap_options;

    const auto add_common = [&](CLI::App* sub, bool with_height, bool with_samples,
                                bool with_cap) {
        sub->add_option("--field", cfg.field_path,
                        "Path to a field descriptor JSON file (default: built-in q-sqrt5)");
        sub->add_option("--ideal", cfg.ideals, "Ideal descriptor JSON (repeatable)")
            ->required()
            ->type_size(1)
            ->allow_extra_args(false);
        sub->add_option("--seed", cfg.seed, "Seed for all randomized pieces (default 0)");
        if (with_height)
            sub->add_option("--height", cfg.height, "Coordinate box height multiplier")
                ->check(CLI::PositiveNumber);
        if (with_samples)
            sub->add_option("--samples", cfg.samples, "Random samples per ideal")
                ->check(CLI::PositiveNumber);
        if (with_cap)
            cap_options.push_back(
                sub->add_option("--cap", cfg.cap, "Work budget (search tuples / group elements)"));
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "Systole bounds for each ideal");
    add_common(bounds, false, false, false);
    CLI::App* search = app.add_subcommand(
        "search", "Bounds plus an empirical shortest-geodesic box search");
    add_common(search, true, false, true);
    CLI::App* verify = app.add_subcommand(
        "verify", "Randomized lemma/bound verification suite");
    add_common(verify, false, true, false);
    CLI::App* order = app.add_subcommand(
        "order", "Congruence quotient order: formula vs brute-force closure");
    add_common(order, false, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    // Per-command budget defaults; an explicit --cap overrides.
    bool cap_given = false;
    for (const auto* opt : cap_options) cap_given = cap_given || opt->count() > 0;
    if (!cap_given) cfg.cap = (cfg.command == "order") ? kDefaultOrderCap : kDefaultSearchCap;

    // Input resolution: every failure here is an input error.
    hms::FieldPtr field;
    std::vector<hms::Ideal> ideals;
    try {
        field = cfg.field_path.empty()
                    ? hms::NumberField::create("q-sqrt5", {hms::Int(-1), hms::Int(-1), hms::Int(1)})
                    : hms::field_from_file(cfg.field_path);
        for (const auto& descriptor : cfg.ideals)
            ideals.push_back(hms::ideal_from_string(field, descriptor));
    } catch (const std::exception& e) {
        std::cerr << "hms: input error: " << e.what() << "\n";
        return kExitInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CommandOutput result;
    try {
        if (cfg.command == "bounds") result = cmd_bounds(cfg, field, ideals);
        else if (cfg.command == "search") result = cmd_search(cfg, field, ideals);
        else if (cfg.command == "verify") result = cmd_verify(cfg, field, ideals);
        else result = cmd_order(cfg, field, ideals);
    } catch (const hms::CapExceededError& e) {
        std::cerr << "hms: budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "hms: invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    }
    const auto t1 = std::chrono::steady_clock::now();

    const std::string payload = render_payload(cfg, field->label(), result);
    if (cfg.out_path.empty()) {
        std::cout << payload;
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "hms: input error: failed writing to stdout\n";
            return kExitInput;
        }
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "hms: input error: cannot open output file " << cfg.out_path << "\n";
            return kExitInput;
        }
        out << payload;
        out.close();
        if (!out) {
            std::cerr << "hms: input error: failed writing " << cfg.out_path << "\n";
            return kExitInput;
        }
    }

    // Wall time goes to stderr only, keeping stdout byte-reproducible.
    const double seconds = std::chrono::duration<double>(t1 - t0).count();
    std::fprintf(stderr, "hms: %s finished in %.3fs\n", cfg.command.c_str(), seconds);
    return result.exit_code;
}
