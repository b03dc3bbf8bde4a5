#include "hms/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <utility>

#include "hms/errors.hpp"

namespace hms {

namespace {

Int int_from_json(const Json& value, const std::string& key) {
    if (value.is_number_integer()) return Int(value.get<long>());
    if (value.is_string()) {
        Int out;
        if (mpz_set_str(out.get_mpz_t(), value.get<std::string>().c_str(), 10) != 0)
            throw DescriptorError("key \"" + key + "\": string is not a decimal integer: " +
                                  value.get<std::string>());
        return out;
    }
    throw DescriptorError("key \"" + key + "\": expected an integer or a decimal string, got " +
                          value.dump());
}

IntVec int_vec_from_json(const Json& value, const std::string& key) {
    if (!value.is_array() || value.empty())
        throw DescriptorError("key \"" + key + "\": expected a non-empty array of integers");
    IntVec out;
    out.reserve(value.size());
    for (const auto& entry : value) out.push_back(int_from_json(entry, key));
    return out;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

/// CSV cell: quoted, with internal quotes doubled (descriptors carry both
/// commas and quotes).
std::string csv_escape(const std::string& cell) {
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

Json coords_to_json(const AlgebraicInteger& x) {
    Json arr = Json::array();
    for (const auto& c : x.coords()) arr.push_back(to_string(c));
    return arr;
}

}  // namespace

FieldPtr field_from_json(const Json& doc) {
    if (!doc.is_object()) throw DescriptorError("field descriptor: expected a JSON object");
    if (!doc.contains("label") || !doc["label"].is_string())
        throw DescriptorError("field descriptor: missing string key \"label\"");
    if (!doc.contains("min_poly"))
        throw DescriptorError("field descriptor: missing key \"min_poly\"");
    return NumberField::create(doc["label"].get<std::string>(),
                               int_vec_from_json(doc["min_poly"], "min_poly"));
}

FieldPtr field_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DescriptorError("field descriptor: cannot open file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DescriptorError("field descriptor " + path + ": " + e.what());
    }
    return field_from_json(doc);
}

Ideal ideal_from_json(const FieldPtr& field, const Json& descriptor) {
    if (!descriptor.is_object() || descriptor.size() == 0)
        throw DescriptorError("ideal descriptor: expected a non-empty JSON object, got " +
                              descriptor.dump());

    if (descriptor.contains("int")) {
        const Int m = int_from_json(descriptor["int"], "int");
        if (m < 1) throw DescriptorError("key \"int\": needs a positive integer, got " +
                                         to_string(m));
        return Ideal::from_int(field, m);
    }
    if (descriptor.contains("gen")) {
        IntVec coords = int_vec_from_json(descriptor["gen"], "gen");
        const auto n = static_cast<std::size_t>(field->degree());
        if (coords.size() > n)
            throw DescriptorError("key \"gen\": " + std::to_string(coords.size()) +
                                  " coordinates in a degree-" + std::to_string(n) + " field");
        coords.resize(n, Int(0));
        return Ideal::principal(AlgebraicInteger(field, std::move(coords)));
    }
    if (descriptor.contains("prime_above")) {
        const Int p = int_from_json(descriptor["prime_above"], "prime_above");
        unsigned long index = 0;
        if (descriptor.contains("index")) {
            const Int k = int_from_json(descriptor["index"], "index");
            if (k < 0 || k > 64)
                throw DescriptorError("key \"index\": must be in [0, 64], got " + to_string(k));
            index = k.get_ui();
        }
        const auto primes = primes_above(field, p);
        if (index >= primes.size())
            throw DescriptorError("key \"index\": " + std::to_string(index) + " out of range; " +
                                  to_string(p) + " has " + std::to_string(primes.size()) +
                                  " primes above it");
        return primes[index].prime;
    }
    if (descriptor.contains("product")) {
        const Json& parts = descriptor["product"];
        if (!parts.is_array() || parts.empty())
            throw DescriptorError("key \"product\": expected a non-empty array of descriptors");
        Ideal acc = ideal_from_json(field, parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i)
            acc = acc.multiply(ideal_from_json(field, parts[i]));
        return acc;
    }
    if (descriptor.contains("power")) {
        const Json& body = descriptor["power"];
        if (!body.is_object() || !body.contains("base") || !body.contains("exp"))
            throw DescriptorError("key \"power\": expected {\"base\": ..., \"exp\": ...}");
        const Int exp = int_from_json(body["exp"], "exp");
        if (exp < 1 || exp > 64)
            throw DescriptorError("key \"exp\": needs an integer in [1, 64], got " +
                                  to_string(exp));
        return ideal_from_json(field, body["base"]).power(exp.get_ui());
    }
    throw DescriptorError(
        "ideal descriptor: expected one of \"int\", \"gen\", \"prime_above\", \"product\", "
        "\"power\"; got " +
        descriptor.dump());
}

Ideal ideal_from_string(const FieldPtr& field, const std::string& descriptor) {
    Json doc;
    try {
        doc = Json::parse(descriptor);
    } catch (const Json::parse_error& e) {
        throw DescriptorError("ideal descriptor is not valid JSON: " + std::string(e.what()));
    }
    return ideal_from_json(field, doc);
}

Json matrix_to_json(const GroupElement& g) {
    Json out = Json::object();
    out["a"] = coords_to_json(g.a());
    out["b"] = coords_to_json(g.b());
    out["c"] = coords_to_json(g.c());
    out["d"] = coords_to_json(g.d());
    return out;
}

Json report_to_json(const SystoleReport& report) {
    Json out = Json::object();
    out["field_label"] = report.field_label;
    out["ideal"] = report.ideal_descriptor;
    out["ideal_norm"] = to_string(report.ideal_norm);
    out["order"] = to_string(report.order);
    out["free_action_certified"] = report.free_action_certified;
    out["lower_bound_norm_form"] = Json{{"value", report.lower_bound_norm_form.value},
                                        {"valid", report.lower_bound_norm_form.valid}};
    out["theorem_bound"] = report.theorem_bound;
    if (report.upper_bound_witness) {
        out["upper_bound_witness_length"] =
            Json{{"value", report.upper_bound_witness->length},
                 {"matrix", matrix_to_json(report.upper_bound_witness->matrix)}};
    } else {
        out["upper_bound_witness_length"] = nullptr;
    }
    out["upper_bound_closed_form"] = Json{{"value", report.upper_bound_closed_form},
                                          {"index_form", report.upper_bound_index_form}};
    if (report.empirical_shortest) {
        const SearchResult& s = *report.empirical_shortest;
        Json search = Json::object();
        search["length"] = s.length;
        search["matrix"] = matrix_to_json(s.matrix);
        search["search_height"] = s.search_height;
        search["exhaustive"] = s.exhaustive;
        search["budget_exceeded"] = s.budget_exceeded;
        search["tuples_examined"] = s.tuples_examined;
        search["candidates"] = s.candidates;
        search["totally_hyperbolic"] = s.totally_hyperbolic;
        search["skipped_mixed"] = s.skipped_mixed;
        out["empirical_shortest"] = std::move(search);
    } else {
        out["empirical_shortest"] = nullptr;
    }
    return out;
}

std::string report_csv_header() {
    return "field_label,ideal,norm,order,lower,theorem,upper_witness,upper_closed,"
           "empirical,exhaustive";
}

std::string report_to_csv_row(const SystoleReport& report) {
    std::string row = csv_escape(report.field_label);
    row += "," + csv_escape(report.ideal_descriptor);
    row += "," + to_string(report.ideal_norm);
    row += "," + to_string(report.order);
    row += ",";
    if (report.lower_bound_norm_form.valid) row += fmt_double(report.lower_bound_norm_form.value);
    row += "," + fmt_double(report.theorem_bound);
    row += ",";
    if (report.upper_bound_witness) row += fmt_double(report.upper_bound_witness->length);
    row += "," + fmt_double(report.upper_bound_closed_form);
    row += ",";
    if (report.empirical_shortest) row += fmt_double(report.empirical_shortest->length);
    row += ",";
    if (report.empirical_shortest)
        row += report.empirical_shortest->exhaustive ? "true" : "false";
    return row;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace hms
