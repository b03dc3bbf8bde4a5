#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hms/ideal.hpp"
#include "hms/number_field.hpp"
#include "hms/systole.hpp"

namespace hms {

/// Insertion-ordered JSON so serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

/// Loads a field descriptor {"label": string, "min_poly": [c0, ..., 1]}
/// (ascending coefficients, monic). Throws DescriptorError on shape
/// problems; field-construction errors pass through.
FieldPtr field_from_json(const Json& doc);
FieldPtr field_from_file(const std::string& path);

/// Parses one ideal descriptor:
///   {"int": m}                          -- the ideal (m), m >= 1
///   {"gen": [c0, ..., c_{n-1}]}         -- principal, power-basis coords
///   {"prime_above": p, "index": k}      -- k-th prime above p (0-based,
///                                          deterministic factor order)
///   {"product": [descriptor, ...]}      -- product of the parts
///   {"power": {"base": d, "exp": t}}    -- t-th power, t >= 1
/// Integer values may be JSON integers or decimal strings (for values past
/// the JSON integer range). Throws DescriptorError with the offending key.
Ideal ideal_from_json(const FieldPtr& field, const Json& descriptor);
Ideal ideal_from_string(const FieldPtr& field, const std::string& descriptor);

/// Matrix -> {"a": [...], "b": [...], "c": [...], "d": [...]}; coordinates
/// are decimal strings so arbitrarily large entries survive JSON intact.
Json matrix_to_json(const GroupElement& g);

/// Full report object. Keys: field_label, ideal, ideal_norm, order,
/// free_action_certified, lower_bound_norm_form {value, valid},
/// theorem_bound, upper_bound_witness_length {value, matrix} (null when
/// N <= 2), upper_bound_closed_form {value, index_form}, empirical_shortest
/// (null unless a search ran). Exact integers are decimal strings.
Json report_to_json(const SystoleReport& report);

/// One CSV data row: field_label, ideal, norm, order, lower, theorem,
/// upper_witness, upper_closed, empirical, exhaustive. Reals carry 10
/// significant digits; absent values are empty cells.
std::string report_csv_header();
std::string report_to_csv_row(const SystoleReport& report);

/// 64-bit FNV-1a of a string, hex-encoded; used to stamp reports with a
/// config fingerprint.
std::string fnv1a_hex(const std::string& text);

}  // namespace hms
