#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nelab/properties.hpp"

namespace nelab {

inline constexpr const char* kVersion = "0.1.0";

/// Stable-key-order JSON form of a report. Real-field coordinates serialize
/// as numbers, complex ones as [re, im] pairs. elapsed_ms is the only field
/// excluded from determinism comparisons.
nlohmann::ordered_json report_to_json(const CheckReport& r);

CheckReport report_from_json(const nlohmann::ordered_json& j);

/// CSV flattening, one row per witness (a single row when there are none).
/// Header: check,space,field,verdict,max_violation,samples,seed,tolerance,
///         witness_index,functional,vector,values
/// Coordinates are ';'-joined scalar literals; values are ';'-joined k=v.
std::string report_to_csv(const CheckReport& r);
std::string csv_header();

/// Writes text via a temp file + rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& text);

/// Strips every elapsed_ms field (recursively) for byte comparisons.
nlohmann::ordered_json strip_timing(nlohmann::ordered_json j);

}  // namespace nelab
