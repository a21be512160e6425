// CSV emission with full-precision numbers, flat key/value config files, and
// run manifests pairing every output with what produced it.
#pragma once

#include "qrep/rates.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrep::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// 17 significant digits, enough to round-trip a double exactly.
std::string fmt17(double v);

struct CsvTable {
    std::string schema;                     // e.g. "qrep.link.v1"
    std::vector<std::string> columns;       // name[unit]
    std::vector<std::vector<double>> rows;
};

/// Writes "# schema=..." then the header row then data rows.
void write_csv(const std::string& path, const CsvTable& table);

/// Flat key = value document (TOML-compatible subset: comments with '#',
/// quoted strings, booleans, numbers). Throws std::runtime_error with the
/// offending line on parse failure.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

/// Builds a RepeaterConfig from key/value pairs (unknown keys throw).
rates::RepeaterConfig config_from_kv(const std::map<std::string, std::string>& kv);

/// Serializes the fully resolved config back to key/value form.
std::map<std::string, std::string> kv_from_config(const rates::RepeaterConfig& c);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> resolved_config;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double duration_s = 0.0;
};

/// Writes `<first output>.manifest.json`.
void write_manifest(const RunManifest& m);

/// RateReport as a JSON string.
std::string rate_report_json(const rates::RateReport& r);

}  // namespace qrep::io
