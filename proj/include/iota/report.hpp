#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace iota {

inline constexpr const char* kToolkitVersion = "0.1.0";

// A serializable analysis result: one per CLI invocation.
struct AnalysisReport {
    std::string kind;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::string toolkit_version = kToolkitVersion;

    nlohmann::json to_json() const;
    static AnalysisReport from_json(const nlohmann::json& j);

    // Human-readable text form: deterministic ordering, 12 significant digits.
    std::string render_text() const;
};

// Formats a double with 12 significant digits.
std::string format_number(double v);

// FNV-1a over the file contents, for input provenance.
std::string checksum_hex(const std::string& data);

// Provenance record for an input file; throws IoFailure if unreadable.
nlohmann::json describe_input_file(const std::string& path);

// Writes atomically (temp file + rename) so failures never leave partials.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace iota
