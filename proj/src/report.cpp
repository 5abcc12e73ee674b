#include "iota/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "iota/errors.hpp"

namespace iota {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string checksum_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json describe_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot open input file '" + path + "'");
    std::ostringstream contents;
    contents << in.rdbuf();
    const std::string data = contents.str();
    return {{"file", path}, {"bytes", data.size()}, {"fnv1a64", checksum_hex(data)}};
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoFailure("cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out)
            throw IoFailure("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoFailure("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

nlohmann::json AnalysisReport::to_json() const {
    return {{"kind", kind},
            {"inputs", inputs},
            {"results", results},
            {"warnings", warnings},
            {"toolkit_version", toolkit_version}};
}

AnalysisReport AnalysisReport::from_json(const nlohmann::json& j) {
    AnalysisReport r;
    r.kind = j.at("kind").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    return r;
}

namespace {

std::string render_scalar(const nlohmann::json& v) {
    if (v.is_number_float())
        return format_number(v.get<double>());
    return v.dump();
}

void render_value(std::ostream& out, const std::string& key, const nlohmann::json& v) {
    if (v.is_object()) {
        for (const auto& [k, sub] : v.items())
            render_value(out, key.empty() ? k : key + "." + k, sub);
        return;
    }
    if (v.is_array()) {
        bool nested = false;
        for (const auto& item : v)
            nested = nested || item.is_structured();
        if (nested) {
            std::size_t idx = 0;
            for (const auto& item : v)
                render_value(out, key + "[" + std::to_string(idx++) + "]", item);
            return;
        }
        out << key << " = [";
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? ", " : "") << render_scalar(v[i]);
        out << "]\n";
        return;
    }
    out << key << " = " << render_scalar(v) << "\n";
}

} // namespace

std::string AnalysisReport::render_text() const {
    std::ostringstream out;
    out << "kind = " << kind << "\n";
    for (const auto& [k, v] : inputs.items())
        render_value(out, "input." + k, v);
    render_value(out, "", results);
    for (const auto& w : warnings)
        out << "warning: " << w << "\n";
    return out.str();
}

} // namespace iota
