#include "fbrd/runio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fbrd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values[key] = val;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config file not readable: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Range Range::parse(const std::string& text) {
    Range r;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        // Single value: a range of one.
        r.start = r.stop = std::stod(text);
        r.count = 1;
        return r;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("range must be start:stop:count, got " + text);
    try {
        r.start = std::stod(text.substr(0, c1));
        r.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.count = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw UsageError("range must be start:stop:count, got " + text);
    }
    if (r.count < 1) throw UsageError("range count must be >= 1");
    return r;
}

std::vector<double> Range::expand() const {
    std::vector<double> v;
    if (count == 1) return {start};
    v.reserve(count);
    for (int i = 0; i < count; ++i) v.push_back(start + (stop - start) * i / (count - 1));
    return v;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_g17(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

void write_manifest(const std::filesystem::path& dir, RunManifest m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["version"] = m.version;
    j["duration_seconds"] = m.duration_seconds;
    j["params"] = m.params;
    auto& outs = j["outputs"] = nlohmann::json::array();
    for (auto& e : m.outputs) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(dir / e.file)));
        outs.push_back({{"file", e.file}, {"fnv1a64", buf}});
    }
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw UsageError("cannot write manifest in " + dir.string());
    out << j.dump(2) << "\n";
}

}  // namespace fbrd
