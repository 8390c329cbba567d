#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fbrd/errors.hpp"

namespace fbrd {

// Flat key=value configuration (one assignment per line, '#' comments).
struct KeyValueConfig {
    std::map<std::string, std::string> values;

    static KeyValueConfig parse_file(const std::filesystem::path& path);
    static KeyValueConfig parse_text(const std::string& text);
};

// Numeric range written as start:stop:count.
struct Range {
    double start = 0, stop = 0;
    int count = 0;

    static Range parse(const std::string& text);
    std::vector<double> expand() const;
};

// 17 significant digits: lossless for doubles.
std::string format_g17(double v);

// CSV with a header row, comma separators and LF line endings; every cell
// printed with format_g17.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::string file;
    std::string checksum;  // fnv1a64, hex
};

struct RunManifest {
    std::string command;
    std::string version;
    std::map<std::string, std::string> params;  // full resolved parameter set
    double duration_seconds = 0;
    std::vector<ManifestEntry> outputs;
};

// Writes manifest.json into dir, checksumming every listed output file.
void write_manifest(const std::filesystem::path& dir, RunManifest manifest);

}  // namespace fbrd
