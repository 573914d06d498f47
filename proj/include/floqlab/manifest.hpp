#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace floqlab {

// Every run emits one of these next to its data files. Re-running the
// recorded config reproduces every output checksum (statistical outputs
// through the recorded seeds); the timestamp is the only volatile field.
struct RunManifest {
    std::string command;
    std::string code_version;
    std::string created_utc;
    nlohmann::json resolved_config;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, std::string>> outputs;  // filename -> fnv1a-64 hex

    // Checksums the file and records it.
    void add_output(const std::filesystem::path& dir, const std::string& filename);
    void write(const std::filesystem::path& dir) const;  // dir/manifest.json
};

std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string checksum_hex(const std::filesystem::path& path);
std::string utc_timestamp();

}  // namespace floqlab
