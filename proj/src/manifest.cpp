#include "floqlab/manifest.hpp"

#include <chrono>
#include <fstream>

#include "floqlab/error.hpp"

namespace floqlab {

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string() + " for checksum");
    std::uint64_t h = 1469598103934665603ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

std::string checksum_hex(const std::filesystem::path& path) {
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& filename) {
    outputs.emplace_back(filename, checksum_hex(dir / filename));
}

void RunManifest::write(const std::filesystem::path& dir) const {
    nlohmann::json j;
    j["command"] = command;
    j["code_version"] = code_version;
    j["created_utc"] = created_utc;
    j["config"] = resolved_config;
    j["notes"] = notes;
    nlohmann::json outs = nlohmann::json::object();
    for (const auto& [name, sum] : outputs) outs[name] = sum;
    j["outputs"] = outs;

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write manifest in " + dir.string());
    out << j.dump(2) << '\n';
}

}  // namespace floqlab
