#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "floqlab/config.hpp"
#include "floqlab/csv.hpp"
#include "floqlab/error.hpp"
#include "floqlab/manifest.hpp"

using namespace floqlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("floqlab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("default configs validate for every command") {
    for (const char* cmd :
         {"simulate", "chern-sweep", "bhz", "floquet", "array", "noise-mc"}) {
        const RunConfig c = default_config(cmd);
        CHECK_NOTHROW(c.validate());
        CHECK(c.command == cmd);
    }
}

TEST_CASE("strict parsing") {
    SUBCASE("unknown top-level key") {
        const auto doc = nlohmann::json::parse(R"({"drvie": {}})");
        CHECK_THROWS_WITH_AS(parse_config(doc, "simulate"),
                             doctest::Contains("unknown key"), ConfigError);
    }
    SUBCASE("unknown nested key") {
        const auto doc = nlohmann::json::parse(R"({"drive": {"omegaX": 1.0}})");
        CHECK_THROWS_WITH_AS(parse_config(doc, "simulate"), doctest::Contains("omegaX"),
                             ConfigError);
    }
    SUBCASE("omega2 and ratio at once") {
        const auto doc =
            nlohmann::json::parse(R"({"drive": {"omega2": 0.2, "omega2_over_omega1": 1.6}})");
        CHECK_THROWS_AS(parse_config(doc, "simulate"), ConfigError);
    }
    SUBCASE("empty sweep list") {
        const auto doc = nlohmann::json::parse(R"({"sweep": {"m_values": []}})");
        CHECK_THROWS_AS(parse_config(doc, "chern-sweep"), ConfigError);
    }
    SUBCASE("zero-length drive") {
        const auto doc = nlohmann::json::parse(R"({"drive": {"t_total": 0.0}})");
        CHECK_THROWS_AS(parse_config(doc, "simulate"), ConfigError);
    }
    SUBCASE("parse errors carry position info") {
        const fs::path dir = temp_dir("badjson");
        {
            std::ofstream out(dir / "bad.json");
            out << "{\n  \"drive\": {\n  , }\n";
        }
        try {
            load_config_file(dir / "bad.json", "simulate");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
}

TEST_CASE("config json round trip") {
    RunConfig c = default_config("chern-sweep");
    c.seed = 777;
    c.drive.M = 1.4;
    c.threads = 3;
    const RunConfig back = parse_config(c.to_json(), "chern-sweep");
    CHECK(back.seed == 777);
    CHECK(back.drive.M == 1.4);
    CHECK(back.threads == 3);
    CHECK(back.drive.omega2 == c.drive.omega2);
    CHECK(back.sweep_m == c.sweep_m);
}

TEST_CASE("format_double round-trips bit-exactly") {
    for (const double v : {0.0, 0.5, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.1 + 0.2}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        if (v == 0.5) CHECK(s == "0.5");
    }
}

TEST_CASE("csv writer layout") {
    const fs::path dir = temp_dir("csv");
    {
        CsvWriter csv(dir / "t.csv", {"a", "b"});
        csv.row({1.5, -2.25});
        CHECK_THROWS_AS(csv.row({1.0}), Error);
    }
    std::ifstream in(dir / "t.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "a,b");
    CHECK(row == "1.5,-2.25");
}

TEST_CASE("manifest checksums are content-addressed") {
    const fs::path dir = temp_dir("manifest");
    {
        std::ofstream out(dir / "x.csv", std::ios::binary);
        out << "t,v\n0,1\n";
    }
    {
        std::ofstream out(dir / "y.csv", std::ios::binary);
        out << "t,v\n0,1\n";
    }
    CHECK(checksum_hex(dir / "x.csv") == checksum_hex(dir / "y.csv"));

    RunManifest m;
    m.command = "simulate";
    m.code_version = "test";
    m.created_utc = utc_timestamp();
    m.resolved_config = default_config("simulate").to_json();
    m.add_output(dir, "x.csv");
    m.write(dir);

    const auto doc = nlohmann::json::parse(std::ifstream(dir / "manifest.json"));
    CHECK(doc.at("command") == "simulate");
    CHECK(doc.at("outputs").at("x.csv") == checksum_hex(dir / "x.csv"));
    // the recorded config parses back
    CHECK_NOTHROW(parse_config(doc.at("config"), "simulate"));
}
