#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "json.hpp"

namespace {

struct Captured {
    std::string out;
    int status = -1;
};

Captured cli(const std::string& args) {
    Captured c;
    const std::string command = std::string("'") + CHIPFIRE_CLI + "' " + args + " 2>/dev/null";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return c;
}

std::string fixture(const std::string& name) { return std::string("'") + CHIPFIRE_FIXTURE_DIR + "/" + name + "'"; }

}  // namespace

TEST_CASE("help and successful commands exit 0") {
    CHECK(cli("--help").status == 0);
    CHECK(cli("enumerate --help").status == 0);
    const auto table = cli("enumerate --k 2 --m 2");
    CHECK(table.status == 0);
    CHECK(table.out.find("total") != std::string::npos);
    CHECK(cli("syt --k 3 --m 3 --witness").status == 0);
    CHECK(cli("volmin --k 2 --m 3").status == 0);
    CHECK(cli("stabilize --k 2 --m 2 --verify --non-strict-mixing").status == 0);
}

TEST_CASE("argument errors exit 2") {
    CHECK(cli("").status == 2);
    CHECK(cli("frobnicate").status == 2);
    CHECK(cli("enumerate --k 0 --m 2").status == 2);
    CHECK(cli("enumerate --k 2").status == 2);
    CHECK(cli("stabilize --k 2 --m 2 --strategy sideways").status == 2);
    CHECK(cli("enumerate --k 3 --m 3").status == 2);
    CHECK(cli("enumerate --k 2 --m 4 --max-states 10").status == 2);
    CHECK(cli("montecarlo --k 2 --m 2 --trials 0 --seed 1").status == 2);
}

TEST_CASE("failed verification exits 1") {
    const auto strict = cli("verify --k 2 --m 3 --samples 20 --seed 1 --json");
    CHECK(strict.status == 1);
    const auto doc = nlohmann::json::parse(strict.out);
    CHECK(doc.at("violations_by_rule").contains("mixing-strict"));
    CHECK_FALSE(doc.at("passed").get<bool>());

    const auto relaxed = cli("verify --k 2 --m 3 --samples 20 --seed 1 --non-strict-mixing --json");
    CHECK(relaxed.status == 0);
    CHECK(nlohmann::json::parse(relaxed.out).at("passed").get<bool>());
}

TEST_CASE("replay of the scripted 3x3 fixture") {
    const auto r = cli("replay --k 3 --m 3 --json " + fixture("non_standard_3x3.log"));
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("outcome") == nlohmann::json::parse("[[1,4,7],[2,3,8],[5,6,9]]"));
    CHECK_FALSE(doc.at("standard").get<bool>());
    CHECK(cli("replay --k 2 --m 2 " + fixture("non_standard_3x3.log")).status == 1);
}

TEST_CASE("--out writes the same document that stdout would show") {
    const auto dir = std::filesystem::temp_directory_path() / ("chipfire_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto path = dir / "table.json";
    REQUIRE(cli("enumerate --k 2 --m 3 --json --out '" + path.string() + "'").status == 0);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == cli("enumerate --k 2 --m 3 --json").out);
    std::filesystem::remove_all(dir);
}
