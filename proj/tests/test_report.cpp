#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "catch_amalgamated.hpp"

#include "chipfire/errors.hpp"
#include "chipfire/report.hpp"

using namespace chipfire;

namespace {

std::string squeeze(const std::string& s) { return std::regex_replace(s, std::regex(" +"), " "); }

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("enumeration results round-trip through json") {
    for (const StarParams p : {StarParams(1, 1), StarParams(2, 3), StarParams(2, 4)}) {
        const auto result = enumerate_all(p);
        const auto doc = to_json(result);
        CHECK(enumeration_from_json(doc) == result);
        CHECK(enumeration_from_json(json::parse(doc.dump())) == result);
        CHECK(doc.at("total_sequences").is_string());
    }
    const auto doc = to_json(enumerate_all(StarParams(2, 2)));
    CHECK(doc.at("k") == 2);
    CHECK(doc.at("outcomes").at(0).at("branches") == json::parse("[[1,2],[3,4]]"));
    CHECK(doc.at("outcomes").at(0).at("sequence_count") == "8");
    CHECK(doc.at("total_sequences") == "12");

    auto bad = doc;
    bad["total_sequences"] = "12x";
    CHECK_THROWS_AS(enumeration_from_json(bad), PreconditionError);
}

TEST_CASE("frequency reports round-trip through json") {
    const auto report = run_montecarlo(StarParams(2, 3), 500, 3);
    const auto doc = to_json(report);
    CHECK(frequency_from_json(json::parse(doc.dump())) == report);
    CHECK(doc.at("trials") == 500);
    CHECK(doc.at("mode_is_totally_sorted").is_boolean());
}

TEST_CASE("verifier reports, outcomes and tableaux round-trip through json") {
    VerifierReport report{{{"1b", "v_{i,0}^0 late"}, {"2", "three chips"}}};
    CHECK(verifier_report_from_json(json::parse(to_json(report).dump())) == report);
    CHECK(to_json(VerifierReport{}) == json::parse(R"({"passed": true, "violations": []})"));
    auto lying = to_json(report);
    lying["passed"] = true;
    CHECK_THROWS_AS(verifier_report_from_json(lying), PreconditionError);

    const auto outcome = StableOutcome::from_rows({{1, 4, 7}, {2, 3, 8}, {5, 6, 9}});
    CHECK(outcome_from_json(to_json(outcome)) == outcome);
    const auto t = Tableau::from_rows({{1, 3}, {2, 4}});
    CHECK(tableau_from_json(to_json(t)) == t);
}

TEST_CASE("enumeration text table") {
    const auto table = squeeze(text_table(enumerate_all(StarParams(2, 2))));
    CHECK(table.find("[1,3],[2,4] | 4\n") != std::string::npos);
    CHECK(table.find("[1,2],[3,4] | 8 | totally sorted\n") != std::string::npos);
    CHECK(table.find("total | 12\n") != std::string::npos);
    CHECK(squeeze(text_table(enumerate_all(StarParams(1, 3)))).find("[1,2,3] | 60 | totally sorted") !=
          std::string::npos);
}

TEST_CASE("frequency text tables") {
    const auto report = run_montecarlo(StarParams(2, 2), 1000, 1);
    const auto table = text_table(report);
    CHECK(table.find("trials = 1000") != std::string::npos);
    CHECK(table.find("mode is the totally sorted configuration") != std::string::npos);
    const auto both = comparison_table(report, enumerate_all(StarParams(2, 2)));
    CHECK(squeeze(both).find("[1,3],[2,4] |") != std::string::npos);
    CHECK(both.find("0.3333") != std::string::npos);
}

TEST_CASE("atomic writes replace the target and leave no temporary files") {
    const auto dir = std::filesystem::temp_directory_path() / ("chipfire_report_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto target = dir / "out.json";
    write_atomically(target, "first\n");
    write_atomically(target, "second\n");
    CHECK(slurp(target) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    CHECK_THROWS(write_atomically(dir / "missing" / "out.json", "x"));
    std::filesystem::remove_all(dir);
}
