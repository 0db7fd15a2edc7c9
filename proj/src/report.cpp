#include "chipfire/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

std::string decimal(const BigCount& n) { return n.str(); }

BigCount parse_decimal(const json& j) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw PreconditionError("expected a decimal count string, got '" + s + "'");
    }
    return BigCount(s);
}

StarParams params_from_json(const json& j) { return StarParams(j.at("k").get<int>(), j.at("m").get<int>()); }

std::string padded(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::size_t config_width(const StarParams& params) {
    return std::max<std::size_t>(20, to_string(totally_sorted_outcome(params)).size());
}

}  // namespace

json to_json(const StableOutcome& outcome) { return outcome.rows(); }

StableOutcome outcome_from_json(const json& j) {
    return StableOutcome::from_rows(j.get<std::vector<std::vector<Label>>>());
}

json to_json(const EnumerationResult& result) {
    json outcomes = json::array();
    for (const auto& [outcome, n] : result.per_outcome) {
        outcomes.push_back({{"branches", to_json(outcome)}, {"sequence_count", decimal(n)}});
    }
    return {{"k", result.params.k},
            {"m", result.params.m},
            {"outcomes", std::move(outcomes)},
            {"total_sequences", decimal(result.total_sequences)}};
}

EnumerationResult enumeration_from_json(const json& j) {
    EnumerationResult result{params_from_json(j), {}, parse_decimal(j.at("total_sequences"))};
    for (const auto& entry : j.at("outcomes")) {
        result.per_outcome.emplace(outcome_from_json(entry.at("branches")), parse_decimal(entry.at("sequence_count")));
    }
    return result;
}

json to_json(const FrequencyReport& report) {
    json outcomes = json::array();
    for (const auto& [outcome, f] : report.per_outcome) {
        outcomes.push_back({{"branches", to_json(outcome)},
                            {"hits", f.hits},
                            {"is_syt", f.is_syt},
                            {"totally_sorted", f.is_totally_sorted}});
    }
    return {{"k", report.params.k},
            {"m", report.params.m},
            {"trials", report.trials},
            {"seed", report.seed},
            {"outcomes", std::move(outcomes)},
            {"mode_is_totally_sorted", report.mode_is_totally_sorted()},
            {"syt_outnumber_non_syt", report.syt_outnumber_non_syt()}};
}

FrequencyReport frequency_from_json(const json& j) {
    FrequencyReport report{params_from_json(j), j.at("trials").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>(),
                           {}};
    for (const auto& entry : j.at("outcomes")) {
        report.per_outcome.emplace(outcome_from_json(entry.at("branches")),
                                   OutcomeFrequency{entry.at("hits").get<std::uint64_t>(), entry.at("is_syt").get<bool>(),
                                                    entry.at("totally_sorted").get<bool>()});
    }
    return report;
}

json to_json(const VerifierReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"rule", v.rule}, {"detail", v.detail}});
    return {{"passed", report.passed()}, {"violations", std::move(violations)}};
}

VerifierReport verifier_report_from_json(const json& j) {
    VerifierReport report;
    for (const auto& v : j.at("violations")) {
        report.violations.push_back({v.at("rule").get<std::string>(), v.at("detail").get<std::string>()});
    }
    if (j.at("passed").get<bool>() != report.passed()) {
        throw PreconditionError("verifier report 'passed' disagrees with its violation list");
    }
    return report;
}

json to_json(const Tableau& t) { return t.as_rows(); }

Tableau tableau_from_json(const json& j) { return Tableau::from_rows(j.get<std::vector<std::vector<Label>>>()); }

std::string text_table(const EnumerationResult& result) {
    const auto width = config_width(result.params);
    std::ostringstream out;
    out << "(k,m) = (" << result.params.k << "," << result.params.m << ")\n";
    out << padded("stable configuration", width) << " | # of stabilization sequences\n";
    for (const auto& [outcome, n] : result.per_outcome) {
        out << padded(to_string(outcome), width) << " | " << decimal(n);
        if (outcome.is_totally_sorted()) out << " | totally sorted";
        out << '\n';
    }
    out << padded("total", width) << " | " << decimal(result.total_sequences) << '\n';
    return out.str();
}

std::string text_table(const FrequencyReport& report) {
    const auto width = config_width(report.params);
    std::ostringstream out;
    out << "(k,m) = (" << report.params.k << "," << report.params.m << "), trials = " << report.trials
        << ", seed = " << report.seed << '\n';
    out << padded("stable configuration", width) << " | hits | frequency | SYT\n";
    for (const auto& [outcome, f] : report.per_outcome) {
        out << padded(to_string(outcome), width) << " | " << f.hits << " | " << std::fixed << std::setprecision(4)
            << static_cast<double>(f.hits) / static_cast<double>(report.trials) << " | " << (f.is_syt ? "yes" : "no");
        if (f.is_totally_sorted) out << " | totally sorted";
        out << '\n';
    }
    out << "mode is the totally sorted configuration: " << (report.mode_is_totally_sorted() ? "yes" : "no") << '\n';
    out << "every SYT outcome more frequent than every non-SYT outcome: "
        << (report.syt_outnumber_non_syt() ? "yes" : "no") << '\n';
    return out.str();
}

std::string comparison_table(const FrequencyReport& report, const EnumerationResult& sequences) {
    const auto width = config_width(report.params);
    const double total = sequences.total_sequences.convert_to<double>();
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << padded("stable configuration", width) << " | random-play frequency | share of sequences | SYT\n";
    for (const auto& [outcome, n] : sequences.per_outcome) {
        auto it = report.per_outcome.find(outcome);
        const double freq =
            it == report.per_outcome.end() ? 0.0 : static_cast<double>(it->second.hits) / static_cast<double>(report.trials);
        out << padded(to_string(outcome), width) << " | " << freq << " | " << n.convert_to<double>() / total << " | "
            << (from_outcome(outcome).is_standard() ? "yes" : "no") << '\n';
    }
    return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        file << contents;
        file.flush();
        if (!file) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

}  // namespace chipfire
