#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "chipfire/enumeration.hpp"
#include "chipfire/montecarlo.hpp"
#include "chipfire/tableaux.hpp"
#include "chipfire/verifiers.hpp"

namespace chipfire {

using nlohmann::json;

json to_json(const StableOutcome& outcome);
StableOutcome outcome_from_json(const json& j);

/// {"k","m","outcomes":[{"branches","sequence_count"}],"total_sequences"};
/// counts are decimal strings.
json to_json(const EnumerationResult& result);
EnumerationResult enumeration_from_json(const json& j);

json to_json(const FrequencyReport& report);
FrequencyReport frequency_from_json(const json& j);

/// {"passed": bool, "violations": [{"rule", "detail"}]}
json to_json(const VerifierReport& report);
VerifierReport verifier_report_from_json(const json& j);

/// Array of rows.
json to_json(const Tableau& t);
Tableau tableau_from_json(const json& j);

/// Table with one row per outcome: "configuration | count", the totally
/// sorted row flagged, then the total.
std::string text_table(const EnumerationResult& result);
std::string text_table(const FrequencyReport& report);

/// Random-play frequencies next to each outcome's share of all sequences.
std::string comparison_table(const FrequencyReport& report, const EnumerationResult& sequences);

/// Writes through a temporary file in the same directory, then renames.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace chipfire
