#pragma once

#include <string>

#include <json.hpp>

#include "benflow/flow_signal.hpp"
#include "benflow/genericity.hpp"
#include "benflow/matrix_core.hpp"
#include "benflow/resonance.hpp"

namespace benflow::cli {

nlohmann::json to_json(const WeylReport& w);
nlohmann::json to_json(const BenfordReport& r);
BenfordReport benford_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CensusReport& r);
CensusReport census_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpectrumInfo& s);
nlohmann::json to_json(const ResonanceVerdict& v);

// digit,frequency,benford rows.
std::string digits_csv(const BenfordReport& r);

}  // namespace benflow::cli
