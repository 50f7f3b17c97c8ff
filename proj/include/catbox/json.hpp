#pragma once

// JSON forms shared by the CLI and the HTTP service. Field names are
// lower_snake_case; complex numbers are {"re": x, "im": y}.

#include <string>
#include <vector>

#include <json.hpp>

#include "catbox/box.hpp"
#include "catbox/experiments.hpp"

namespace catbox {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const DensityMatrix& rho);
Json to_json(const MeasurementRecord& record);
Json to_json(const LogEntry& entry);
Json to_json(const PanelView& view);
Json to_json(const FrequencyTable& table, const StateSpec& prep);
Json to_json(const Verdict& verdict, const StateSpec& prep);
Json to_json(const ChshReport& report);

// One compact JSON object per line, each terminated by '\n'.
std::string to_jsonl(const std::vector<LogEntry>& entries, std::size_t from = 0);

// Reads a DensityMatrix back from its JSON form; throws DomainError.
DensityMatrix density_from_json(const Json& j);

}  // namespace catbox
