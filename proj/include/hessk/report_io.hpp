#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hessk/verify.hpp"

namespace hessk {

/// Shortest decimal representation that round-trips the exact double.
std::string repr(double v);

namespace verify {

nlohmann::ordered_json ledger_to_json(const ConstantsLedger& led);

/// Report serialization. wall_ms is emitted as 0 unless include_wall is set,
/// so repeated runs with the same seed produce byte-identical artifacts.
nlohmann::ordered_json report_to_json(const VerificationReport& rep, bool include_wall = false);

std::string report_csv_header();
std::string report_csv_row(const VerificationReport& rep, bool include_wall = false);

} // namespace verify
} // namespace hessk
