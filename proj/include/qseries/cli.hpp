#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qseries/modeq.hpp"
#include "qseries/registry.hpp"

namespace qseries {

/// Runs the command-line front end. Exit codes: 0 when every expected-pass
/// record passes (flagged records may fail), 1 on an expected-pass failure or
/// evaluation error, 2 on bad flags or an unknown record id.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const NumericSample& s);
std::string to_text(const VerificationReport& r);

}  // namespace qseries
