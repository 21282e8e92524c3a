#pragma once

#include "zappatic/arrangement.hpp"

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>

namespace zappatic::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kGenericity = 3, kInternal = 4 };

inline constexpr const char* kJsonBegin = "----- BEGIN JSON -----";
inline constexpr const char* kJsonEnd = "----- END JSON -----";

struct ArrangementFile {
  Arrangement arrangement{0};
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

nlohmann::ordered_json arrangement_to_json(const Arrangement& arr, const nlohmann::ordered_json& metadata);
ArrangementFile arrangement_from_json(const nlohmann::ordered_json& j);
ArrangementFile read_arrangement(const std::string& path);

/// Maps an escaped exception to its exit code.
int exit_code_for(const std::exception& e);

/// Runs one command line. Never throws; the return value is the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zappatic::cli
