#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "goaldea/app/report.hpp"
#include "goaldea/domain.hpp"

namespace goaldea::app {

struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path goals;
  AlphaGrid alphas = AlphaGrid::standard();
  Format format = Format::Table;
  std::optional<std::filesystem::path> out;  ///< standard output when empty
  std::vector<std::string> dmus;             ///< all goal-carrying DMUs when empty
  bool rescale = false;
  std::size_t node_limit = 1'000'000;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitSolverError = 2;

/// Classification, attainability and the alpha sweep for every selected DMU.
/// Throws InputError for unknown DMUs in the filter.
Report build_report(const ValidatedInstance& instance, const RunConfig& config);

/// Exit code 0 on success, 1 on input errors, 2 on solver failures.
/// Diagnostics and warnings go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace goaldea::app
