#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "goaldea/domain.hpp"
#include "goaldea/errors.hpp"

namespace goaldea::app {

/// Malformed CSV. Line and column are 1-based; column counts characters.
class ParseError : public InputError {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

/// Header `dmu,<i|o|ni|no>:<name>,...`, one row per DMU.
Dataset parse_dataset(std::string_view text, const std::string& source = "data");

/// Header `dmu,<name>,...`; names must exist in `schema`. An empty cell
/// means no goal for that variable.
GoalSet parse_goals(std::string_view text, const VariableSchema& schema,
                    const std::string& source = "goals");

ValidatedInstance ingest_text(std::string_view data_csv, std::string_view goals_csv);

/// Throws InputError when a file cannot be read.
ValidatedInstance ingest(const std::filesystem::path& data_csv,
                         const std::filesystem::path& goals_csv);

std::string read_file(const std::filesystem::path& path);

}  // namespace goaldea::app
