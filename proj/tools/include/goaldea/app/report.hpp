#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "goaldea/dea.hpp"
#include "goaldea/domain.hpp"
#include "goaldea/models.hpp"

namespace goaldea::app {

enum class Format { Table, Csv, Json };

const char* to_string(Format format) noexcept;
std::optional<Format> format_from_string(std::string_view text);

struct DmuReport {
  std::string dmu;
  std::vector<double> actual;  ///< schema order
  GoalVector goals;            ///< schema order
  bool attainable = false;
  dea::EfficiencyStatus status = dea::EfficiencyStatus::Inefficient;
  std::vector<models::SweepEntry> rows;  ///< grid order

  friend bool operator==(const DmuReport&, const DmuReport&) = default;
};

struct Report {
  VariableSchema schema;
  ModelKind kind = ModelKind::NonOriented;
  std::vector<double> alphas;
  std::vector<DmuReport> dmus;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Deterministic bytes for a fixed report. Table mode prints 2 decimals,
/// csv and json carry full precision.
std::string render_report(const Report& report, Format format);

/// Inverse of render_report(report, Format::Json). Throws InputError.
Report report_from_json(std::string_view text);

/// "%.17g"
std::string full_precision(double value);

}  // namespace goaldea::app
