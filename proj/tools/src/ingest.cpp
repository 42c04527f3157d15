#include "goaldea/app/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace goaldea::app {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

struct Cell {
  std::string text;
  std::size_t column = 1;
};

struct Record {
  std::vector<Cell> cells;
  std::size_t line = 1;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits on commas, honoring double quotes. Blank lines are dropped.
std::vector<Record> split_records(std::string_view text, const std::string& source) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Record> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    Record rec;
    rec.line = line_no;
    std::size_t i = 0;
    while (true) {
      Cell cell;
      cell.column = i + 1;
      std::size_t start = i;
      while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
      if (start < line.size() && line[start] == '"') {
        std::size_t j = start + 1;
        bool closed = false;
        while (j < line.size()) {
          if (line[j] == '"') {
            if (j + 1 < line.size() && line[j + 1] == '"') {
              cell.text += '"';
              j += 2;
              continue;
            }
            closed = true;
            ++j;
            break;
          }
          cell.text += line[j++];
        }
        if (!closed) throw ParseError(source, line_no, start + 1, "unterminated quoted field");
        while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
        if (j < line.size() && line[j] != ',') {
          throw ParseError(source, line_no, j + 1, "unexpected character after quoted field");
        }
        i = j;
      } else {
        std::size_t j = line.find(',', i);
        if (j == std::string_view::npos) j = line.size();
        cell.text = std::string(trim(line.substr(i, j - i)));
        i = j;
      }
      rec.cells.push_back(std::move(cell));
      if (i >= line.size()) break;
      ++i;  // skip comma
      if (i == line.size()) {
        rec.cells.push_back({"", i + 1});
        break;
      }
    }
    records.push_back(std::move(rec));
    if (end == text.size()) break;
  }
  return records;
}

double parse_number(const Cell& cell, std::size_t line, const std::string& source) {
  const std::string& s = cell.text;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(source, line, cell.column, "'" + s + "' is not a decimal number");
  }
  return value;
}

void check_dmu_header(const Record& header, const std::string& source) {
  if (header.cells.empty() || header.cells[0].text != "dmu") {
    throw ParseError(source, header.line, 1, "first header column must be 'dmu'");
  }
}

void check_width(const Record& rec, std::size_t width, const std::string& source) {
  if (rec.cells.size() != width) {
    const std::size_t column = rec.cells.size() > width ? rec.cells[width].column
                                                        : rec.cells.back().column;
    throw ParseError(source, rec.line, column,
                     "expected " + std::to_string(width) + " fields, found " +
                         std::to_string(rec.cells.size()));
  }
}

}  // namespace

Dataset parse_dataset(std::string_view text, const std::string& source) {
  const auto records = split_records(text, source);
  if (records.empty()) throw ParseError(source, 1, 1, "missing header");
  const Record& header = records.front();
  check_dmu_header(header, source);
  if (header.cells.size() < 2) throw ParseError(source, header.line, 1, "no variable columns");

  std::vector<VariableSpec> specs;
  for (std::size_t c = 1; c < header.cells.size(); ++c) {
    const Cell& cell = header.cells[c];
    const auto colon = cell.text.find(':');
    if (colon == std::string::npos) {
      throw ParseError(source, header.line, cell.column,
                       "header '" + cell.text + "' lacks a role prefix (i, o, ni, no)");
    }
    const std::string prefix = cell.text.substr(0, colon);
    VariableSpec spec;
    spec.name = std::string(trim(std::string_view(cell.text).substr(colon + 1)));
    if (prefix == "i") {
      spec.kind = VariableKind::Input;
      spec.control = Control::Controllable;
    } else if (prefix == "o") {
      spec.kind = VariableKind::Output;
      spec.control = Control::Controllable;
    } else if (prefix == "ni") {
      spec.kind = VariableKind::Input;
      spec.control = Control::NonControllable;
    } else if (prefix == "no") {
      spec.kind = VariableKind::Output;
      spec.control = Control::NonControllable;
    } else {
      throw ParseError(source, header.line, cell.column, "unknown role prefix '" + prefix + "'");
    }
    if (spec.name.empty()) {
      throw ParseError(source, header.line, cell.column, "empty variable name");
    }
    specs.push_back(std::move(spec));
  }

  Dataset dataset;
  dataset.schema = VariableSchema(std::move(specs));
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    check_width(rec, header.cells.size(), source);
    if (rec.cells[0].text.empty()) throw ParseError(source, rec.line, 1, "empty DMU id");
    std::vector<double> row;
    for (std::size_t c = 1; c < rec.cells.size(); ++c) {
      row.push_back(parse_number(rec.cells[c], rec.line, source));
    }
    dataset.dmu_ids.push_back(rec.cells[0].text);
    dataset.values.push_back(std::move(row));
  }
  return dataset;
}

GoalSet parse_goals(std::string_view text, const VariableSchema& schema,
                    const std::string& source) {
  const auto records = split_records(text, source);
  GoalSet goals;
  if (records.empty()) return goals;
  const Record& header = records.front();
  check_dmu_header(header, source);
  std::vector<std::string> names;
  for (std::size_t c = 1; c < header.cells.size(); ++c) {
    const Cell& cell = header.cells[c];
    if (!schema.index_of(cell.text)) {
      throw ParseError(source, header.line, cell.column,
                       "goal column '" + cell.text + "' is not a data variable");
    }
    names.push_back(cell.text);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    check_width(rec, header.cells.size(), source);
    const std::string& dmu = rec.cells[0].text;
    if (dmu.empty()) throw ParseError(source, rec.line, 1, "empty DMU id");
    if (goals.by_dmu.count(dmu)) throw ParseError(source, rec.line, 1, "duplicate goal row for '" + dmu + "'");
    auto& row = goals.by_dmu[dmu];
    for (std::size_t c = 1; c < rec.cells.size(); ++c) {
      if (rec.cells[c].text.empty()) continue;
      row[names[c - 1]] = parse_number(rec.cells[c], rec.line, source);
    }
  }
  return goals;
}

ValidatedInstance ingest_text(std::string_view data_csv, std::string_view goals_csv) {
  Dataset dataset = parse_dataset(data_csv);
  GoalSet goals = parse_goals(goals_csv, dataset.schema);
  return validate(dataset, goals);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ValidatedInstance ingest(const std::filesystem::path& data_csv,
                         const std::filesystem::path& goals_csv) {
  Dataset dataset = parse_dataset(read_file(data_csv), data_csv.string());
  GoalSet goals = parse_goals(read_file(goals_csv), dataset.schema, goals_csv.string());
  return validate(dataset, goals);
}

}  // namespace goaldea::app
