#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "goaldea/app/ingest.hpp"
#include "goaldea/app/report.hpp"
#include "goaldea/app/run.hpp"

using namespace goaldea;
using namespace goaldea::app;

namespace {

const std::filesystem::path kData = GOALDEA_DATA_DIR;
const std::filesystem::path kGolden = GOALDEA_GOLDEN_DIR;

const char* kUniversityHeader = "dmu,ni:SIZE,i:ASTAFF,i:EXPEND,o:GRAD,o:RET,o:PROG\n";

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "goaldea_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run_captured(const RunConfig& config) {
  std::ostringstream out, err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config_for(const std::string& fixture, Format format = Format::Table) {
  RunConfig c;
  c.data = kData / fixture / "data.csv";
  c.goals = kData / fixture / "goals.csv";
  c.format = format;
  return c;
}

}  // namespace

TEST(Ingest, UniversityRow) {
  const auto d = parse_dataset(std::string(kUniversityHeader) +
                               "UCA,18605,1548.5,9908074.26,1169,3117,738346\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.schema.size(), 6u);
  EXPECT_FALSE(d.schema[0].is_controllable());
  EXPECT_TRUE(d.schema[0].is_input());
  EXPECT_TRUE(d.schema[3].is_output());
  EXPECT_DOUBLE_EQ(d.values[0][2], 9908074.26);
  GoalSet g;
  g.by_dmu["UCA"] = {{"GRAD", 1.0}, {"RET", 1.0}, {"PROG", 1.0}};
  EXPECT_NO_THROW(validate(d, g));
}

TEST(Ingest, UzaGoalsAreOutputOriented) {
  const auto inst = ingest_text(std::string(kUniversityHeader) +
                                    "UZA,27054,2834.5,22531331,2512,5179,1115003\n"
                                    "USC,20876,1889.375,17513725.15,1731,3211,820284\n",
                                "dmu,GRAD,RET,PROG\nUZA,2600,5300,1130000\n");
  EXPECT_EQ(inst.kind(), ModelKind::OutputOriented);
  EXPECT_EQ(inst.benchmark_dmus(), std::vector<std::string>{"UZA"});
}

TEST(Ingest, UnknownGoalHeaderIsParseError) {
  const auto d = parse_dataset("dmu,i:x,o:y\nA,1,1\n");
  try {
    parse_goals("dmu,y,q\nA,1,1\n", d.schema);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 7u);
  }
}

TEST(Ingest, MalformedCellsCarryPosition) {
  try {
    parse_dataset("dmu,i:x,o:y\nA,1,1\nB,2,abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_dataset("dmu,q:x,o:y\n"), ParseError);
  EXPECT_THROW(parse_dataset("id,i:x,o:y\n"), ParseError);
  EXPECT_THROW(parse_dataset("dmu,i:x,o:y\nA,1\n"), ParseError);
  EXPECT_THROW(parse_dataset("dmu,i:x,o:y\nA,1,\"2\n"), ParseError);
  EXPECT_THROW(parse_dataset(""), ParseError);
}

TEST(Ingest, CrlfQuotesAndBlankGoalCells) {
  const auto inst = ingest_text("dmu,i:x,o:y\r\n\"A\",1,1\r\nB,2,4\r\n\r\n",
                                "dmu,x,y\r\nA,1,\r\n");
  EXPECT_EQ(inst.dataset().dmu_ids, (std::vector<std::string>{"A", "B"}));
  // Only the input carries a goal.
  EXPECT_EQ(inst.kind(), ModelKind::InputOriented);
  EXPECT_THROW(ingest_text("dmu,i:x,o:y\nA,1,1\n", ""), ValidationError);
}

TEST(Render, TableShapeForOneDmuOneAlpha) {
  Report report;
  report.schema = VariableSchema({{"x", VariableKind::Input, Control::Controllable},
                                  {"y", VariableKind::Output, Control::Controllable}});
  report.alphas = {1.0};
  DmuReport d;
  d.dmu = "D";
  d.actual = {3, 2};
  d.goals = {2.5, 4.5};
  models::SweepEntry e;
  e.alpha = 1.0;
  e.result = models::BenchmarkResult{};
  e.result->targets = {4.0 / 3.0, 2.0};
  d.rows.push_back(e);
  report.dmus.push_back(d);
  const auto text = render_report(report, Format::Table);
  EXPECT_NE(text.find("Actual    3.00   2.00\n"), std::string::npos) << text;
  EXPECT_NE(text.find("alpha=1   1.33   2.00\n"), std::string::npos) << text;
  EXPECT_NE(text.find("Goals    2.50*  4.50*\n"), std::string::npos) << text;
  EXPECT_LT(text.find("alpha=1"), text.find("Goals"));
}

TEST(Render, JsonRoundTripAndCsvColumns) {
  const auto inst = ingest(kData / "universities" / "data.csv", kData / "universities" / "goals.csv");
  const auto report = build_report(inst, config_for("universities"));
  const auto json = render_report(report, Format::Json);
  EXPECT_EQ(report_from_json(json), report);
  EXPECT_EQ(render_report(report_from_json(json), Format::Json), json);

  const auto csv = render_report(report, Format::Csv);
  const auto header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header.rfind("dmu,alpha,SIZE,ASTAFF,EXPEND,GRAD,RET,PROG,d_actual", 0), 0u) << header;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6 * 7);
  EXPECT_NE(csv.find("UZA,1,"), std::string::npos);
  EXPECT_EQ(full_precision(0.1), "0.10000000000000001");
}

TEST(Run, AbcdMatchesGolden) {
  const auto c = run_captured(config_for("abcd"));
  EXPECT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(c.out, read_file(kGolden / "abcd_table.txt"));
  EXPECT_NE(c.err.find("warning:"), std::string::npos);
}

TEST(Run, UniversitiesMatchGoldenInEveryFormat) {
  EXPECT_EQ(run_captured(config_for("universities")).out,
            read_file(kGolden / "universities_table.txt"));
  EXPECT_EQ(run_captured(config_for("universities", Format::Csv)).out,
            read_file(kGolden / "universities.csv"));
  EXPECT_EQ(run_captured(config_for("universities", Format::Json)).out,
            read_file(kGolden / "universities.json"));
}

TEST(Run, UniversityReportLayout) {
  const auto text = run_captured(config_for("universities")).out;
  for (const char* id : {"UCA", "UA", "UHU", "UAB", "UZA", "USC"}) {
    EXPECT_NE(text.find(std::string("\n") + id), std::string::npos) << id;
  }
  std::size_t alpha_rows = 0;
  for (std::size_t p = text.find("\nalpha="); p != std::string::npos; p = text.find("\nalpha=", p + 1)) {
    ++alpha_rows;
  }
  EXPECT_EQ(alpha_rows, 42u);
}

TEST(Run, Deterministic) {
  for (auto f : {Format::Table, Format::Csv, Format::Json}) {
    EXPECT_EQ(run_captured(config_for("universities", f)).out,
              run_captured(config_for("universities", f)).out);
  }
}

TEST(Run, EmptyGoalsExitOne) {
  RunConfig c = config_for("abcd");
  c.goals = temp_file("empty_goals.csv", "");
  const auto r = run_captured(c);
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("MissingGoalRow"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Run, InputErrorsExitOne) {
  RunConfig missing = config_for("abcd");
  missing.data = "/nonexistent/data.csv";
  EXPECT_EQ(run_captured(missing).code, kExitInputError);

  RunConfig unknown = config_for("abcd");
  unknown.dmus = {"Z"};
  const auto r = run_captured(unknown);
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("UnknownDmu"), std::string::npos);

  RunConfig bad = config_for("abcd");
  bad.data = temp_file("bad_data.csv", "dmu,i:x,o:y\nA,1,0\nB,2,2\n");
  bad.goals = temp_file("bad_goals.csv", "dmu,y\nA,1\n");
  const auto b = run_captured(bad);
  EXPECT_EQ(b.code, kExitInputError);
  EXPECT_NE(b.err.find("NonPositiveValue"), std::string::npos);
}

TEST(Run, SolverFailureExitTwo) {
  RunConfig c = config_for("abcd");
  c.node_limit = 1;
  const auto r = run_captured(c);
  EXPECT_EQ(r.code, kExitSolverError);
  EXPECT_NE(r.err.find("node limit"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("failed"), std::string::npos);
}

TEST(Run, DmuFilterAndAlphaOrder) {
  RunConfig c = config_for("universities");
  c.dmus = {"USC"};
  c.alphas = AlphaGrid({0.0, 1.0});
  const auto text = run_captured(c).out;
  EXPECT_EQ(text.find("UZA"), std::string::npos);
  EXPECT_LT(text.find("alpha=0 "), text.find("alpha=1 "));
  EXPECT_LT(text.find("alpha=1 "), text.find("Goals"));
}

TEST(Run, RescaledObjectivesAgree) {
  const auto inst = ingest(kData / "universities" / "data.csv", kData / "universities" / "goals.csv");
  RunConfig plain = config_for("universities");
  RunConfig scaled = plain;
  scaled.rescale = true;
  const auto a = build_report(inst, plain);
  const auto b = build_report(inst, scaled);
  ASSERT_EQ(a.dmus.size(), b.dmus.size());
  for (std::size_t i = 0; i < a.dmus.size(); ++i) {
    for (std::size_t r = 0; r < a.dmus[i].rows.size(); ++r) {
      EXPECT_NEAR(a.dmus[i].rows[r].result->objective, b.dmus[i].rows[r].result->objective, 1e-7);
    }
  }
}

TEST(Run, WritesOutFile) {
  RunConfig c = config_for("abcd");
  c.out = std::filesystem::temp_directory_path() / "goaldea_cli_test" / "out.txt";
  std::filesystem::create_directories(c.out->parent_path());
  const auto r = run_captured(c);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(*c.out), read_file(kGolden / "abcd_table.txt"));
}
