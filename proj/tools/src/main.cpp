#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goaldea/app/run.hpp"

namespace {

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad alpha '" + item + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace goaldea::app;
  CLI::App cli{"Goal-adjusted closest targets on the VRS efficient frontier"};
  RunConfig config;
  std::string data, goals, alphas, format = "table", out;
  cli.add_option("--data", data, "data CSV (dmu,<i|o|ni|no>:<name>,...)")->required();
  cli.add_option("--goals", goals, "goals CSV (dmu,<name>,...)")->required();
  cli.add_option("--alphas", alphas, "comma-separated alpha grid (default 1,0.8,0.6,0.5,0.4,0.2,0)");
  cli.add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cli.add_option("--out", out, "output file (default stdout)");
  cli.add_option("--dmu", config.dmus, "restrict to this DMU (repeatable)");
  cli.add_flag("--rescale", config.rescale, "divide each column by its maximum before solving");
  cli.add_option("--node-limit", config.node_limit, "branch-and-bound node cap")
      ->check(CLI::PositiveNumber);
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  config.data = data;
  config.goals = goals;
  config.format = *format_from_string(format);
  if (!out.empty()) config.out = out;
  if (!alphas.empty()) {
    try {
      config.alphas = goaldea::AlphaGrid(parse_alphas(alphas));
    } catch (const std::exception& e) {
      std::cerr << "error: --alphas: " << e.what() << "\n";
      return kExitInputError;
    }
  }
  return run(config, std::cout, std::cerr);
}
