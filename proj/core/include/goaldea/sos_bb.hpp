#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "goaldea/simplex.hpp"

namespace goaldea::sos {

inline constexpr double kComplementarityTolerance = 1e-7;

/// Pairs of nonnegative variables of which at most one may be nonzero.
struct PairList {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  void add(std::size_t a, std::size_t b) { pairs.emplace_back(a, b); }
};

struct Options {
  std::size_t node_limit = 1'000'000;
  /// A complementarity-feasible point of the host LP used as the starting
  /// incumbent. Ties keep it.
  std::optional<std::vector<double>> incumbent;
};

struct BranchSolution {
  lp::Solution lp;                       ///< the incumbent leaf's LP solution
  std::vector<double> complementarity;   ///< min(value_a, value_b) per pair
  std::size_t nodes = 0;                 ///< LP relaxations solved
  std::vector<std::size_t> fixed_to_zero;  ///< variables fixed at the incumbent's node
};

/// Throws std::invalid_argument when a pair member may be negative or a pair
/// repeats a variable.
void check_pairs(const lp::LinearProgram& problem, const PairList& pairs);

/// Depth-first branch and bound over SOS1 pairs. The first violated pair in
/// list order is branched on, the child fixing the second member to zero is
/// explored first, and the first incumbent is kept on objective ties. The
/// incumbent is finally re-solved with the smaller member of each pair fixed
/// at zero, so complementarity holds exactly.
/// Throws NodeLimitExceeded.
BranchSolution solve(const lp::LinearProgram& problem, const PairList& pairs,
                     const Options& options = {});

}  // namespace goaldea::sos
