#pragma once

#include <cstddef>
#include <vector>

#include "goaldea/dea.hpp"
#include "goaldea/domain.hpp"
#include "goaldea/models.hpp"

// Brute-force reference solver for small instances. Every combination of a
// reference face F of E and a set of fixed variables allowed positive slack
// is tested for a supporting hyperplane; the scalarized objective is then
// minimized face by face. Independent of the branch-and-bound path.
namespace goaldea::oracle {

inline constexpr std::size_t kMaxReferenceUnits = 10;
inline constexpr std::size_t kMaxCandidateBits = 16;

struct FaceCandidate {
  std::vector<std::size_t> face;          ///< dataset indices, a non-empty subset of E
  std::vector<std::size_t> free_inputs;   ///< fixed inputs allowed positive slack
  std::vector<std::size_t> free_outputs;  ///< fixed outputs allowed positive slack

  friend bool operator==(const FaceCandidate&, const FaceCandidate&) = default;
};

/// Feasibility of a hyperplane (v, u, u_0) with v, u >= 1 on discretionary
/// variables and >= 0 on fixed ones, vanishing on the free slack sets,
/// passing through every DMU of the face and weakly above the rest of E.
bool is_supported_face(const dea::Technology& technology, const FaceCandidate& candidate,
                       const std::vector<Role>& roles);
bool is_supported_face(const dea::Technology& technology, const FaceCandidate& candidate,
                       ModelKind kind);

/// Supported candidates not contained in any other supported candidate.
/// Throws EnumerationTooLarge above the size caps.
std::vector<FaceCandidate> maximal_supported_faces(const dea::Technology& technology,
                                                   const std::vector<Role>& roles);

struct OracleResult {
  models::BenchmarkResult result;
  FaceCandidate face;  ///< candidate holding the reported optimum
};

/// Uses precomputed faces (from maximal_supported_faces with roles_for(kind)).
OracleResult oracle_solve(ModelKind kind, const dea::Technology& technology, std::string_view dmu,
                          const GoalVector& goals, double alpha,
                          const std::vector<FaceCandidate>& faces);

models::BenchmarkResult oracle_solve(ModelKind kind, const dea::Technology& technology,
                                     std::string_view dmu, const GoalVector& goals, double alpha);

}  // namespace goaldea::oracle
