#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace teamlogic {

/// Maximal teams of K satisfying f, in canonical order. Every satisfying team
/// is a subteam of one of them.
std::vector<Team> maximal_teams(const KripkeModel& k, const Formula& f,
                                std::size_t guard = kEnumerationGuard);

/// Minimal teams of K falsifying f, in canonical order.
std::vector<Team> minimal_falsifying(const KripkeModel& k, const Formula& f,
                                     std::size_t guard = kEnumerationGuard);

/// Compositional bound on the number of maximal satisfying teams in any
/// model: literals and constants 1, & and | multiply, \/ adds, modalities
/// pass through, a dependence atom with n arguments gives 2^(2^n).
/// Saturates at UINT64_MAX.
std::uint64_t dim_upper_estimate(const Formula& f);

/// Whether, on every team of K, f holds iff it holds on all subteams of size
/// at most n.
bool coherence_check(const KripkeModel& k, const Formula& f, std::size_t n,
                     std::size_t guard = kEnumerationGuard);

struct ModelDimensions {
  KripkeModel model;
  std::vector<Team> maximal_family;
  std::vector<Team> minimal_falsifying;
};

/// Exact per-model families plus the syntactic estimate. The `witnessed_*`
/// numbers are lower bounds on the formula's upper and lower dimension
/// taken from the models examined.
struct DimensionReport {
  Formula formula;
  std::vector<ModelDimensions> per_model;
  std::uint64_t estimate = 0;
  std::size_t witnessed_upper = 0;  // max |maximal_family|
  std::size_t witnessed_lower = 0;  // max team size in any minimal_falsifying
  std::size_t occ_ivee = 0;
  std::size_t symbol_size = 0;
};

/// Builds the report, checking the bounds relating the families to each other
/// and to the estimate. Throws std::logic_error if one fails.
DimensionReport dim_report(std::span<const KripkeModel> models, const Formula& f,
                           std::size_t guard = kEnumerationGuard);

/// Deterministic text rendering of a report.
std::string format_report(const DimensionReport& report);

/// Model with one world per valuation of `props` and no edges. World names
/// are "w" followed by one bit per symbol in signature order.
KripkeModel full_valuation_model(const std::vector<std::string>& props);

}  // namespace teamlogic
