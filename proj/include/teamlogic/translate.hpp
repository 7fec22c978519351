#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace teamlogic {

/// Largest |Psi| accepted by mlidis_to_emdl.
inline constexpr std::size_t kMaxPsiSize = 4;
/// Largest number of dependence-atom arguments expanded by emdl_to_mlidis.
inline constexpr std::size_t kMaxDepArgs = 3;

/// An ordered set of pairwise distinct ML formulas.
class PsiContext {
 public:
  /// Throws FragmentError for non-ML members and Error for duplicates or
  /// more than 31 members.
  explicit PsiContext(std::vector<Formula> members);

  std::size_t size() const { return members_.size(); }
  const std::vector<Formula>& members() const { return members_; }
  const Formula& operator[](std::size_t i) const { return members_[i]; }

 private:
  std::vector<Formula> members_;
};

/// A subset of context indices: bit i set means member i holds.
struct PsiType {
  std::uint32_t bits = 0;

  bool has(std::size_t i) const { return bits >> i & 1; }
  auto operator<=>(const PsiType&) const = default;
};

using TypeSet = std::set<PsiType>;

/// Members of the context true at w.
PsiType type_of(const KripkeModel& k, WorldId w, const PsiContext& ctx);
/// Types of the members of T.
TypeSet tset(const KripkeModel& k, const Team& t, const PsiContext& ctx);

/// Conjunction of the members in `gamma` and the negations of the rest;
/// holds at a world exactly when its type is `gamma`.
Formula theta_gamma(PsiType gamma, const PsiContext& ctx);

/// Conjunction of constancy atoms dep(; psi) over the context.
Formula gamma_formula(const PsiContext& ctx);

/// F for k = 0, otherwise gamma_k(k-1) | gamma. Holds in a team iff the team
/// realizes at most k types.
Formula gamma_k(const PsiContext& ctx, std::size_t k);

/// Holds in a team iff `types` is not contained in the team's type set.
/// Throws Error for an empty type set.
Formula xi(const TypeSet& types, const PsiContext& ctx);

/// Psi with f equivalent to the intuitionistic disjunction of Psi, obtained
/// by distributing \/ outward. Structurally deduplicated, first occurrence
/// first. Throws FragmentError for formulas with dependence atoms.
std::vector<Formula> to_normal_form(const Formula& f);

/// The type sets (as bitmasks over the 2^m types of an m-member context)
/// that have no member common to all their types and are minimal with that
/// property. Requires m <= kMaxPsiSize.
std::vector<std::uint32_t> minimal_separating_type_sets(std::size_t m);

/// Equivalent EMDL formula for an ML(\/) formula: the conjunction of xi over
/// the minimal separating type sets of its normal form. Throws GuardError
/// when the normal form has more than kMaxPsiSize members.
Formula mlidis_to_emdl(const Formula& f);

/// Equivalent ML(\/) formula for an EMDL formula: every dependence atom is
/// replaced by the intuitionistic disjunction, over all determination
/// functions, of the splitting disjunction of type formulas paired with the
/// determined target literal. Throws GuardError beyond kMaxDepArgs arguments.
Formula emdl_to_mlidis(const Formula& f);

}  // namespace teamlogic
