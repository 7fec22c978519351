#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace teamlogic {

/// k-bisimulation classes for the worlds of several models over a shared
/// signature, at every level 0..k. Class ids are comparable across models.
class BisimClasses {
 public:
  using ClassId = std::uint32_t;

  std::size_t k() const { return levels_.size() - 1; }
  std::size_t model_count() const { return offsets_.size() - 1; }

  ClassId class_of(std::size_t model, WorldId w, std::size_t level) const;
  std::size_t class_count(std::size_t level) const;

  bool bisimilar(std::size_t m1, WorldId w1, std::size_t m2, WorldId w2, std::size_t level) const;
  /// Least level at which the two worlds fall apart, if any level <= k does.
  std::optional<std::size_t> distinguishing_level(std::size_t m1, WorldId w1, std::size_t m2,
                                                  WorldId w2) const;

  /// Sorted, deduplicated classes met by a team at the given level.
  std::vector<ClassId> classes_met(std::size_t model, const Team& t, std::size_t level) const;

 private:
  friend BisimClasses kbisim_classes(std::span<const KripkeModel* const>, std::size_t);

  std::vector<std::size_t> offsets_;          // world index offset of each model
  std::vector<std::vector<ClassId>> levels_;  // levels_[j][global world]
};

/// Partition refinement on the disjoint union of `models`. Level 0 groups
/// worlds by valuation; level j+1 by level-j class together with the set of
/// successor level-j classes. Throws SignatureError unless all models share
/// the same set of proposition symbols.
BisimClasses kbisim_classes(std::span<const KripkeModel* const> models, std::size_t k);
BisimClasses kbisim_classes(const KripkeModel& a, const KripkeModel& b, std::size_t k);

/// K,w and K',w' are k-bisimilar.
bool kbisimilar(const KripkeModel& a, WorldId w, const KripkeModel& b, WorldId v, std::size_t k);

/// Both teams meet exactly the same k-bisimulation classes.
bool team_kbisim(const KripkeModel& a, const Team& t, const KripkeModel& b, const Team& u,
                 std::size_t k);

/// Least level n <= k with the teams not team n-bisimilar, if any.
std::optional<std::size_t> team_distinguishing_level(const KripkeModel& a, const Team& t,
                                                     const KripkeModel& b, const Team& u,
                                                     std::size_t k);

/// k-th Hintikka formula of (K,w). Level 0 is the literal conjunction over
/// the signature; level j+1 conjoins a diamond per distinct successor formula
/// and a box over their disjunction.
Formula hintikka(const KripkeModel& k, WorldId w, std::size_t depth);

/// ML(\/) formula defining the closure of the exemplars under subteams and
/// team k-bisimulation: the intuitionistic disjunction over exemplars of the
/// splitting disjunction of their members' Hintikka formulas. An empty
/// exemplar team contributes F. Throws SignatureError on mixed signatures
/// and Error on an empty exemplar list.
Formula define_class(std::span<const std::pair<KripkeModel, Team>> exemplars, std::size_t k);

}  // namespace teamlogic
