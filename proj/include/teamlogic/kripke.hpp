#pragma once

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teamlogic {

using WorldId = std::size_t;

/// Default limit on the number of worlds for power-set walks.
inline constexpr std::size_t kEnumerationGuard = 20;

/// A set of worlds of one model, stored as a bitset over world indices.
///
/// Teams order canonically: by size, then lexicographically by their sorted
/// member indices.
class Team {
 public:
  Team() = default;
  explicit Team(std::size_t universe);

  static Team full(std::size_t universe);
  static Team singleton(std::size_t universe, WorldId w);
  /// Requires universe <= 64.
  static Team from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const { return universe_; }
  std::size_t size() const;
  bool empty() const;
  bool contains(WorldId w) const;
  void insert(WorldId w);
  void erase(WorldId w);
  std::vector<WorldId> members() const;
  /// Requires universe <= 64.
  std::uint64_t mask() const;

  bool subset_of(const Team& other) const;
  bool intersects(const Team& other) const;
  Team complement() const;

  Team& operator|=(const Team& o);
  Team& operator&=(const Team& o);
  Team& operator-=(const Team& o);
  friend Team operator|(Team a, const Team& b) { return a |= b; }
  friend Team operator&(Team a, const Team& b) { return a &= b; }
  friend Team operator-(Team a, const Team& b) { return a -= b; }

  friend bool operator==(const Team& a, const Team& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const Team& a, const Team& b);

  std::size_t hash() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(static_cast<WorldId>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w))));
        w &= w - 1;
      }
    }
  }

 private:
  void check_same(const Team& o) const;

  std::size_t universe_ = 0;
  boost::container::small_vector<std::uint64_t, 1> words_;
};

/// Finite Kripke model over a finite, ordered proposition signature.
/// Worlds and symbols keep declaration order.
class KripkeModel {
 public:
  KripkeModel() = default;

  std::size_t size() const { return worlds_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& world_name(WorldId w) const { return worlds_.at(w); }
  std::optional<WorldId> find_world(std::string_view name) const;
  /// Throws ModelError for an unknown name.
  WorldId world(std::string_view name) const;

  const std::vector<std::string>& signature() const { return signature_; }
  bool has_prop(std::string_view p) const;
  /// V(p). Throws SignatureError for a symbol outside the signature.
  const Team& valuation(std::string_view p) const;

  std::span<const WorldId> successors(WorldId w) const { return succ_.at(w); }
  std::span<const WorldId> predecessors(WorldId w) const { return pred_.at(w); }
  bool has_edge(WorldId from, WorldId to) const;
  std::size_t edge_count() const;

  Team empty_team() const { return Team(size()); }
  Team full_team() const { return Team::full(size()); }
  /// Team from world names; throws ModelError on unknown or repeated names.
  Team team(std::span<const std::string> names) const;

  /// Team given by the model file's `team` line, if any.
  const std::optional<Team>& default_team() const { return default_team_; }

  /// Free-form identifier used in reports (file stem for loaded models).
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  friend class ModelBuilder;

  std::string name_;
  std::vector<std::string> worlds_;
  std::map<std::string, WorldId, std::less<>> world_index_;
  std::vector<std::string> signature_;
  std::map<std::string, Team, std::less<>> valuation_;
  std::vector<std::vector<WorldId>> succ_;
  std::vector<std::vector<WorldId>> pred_;
  std::optional<Team> default_team_;
};

/// Incremental construction with validation. Worlds and propositions must be
/// declared before they are referenced.
class ModelBuilder {
 public:
  WorldId add_world(std::string name);
  void add_prop(std::string name);
  void add_edge(WorldId from, WorldId to);
  void add_edge(std::string_view from, std::string_view to);
  void set_true(std::string_view prop, WorldId w);
  void set_true(std::string_view prop, std::string_view world);
  void set_default_team(std::span<const std::string> names);
  void set_name(std::string name) { model_.name_ = std::move(name); }

  std::size_t world_count() const { return model_.worlds_.size(); }

  KripkeModel build() &&;

 private:
  KripkeModel model_;
  std::vector<std::pair<WorldId, WorldId>> edges_;
  std::map<std::string, std::vector<WorldId>, std::less<>> truths_;
  std::optional<std::vector<std::string>> team_;
};

/// Parses the line-based model format. Throws ModelError.
KripkeModel load_model(std::string_view text, std::string name = {});
/// Reads and parses a model file; error messages carry the path.
KripkeModel load_model_file(const std::string& path);

/// Canonical text of a model in the file format.
std::string dump_model(const KripkeModel& k);

/// R[T].
Team image(const KripkeModel& k, const Team& t);
/// R^-1[T].
Team preimage(const KripkeModel& k, const Team& t);
/// T[R]S: S is inside R[T] and every member of T has a successor in S.
bool is_successor_team(const KripkeModel& k, const Team& t, const Team& s);

/// Calls `fn` on the image of every choice function picking one successor per
/// member of `t`, stopping early when `fn` returns false. May repeat teams.
/// Returns false if stopped early.
bool for_each_choice_successor(const KripkeModel& k, const Team& t,
                               const std::function<bool(const Team&)>& fn);

/// Deduplicated choice-image teams in canonical order. Empty iff some member
/// of a non-empty `t` is a dead end; {{}} for the empty team.
std::vector<Team> choice_successor_teams(const KripkeModel& k, const Team& t);

/// All 2^|W| teams in canonical order. Throws GuardError beyond `guard` worlds.
std::vector<Team> all_teams(const KripkeModel& k, std::size_t guard = kEnumerationGuard);

/// All subteams of `t` in canonical order.
std::vector<Team> all_subteams(const Team& t);

/// "{a,b}" using world names in index order.
std::string format_team(const KripkeModel& k, const Team& t);
/// Parses "a,b" (empty string gives the empty team).
Team parse_team(const KripkeModel& k, std::string_view csv);

}  // namespace teamlogic

template <>
struct std::hash<teamlogic::Team> {
  std::size_t operator()(const teamlogic::Team& t) const { return t.hash(); }
};
