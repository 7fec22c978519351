#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teamlogic {

enum class Kind : std::uint8_t {
  Top,
  Bot,
  Prop,
  NegProp,
  And,
  Or,    // splitting disjunction
  IDis,  // intuitionistic disjunction
  Dia,
  Box,
  Dep,
};

/// Logics ordered as a lattice: ML <= MDL <= EMDL and ML <= MLIDis.
enum class Fragment : std::uint8_t { ML, MLIDis, MDL, EMDL };

std::string_view fragment_name(Fragment f);

/// Partial order of the fragment lattice.
bool fragment_leq(Fragment lhs, Fragment rhs);

/// Immutable formula in negation normal form.
///
/// A Formula is a cheap handle to a shared node; copies share structure.
/// Equality and ordering are structural. Nodes cache their measures so
/// modal_depth, occ_ivee, symbol_size and classify are O(1).
class Formula {
 public:
  struct Node;

  Formula() = delete;

  Kind kind() const;
  /// Proposition symbol of a Prop/NegProp node; empty otherwise.
  const std::string& name() const;
  /// Operands: binary nodes hold two, modal nodes one, Dep holds its
  /// arguments followed by the target.
  std::span<const Formula> children() const;

  const Formula& left() const;
  const Formula& right() const;
  const Formula& operand() const;
  std::span<const Formula> dep_args() const;
  const Formula& dep_target() const;

  bool is_ml() const;
  bool has_idis() const;
  bool has_dep() const;

  std::size_t hash() const;
  /// Identity of the shared node; stable for as long as any copy lives.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Formula make_node(Kind, std::string, std::vector<Formula>);
  friend std::size_t modal_depth(const Formula&);
  friend std::size_t occ_ivee(const Formula&);
  friend std::size_t symbol_size(const Formula&);
  friend Fragment classify(const Formula&);

  std::shared_ptr<const Node> node_;
};

// Constructors. Proposition names must match [a-z][a-zA-Z0-9_]* and may not
// be the reserved word `dep`.
Formula top();
Formula bot();
Formula prop(std::string name);
Formula neg(std::string name);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula idis(Formula l, Formula r);
Formula dia(Formula f);
Formula box(Formula f);
/// Dependence atom dep(args; target). All members must be ML formulas.
Formula dep(std::vector<Formula> args, Formula target);

/// Right-nested conjunction; the empty conjunction is top().
Formula conj_all(std::span<const Formula> fs);
/// Right-nested splitting disjunction; the empty disjunction is bot().
Formula disj_all(std::span<const Formula> fs);
/// Right-nested intuitionistic disjunction; requires at least one operand.
Formula idis_all(std::span<const Formula> fs);

bool is_identifier(std::string_view name);

std::size_t modal_depth(const Formula& f);
/// Number of intuitionistic-disjunction nodes.
std::size_t occ_ivee(const Formula& f);
/// Node count: each connective, modality, literal, constant and dep header
/// counts once.
std::size_t symbol_size(const Formula& f);

/// Least fragment containing `f`. Throws FragmentError if `f` mixes
/// intuitionistic disjunction and dependence atoms.
Fragment classify(const Formula& f);

/// Negation pushed to the literals (De Morgan and modal duality).
/// Throws FragmentError on non-ML input.
Formula negate_ml(const Formula& f);

/// Proposition symbols occurring in `f`, sorted and without duplicates.
std::vector<std::string> propositions(const Formula& f);

/// Parses the ASCII grammar. Throws ParseError.
Formula parse(std::string_view text);

/// Inverse of parse, parenthesizing only where precedence requires.
std::string render(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace teamlogic

template <>
struct std::hash<teamlogic::Formula> {
  std::size_t operator()(const teamlogic::Formula& f) const { return f.hash(); }
};
