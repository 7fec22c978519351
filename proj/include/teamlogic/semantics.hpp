#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace teamlogic {

struct EvalOptions {
  /// Use flatness and downward closure to short-cut evaluation: ML
  /// subformulas are decided pointwise, a splitting disjunction with a flat
  /// side gives the flat side every world it can take, and a diamond over a
  /// flat operand only asks for one good successor per world. Results are
  /// unchanged; turning this off evaluates the team clauses literally.
  bool flat_shortcuts = true;
};

/// Team-semantics evaluator bound to one model.
///
/// Holds a memo table keyed by (subformula node, team) for its own lifetime,
/// so evaluating many teams or related formulas against the same model
/// shares work. Not thread-safe; use one evaluator per thread.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& model, EvalOptions options = {});

  /// K,T |= f. Throws SignatureError when f mentions a symbol outside the
  /// model signature.
  bool eval(const Team& team, const Formula& f);

  /// Worlds where the ML formula `f` holds under pointwise Kripke semantics.
  /// Throws FragmentError for non-ML input.
  const Team& point_extension(const Formula& f);

  /// K,w |= f for an ML formula.
  bool eval_point(WorldId w, const Formula& f);

  const KripkeModel& model() const { return *model_; }

 private:
  struct Key {
    const void* node;
    Team team;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) * 31 + k.team.hash();
    }
  };

  void admit(const Formula& root);
  bool eval_node(const Team& team, const Formula& f);
  bool eval_or(const Team& team, const Formula& f);
  bool eval_dia(const Team& team, const Formula& f);
  bool eval_dep(const Team& team, const Formula& f);
  const Team& points(const Formula& f);

  const KripkeModel* model_;
  EvalOptions options_;
  // Keeps every admitted formula alive so node addresses stay unique keys.
  std::vector<Formula> roots_;
  std::unordered_set<const void*> admitted_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<const void*, Team> points_;
};

bool eval(const KripkeModel& k, const Team& t, const Formula& f, EvalOptions options = {});

/// Pointwise Kripke semantics for ML formulas; throws FragmentError otherwise.
bool eval_point(const KripkeModel& k, WorldId w, const Formula& f);

/// Worlds satisfying an ML formula pointwise.
Team point_extension(const KripkeModel& k, const Formula& f);

/// The family of teams of a model satisfying a formula.
struct Extension {
  KripkeModel model;
  /// Satisfying teams in canonical order.
  std::vector<Team> satisfying;

  bool contains(const Team& t) const;
};

/// Exact extension by enumerating every team. Throws GuardError beyond
/// `guard` worlds.
Extension extension(const KripkeModel& k, const Formula& f, std::size_t guard = kEnumerationGuard,
                    EvalOptions options = {});

/// Throws SignatureError if `f` uses a symbol the model does not declare.
void check_signature(const KripkeModel& k, const Formula& f);

}  // namespace teamlogic
