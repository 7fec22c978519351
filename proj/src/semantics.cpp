#include "teamlogic/semantics.hpp"

#include <algorithm>
#include <map>

#include "teamlogic/error.hpp"

namespace teamlogic {

Evaluator::Evaluator(const KripkeModel& model, EvalOptions options)
    : model_(&model), options_(options) {}

void check_signature(const KripkeModel& k, const Formula& f) {
  for (const auto& p : propositions(f)) {
    if (!k.has_prop(p))
      throw SignatureError("unknown proposition '" + p + "' (not in the model signature)");
  }
}

void Evaluator::admit(const Formula& root) {
  if (admitted_.contains(root.id())) return;
  check_signature(*model_, root);
  admitted_.insert(root.id());
  roots_.push_back(root);
}

bool Evaluator::eval(const Team& team, const Formula& f) {
  if (team.universe() != model_->size()) throw Error("team does not belong to the model");
  admit(f);
  return eval_node(team, f);
}

const Team& Evaluator::point_extension(const Formula& f) {
  if (!f.is_ml()) throw FragmentError("pointwise evaluation needs an ML formula, got " + render(f));
  admit(f);
  return points(f);
}

bool Evaluator::eval_point(WorldId w, const Formula& f) {
  if (w >= model_->size()) throw Error("world index out of range");
  return point_extension(f).contains(w);
}

const Team& Evaluator::points(const Formula& f) {
  if (auto it = points_.find(f.id()); it != points_.end()) return it->second;
  const KripkeModel& k = *model_;
  Team out = k.empty_team();
  switch (f.kind()) {
    case Kind::Top: out = k.full_team(); break;
    case Kind::Bot: break;
    case Kind::Prop: out = k.valuation(f.name()); break;
    case Kind::NegProp: out = k.valuation(f.name()).complement(); break;
    case Kind::And: out = points(f.left()) & points(f.right()); break;
    case Kind::Or: out = points(f.left()) | points(f.right()); break;
    case Kind::Dia: out = preimage(k, points(f.operand())); break;
    case Kind::Box: {
      // w |= []g iff no successor of w lies outside the extension of g.
      out = preimage(k, points(f.operand()).complement()).complement();
      break;
    }
    case Kind::IDis:
    case Kind::Dep:
      throw FragmentError("pointwise evaluation needs an ML formula");
  }
  return points_.emplace(f.id(), std::move(out)).first->second;
}

bool Evaluator::eval_node(const Team& team, const Formula& f) {
  const KripkeModel& k = *model_;
  switch (f.kind()) {
    case Kind::Top: return true;
    case Kind::Bot: return team.empty();
    case Kind::Prop: return team.subset_of(k.valuation(f.name()));
    case Kind::NegProp: return !team.intersects(k.valuation(f.name()));
    default: break;
  }
  if (options_.flat_shortcuts && f.is_ml()) return team.subset_of(points(f));

  Key key{f.id(), team};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = false;
  switch (f.kind()) {
    case Kind::And: result = eval_node(team, f.left()) && eval_node(team, f.right()); break;
    case Kind::IDis: result = eval_node(team, f.left()) || eval_node(team, f.right()); break;
    case Kind::Or: result = eval_or(team, f); break;
    case Kind::Dia: result = eval_dia(team, f); break;
    case Kind::Box: result = eval_node(image(k, team), f.operand()); break;
    case Kind::Dep: result = eval_dep(team, f); break;
    default: break;
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool Evaluator::eval_or(const Team& team, const Formula& f) {
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (options_.flat_shortcuts) {
    // By downward closure the other side only has to cover what the flat
    // side cannot take.
    if (l.is_ml()) return eval_node(team - points(l), r);
    if (r.is_ml()) return eval_node(team - points(r), l);
  }
  // Splits T = T1 u T2 with T1, T2 disjoint suffice by downward closure.
  std::vector<WorldId> members = team.members();
  if (members.size() >= 63) throw GuardError("splitting disjunction over a team that is too large");
  const std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    Team t1(team.universe());
    for (std::size_t i = 0; i < members.size(); ++i)
      if (m >> i & 1) t1.insert(members[i]);
    if (eval_node(t1, l) && eval_node(team - t1, r)) return true;
  }
  return false;
}

bool Evaluator::eval_dia(const Team& team, const Formula& f) {
  const KripkeModel& k = *model_;
  const Formula& g = f.operand();
  if (options_.flat_shortcuts && g.is_ml()) {
    const Team& good = points(g);
    bool ok = true;
    team.for_each([&](WorldId w) {
      auto succ = k.successors(w);
      ok = ok && std::any_of(succ.begin(), succ.end(), [&](WorldId v) { return good.contains(v); });
    });
    return ok;
  }
  // Minimal successor teams suffice: the operand is downward closed.
  return !for_each_choice_successor(k, team, [&](const Team& s) { return !eval_node(s, g); });
}

bool Evaluator::eval_dep(const Team& team, const Formula& f) {
  auto args = f.dep_args();
  std::vector<const Team*> arg_sets;
  arg_sets.reserve(args.size());
  for (const Formula& a : args) arg_sets.push_back(&points(a));
  const Team& target = points(f.dep_target());

  std::map<std::vector<bool>, bool> seen;
  bool ok = true;
  team.for_each([&](WorldId w) {
    if (!ok) return;
    std::vector<bool> key(arg_sets.size());
    for (std::size_t i = 0; i < arg_sets.size(); ++i) key[i] = arg_sets[i]->contains(w);
    bool value = target.contains(w);
    auto [it, inserted] = seen.emplace(std::move(key), value);
    if (!inserted && it->second != value) ok = false;
  });
  return ok;
}

bool eval(const KripkeModel& k, const Team& t, const Formula& f, EvalOptions options) {
  return Evaluator(k, options).eval(t, f);
}

bool eval_point(const KripkeModel& k, WorldId w, const Formula& f) {
  return Evaluator(k).eval_point(w, f);
}

Team point_extension(const KripkeModel& k, const Formula& f) {
  return Evaluator(k).point_extension(f);
}

bool Extension::contains(const Team& t) const {
  return std::binary_search(satisfying.begin(), satisfying.end(), t);
}

Extension extension(const KripkeModel& k, const Formula& f, std::size_t guard,
                    EvalOptions options) {
  Extension out{k, {}};
  Evaluator ev(k, options);
  for (const Team& t : all_teams(k, guard))
    if (ev.eval(t, f)) out.satisfying.push_back(t);
  return out;
}

}  // namespace teamlogic
