#include "teamlogic/formula.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

#include "teamlogic/error.hpp"

namespace teamlogic {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t md = 0;
  std::size_t occ = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
  bool has_idis = false;
  bool has_dep = false;
  // Some dependence atom has a member that is not a literal.
  bool extended_dep = false;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_literal(const Formula& f) {
  return f.kind() == Kind::Prop || f.kind() == Kind::NegProp;
}

}  // namespace

Formula make_node(Kind kind, std::string name, std::vector<Formula> children) {
  auto node = std::make_shared<Formula::Node>();
  node->kind = kind;
  node->hash = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(kind));
  for (const Formula& c : children) {
    const auto& cn = *c.node_;
    node->md = std::max(node->md, cn.md);
    node->occ += cn.occ;
    node->size += cn.size;
    node->hash = mix(node->hash, cn.hash);
    node->has_idis |= cn.has_idis;
    node->has_dep |= cn.has_dep;
    node->extended_dep |= cn.extended_dep;
  }
  switch (kind) {
    case Kind::Dia:
    case Kind::Box:
      node->md += 1;
      break;
    case Kind::IDis:
      node->occ += 1;
      node->has_idis = true;
      break;
    case Kind::Dep:
      node->has_dep = true;
      node->extended_dep =
          !std::all_of(children.begin(), children.end(), is_literal);
      break;
    default:
      break;
  }
  node->name = std::move(name);
  node->children = std::move(children);
  return Formula(std::move(node));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Formula> Formula::children() const { return node_->children; }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const Formula& Formula::operand() const { return node_->children.at(0); }

std::span<const Formula> Formula::dep_args() const {
  assert(kind() == Kind::Dep);
  return std::span<const Formula>(node_->children).first(node_->children.size() - 1);
}

const Formula& Formula::dep_target() const {
  assert(kind() == Kind::Dep);
  return node_->children.back();
}

bool Formula::is_ml() const { return !node_->has_idis && !node_->has_dep; }
bool Formula::has_idis() const { return node_->has_idis; }
bool Formula::has_dep() const { return node_->has_dep; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size ||
      x.name != y.name || x.children.size() != y.children.size())
    return false;
  return std::equal(x.children.begin(), x.children.end(), y.children.begin());
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_identifier(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z' || name == "dep") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

Formula top() {
  static const Formula t = make_node(Kind::Top, {}, {});
  return t;
}

Formula bot() {
  static const Formula b = make_node(Kind::Bot, {}, {});
  return b;
}

Formula prop(std::string name) {
  if (!is_identifier(name)) throw Error("invalid proposition symbol '" + name + "'");
  return make_node(Kind::Prop, std::move(name), {});
}

Formula neg(std::string name) {
  if (!is_identifier(name)) throw Error("invalid proposition symbol '" + name + "'");
  return make_node(Kind::NegProp, std::move(name), {});
}

Formula conj(Formula l, Formula r) {
  return make_node(Kind::And, {}, {std::move(l), std::move(r)});
}

Formula disj(Formula l, Formula r) {
  return make_node(Kind::Or, {}, {std::move(l), std::move(r)});
}

Formula idis(Formula l, Formula r) {
  return make_node(Kind::IDis, {}, {std::move(l), std::move(r)});
}

Formula dia(Formula f) { return make_node(Kind::Dia, {}, {std::move(f)}); }
Formula box(Formula f) { return make_node(Kind::Box, {}, {std::move(f)}); }

Formula dep(std::vector<Formula> args, Formula target) {
  args.push_back(std::move(target));
  for (const Formula& m : args) {
    if (!m.is_ml())
      throw FragmentError("dependence atom members must be ML formulas, got " + render(m));
  }
  return make_node(Kind::Dep, {}, std::move(args));
}

namespace {

template <typename Join>
Formula fold_right(std::span<const Formula> fs, Join join) {
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = join(fs[i], std::move(acc));
  return acc;
}

}  // namespace

Formula conj_all(std::span<const Formula> fs) {
  return fs.empty() ? top() : fold_right(fs, conj);
}

Formula disj_all(std::span<const Formula> fs) {
  return fs.empty() ? bot() : fold_right(fs, disj);
}

Formula idis_all(std::span<const Formula> fs) {
  if (fs.empty()) throw Error("intuitionistic disjunction needs at least one operand");
  return fold_right(fs, idis);
}

std::size_t modal_depth(const Formula& f) { return f.node_->md; }
std::size_t occ_ivee(const Formula& f) { return f.node_->occ; }
std::size_t symbol_size(const Formula& f) { return f.node_->size; }

std::string_view fragment_name(Fragment f) {
  switch (f) {
    case Fragment::ML: return "ML";
    case Fragment::MLIDis: return "MLIDis";
    case Fragment::MDL: return "MDL";
    case Fragment::EMDL: return "EMDL";
  }
  return "?";
}

bool fragment_leq(Fragment lhs, Fragment rhs) {
  if (lhs == rhs || lhs == Fragment::ML) return true;
  return lhs == Fragment::MDL && rhs == Fragment::EMDL;
}

Fragment classify(const Formula& f) {
  if (f.has_idis() && f.has_dep())
    throw FragmentError("formula mixes intuitionistic disjunction and dependence atoms");
  if (f.has_idis()) return Fragment::MLIDis;
  if (!f.has_dep()) return Fragment::ML;
  return f.node_->extended_dep ? Fragment::EMDL : Fragment::MDL;
}

Formula negate_ml(const Formula& f) {
  if (!f.is_ml()) throw FragmentError("negate_ml requires an ML formula, got " + render(f));
  switch (f.kind()) {
    case Kind::Top: return bot();
    case Kind::Bot: return top();
    case Kind::Prop: return neg(f.name());
    case Kind::NegProp: return prop(f.name());
    case Kind::And: return disj(negate_ml(f.left()), negate_ml(f.right()));
    case Kind::Or: return conj(negate_ml(f.left()), negate_ml(f.right()));
    case Kind::Dia: return box(negate_ml(f.operand()));
    case Kind::Box: return dia(negate_ml(f.operand()));
    default: break;
  }
  throw FragmentError("negate_ml: unexpected node");
}

std::vector<std::string> propositions(const Formula& f) {
  std::set<std::string> names;
  std::vector<Formula> stack{f};
  std::set<const void*> seen;
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.id()).second) continue;
    if (g.kind() == Kind::Prop || g.kind() == Kind::NegProp) names.insert(g.name());
    for (const Formula& c : g.children()) stack.push_back(c);
  }
  return {names.begin(), names.end()};
}

}  // namespace teamlogic
