#pragma once

// Seeded random formulas and models, plus exhaustive small-model families.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace gen {

using teamlogic::Formula;
using teamlogic::KripkeModel;

enum class Logic { ML, MLIDis, MDL, EMDL };

class FormulaGen {
 public:
  FormulaGen(std::uint64_t seed, std::vector<std::string> props)
      : rng_(seed), props_(std::move(props)) {}

  // Random formula of the given logic with modal depth at most `depth` and
  // roughly `budget` connectives. Dependence atoms get at most `max_args`
  // arguments.
  Formula operator()(Logic logic, int depth, int budget, std::size_t max_args = 2) {
    logic_ = logic;
    max_args_ = max_args;
    return node(depth, budget);
  }

  Formula ml(int depth, int budget) { return (*this)(Logic::ML, depth, budget); }

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Formula literal() {
    int r = pick(20);
    if (r == 0) return teamlogic::top();
    if (r == 1) return teamlogic::bot();
    const auto& p = props_[static_cast<std::size_t>(pick(static_cast<int>(props_.size())))];
    return r % 2 ? teamlogic::prop(p) : teamlogic::neg(p);
  }

  Formula dep_atom(int depth) {
    std::size_t n = static_cast<std::size_t>(pick(static_cast<int>(max_args_) + 1));
    auto member = [&] {
      if (logic_ == Logic::EMDL && pick(2) == 0) return ml_node(depth, 2);
      return literal_prop();
    };
    std::vector<Formula> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(member());
    return teamlogic::dep(std::move(args), member());
  }

  Formula literal_prop() {
    const auto& p = props_[static_cast<std::size_t>(pick(static_cast<int>(props_.size())))];
    return pick(3) == 0 ? teamlogic::neg(p) : teamlogic::prop(p);
  }

  Formula ml_node(int depth, int budget) {
    Logic saved = logic_;
    logic_ = Logic::ML;
    Formula f = node(depth, budget);
    logic_ = saved;
    return f;
  }

  Formula node(int depth, int budget) {
    bool deps = logic_ == Logic::MDL || logic_ == Logic::EMDL;
    if (budget <= 0 || pick(5) == 0) {
      if (deps && pick(3) == 0) return dep_atom(depth);
      return literal();
    }
    int choices = logic_ == Logic::MLIDis ? 5 : 4;
    int c = pick(choices);
    if ((c == 2 || c == 3) && depth == 0) c = pick(2);
    int rest = budget - 1;
    switch (c) {
      case 0: {
        int l = pick(rest + 1);
        return teamlogic::conj(node(depth, l), node(depth, rest - l));
      }
      case 1: {
        int l = pick(rest + 1);
        return teamlogic::disj(node(depth, l), node(depth, rest - l));
      }
      case 2: return teamlogic::dia(node(depth - 1, rest));
      case 3: return teamlogic::box(node(depth - 1, rest));
      default: {
        int l = pick(rest + 1);
        return teamlogic::idis(node(depth, l), node(depth, rest - l));
      }
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> props_;
  Logic logic_ = Logic::ML;
  std::size_t max_args_ = 2;
};

// Model with worlds w0..w{n-1}: bit (i*n + j) of `rel` is the edge wi -> wj,
// bit (p*n + i) of `val` puts wi in V(props[p]).
inline KripkeModel model_from_bits(std::size_t n, const std::vector<std::string>& props,
                                   std::uint64_t rel, std::uint64_t val) {
  teamlogic::ModelBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_world("w" + std::to_string(i));
  for (const auto& p : props) b.add_prop(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel >> (i * n + j) & 1) b.add_edge(i, j);
  for (std::size_t p = 0; p < props.size(); ++p)
    for (std::size_t i = 0; i < n; ++i)
      if (val >> (p * n + i) & 1) b.set_true(props[p], i);
  return std::move(b).build();
}

inline KripkeModel random_model(std::mt19937_64& rng, std::size_t n,
                                const std::vector<std::string>& props, double edge_p = 0.35) {
  std::bernoulli_distribution edge(edge_p), truth(0.5);
  std::uint64_t rel = 0, val = 0;
  for (std::size_t i = 0; i < n * n; ++i)
    if (edge(rng)) rel |= std::uint64_t{1} << i;
  for (std::size_t i = 0; i < n * props.size(); ++i)
    if (truth(rng)) val |= std::uint64_t{1} << i;
  return model_from_bits(n, props, rel, val);
}

// Every model with exactly n worlds over `props`, one per isomorphism class.
// Kept to n <= 3: the representative is the least encoding over all world
// permutations.
inline std::vector<KripkeModel> models_up_to_iso(std::size_t n, const std::vector<std::string>& props) {
  const std::size_t rel_bits = n * n, val_bits = n * props.size();
  std::vector<std::size_t> perm(n);
  std::vector<std::vector<std::size_t>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  auto permute = [&](std::uint64_t code, const std::vector<std::size_t>& pi) {
    std::uint64_t rel = code & ((std::uint64_t{1} << rel_bits) - 1), val = code >> rel_bits;
    std::uint64_t r2 = 0, v2 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel >> (i * n + j) & 1) r2 |= std::uint64_t{1} << (pi[i] * n + pi[j]);
    for (std::size_t p = 0; p < props.size(); ++p)
      for (std::size_t i = 0; i < n; ++i)
        if (val >> (p * n + i) & 1) v2 |= std::uint64_t{1} << (p * n + pi[i]);
    return r2 | v2 << rel_bits;
  };

  std::vector<KripkeModel> out;
  const std::uint64_t codes = std::uint64_t{1} << (rel_bits + val_bits);
  for (std::uint64_t code = 0; code < codes; ++code) {
    bool canonical = true;
    for (const auto& pi : perms)
      if (permute(code, pi) < code) {
        canonical = false;
        break;
      }
    if (canonical)
      out.push_back(model_from_bits(n, props, code & ((std::uint64_t{1} << rel_bits) - 1),
                                    code >> rel_bits));
  }
  return out;
}

// All models with 1..max_worlds worlds up to isomorphism.
inline std::vector<KripkeModel> small_models(std::size_t max_worlds,
                                             const std::vector<std::string>& props) {
  std::vector<KripkeModel> out;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    auto part = models_up_to_iso(n, props);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace gen
