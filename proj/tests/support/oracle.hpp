#pragma once

// Brute-force reference semantics over small models (at most 16 worlds).
// Written straight from the satisfaction clauses, sharing nothing with the
// library evaluator beyond the model and formula types: splitting
// disjunction tries every ordered cover T1 u T2 = T, the diamond tries every
// successor team S with T[R]S, and teams are plain bitmasks.

#include <cstdint>
#include <string>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"

namespace oracle {

using Mask = std::uint32_t;

class Oracle {
 public:
  explicit Oracle(const teamlogic::KripkeModel& k) : n_(k.size()) {
    if (n_ > 16) throw std::invalid_argument("oracle models are limited to 16 worlds");
    succ_.assign(n_, 0);
    for (std::size_t w = 0; w < n_; ++w)
      for (std::size_t v = 0; v < n_; ++v)
        if (k.has_edge(w, v)) succ_[w] |= Mask{1} << v;
    for (const auto& p : k.signature()) {
      Mask m = 0;
      for (std::size_t w = 0; w < n_; ++w)
        if (k.valuation(p).contains(w)) m |= Mask{1} << w;
      val_.emplace_back(p, m);
    }
  }

  Mask full() const { return n_ == 0 ? 0 : (Mask{1} << n_) - 1; }
  std::size_t size() const { return n_; }

  Mask image(Mask t) const {
    Mask out = 0;
    for (std::size_t w = 0; w < n_; ++w)
      if (t >> w & 1) out |= succ_[w];
    return out;
  }

  // T[R]S: every member of T has a successor in S and every member of S has
  // a predecessor in T.
  bool successor_team(Mask t, Mask s) const {
    for (std::size_t w = 0; w < n_; ++w)
      if ((t >> w & 1) && !(succ_[w] & s)) return false;
    return (s & ~image(t)) == 0;
  }

  Mask valuation(const std::string& p) const {
    for (const auto& [name, m] : val_)
      if (name == p) return m;
    throw std::invalid_argument("unknown symbol " + p);
  }

  // Classical Kripke semantics.
  bool point(std::size_t w, const teamlogic::Formula& f) const {
    using teamlogic::Kind;
    switch (f.kind()) {
      case Kind::Top: return true;
      case Kind::Bot: return false;
      case Kind::Prop: return valuation(f.name()) >> w & 1;
      case Kind::NegProp: return !(valuation(f.name()) >> w & 1);
      case Kind::And: return point(w, f.left()) && point(w, f.right());
      case Kind::Or: return point(w, f.left()) || point(w, f.right());
      case Kind::Dia:
        for (std::size_t v = 0; v < n_; ++v)
          if ((succ_[w] >> v & 1) && point(v, f.operand())) return true;
        return false;
      case Kind::Box:
        for (std::size_t v = 0; v < n_; ++v)
          if ((succ_[w] >> v & 1) && !point(v, f.operand())) return false;
        return true;
      default: throw std::invalid_argument("pointwise semantics is for ML formulas");
    }
  }

  bool team(Mask t, const teamlogic::Formula& f) const {
    // Formulas handed to one oracle must outlive it; node addresses key the memo.
    auto key = std::pair{f.id(), t};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = team_uncached(t, f);
    memo_.emplace(key, r);
    return r;
  }

 private:
  bool team_uncached(Mask t, const teamlogic::Formula& f) const {
    using teamlogic::Kind;
    switch (f.kind()) {
      case Kind::Top: return true;
      case Kind::Bot: return t == 0;
      case Kind::Prop: return (t & ~valuation(f.name())) == 0;
      case Kind::NegProp: return (t & valuation(f.name())) == 0;
      case Kind::And: return team(t, f.left()) && team(t, f.right());
      case Kind::IDis: return team(t, f.left()) || team(t, f.right());
      case Kind::Or:
        for (Mask a = t;; a = (a - 1) & t) {
          for (Mask b = t;; b = (b - 1) & t) {
            if ((a | b) == t && team(a, f.left()) && team(b, f.right())) return true;
            if (b == 0) break;
          }
          if (a == 0) break;
        }
        return false;
      case Kind::Box: return team(image(t), f.operand());
      case Kind::Dia: {
        Mask img = image(t);
        for (Mask s = img;; s = (s - 1) & img) {
          if (successor_team(t, s) && team(s, f.operand())) return true;
          if (s == 0) break;
        }
        return false;
      }
      case Kind::Dep: {
        auto args = f.dep_args();
        for (std::size_t w = 0; w < n_; ++w) {
          if (!(t >> w & 1)) continue;
          for (std::size_t v = 0; v < n_; ++v) {
            if (!(t >> v & 1)) continue;
            bool agree = true;
            for (const auto& a : args) agree = agree && team(Mask{1} << w, a) == team(Mask{1} << v, a);
            if (agree && team(Mask{1} << w, f.dep_target()) != team(Mask{1} << v, f.dep_target()))
              return false;
          }
        }
        return true;
      }
    }
    return false;
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<const void*, Mask>& k) const {
      return std::hash<const void*>{}(k.first) * 31 + k.second;
    }
  };

  std::size_t n_;
  std::vector<std::pair<std::string, Mask>> val_;
  std::vector<Mask> succ_;
  mutable std::unordered_map<std::pair<const void*, Mask>, bool, KeyHash> memo_;
};

inline teamlogic::Team to_team(const teamlogic::KripkeModel& k, Mask m) {
  return teamlogic::Team::from_mask(k.size(), m);
}

}  // namespace oracle
