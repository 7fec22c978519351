#include "teamlogic/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "teamlogic/error.hpp"

namespace teamlogic {

BisimClasses::ClassId BisimClasses::class_of(std::size_t model, WorldId w,
                                             std::size_t level) const {
  if (model >= model_count() || w >= offsets_[model + 1] - offsets_[model])
    throw Error("world outside the refined models");
  return levels_.at(level)[offsets_[model] + w];
}

std::size_t BisimClasses::class_count(std::size_t level) const {
  const auto& l = levels_.at(level);
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

bool BisimClasses::bisimilar(std::size_t m1, WorldId w1, std::size_t m2, WorldId w2,
                             std::size_t level) const {
  return class_of(m1, w1, level) == class_of(m2, w2, level);
}

std::optional<std::size_t> BisimClasses::distinguishing_level(std::size_t m1, WorldId w1,
                                                              std::size_t m2,
                                                              WorldId w2) const {
  for (std::size_t j = 0; j <= k(); ++j)
    if (!bisimilar(m1, w1, m2, w2, j)) return j;
  return std::nullopt;
}

std::vector<BisimClasses::ClassId> BisimClasses::classes_met(std::size_t model, const Team& t,
                                                             std::size_t level) const {
  std::vector<ClassId> out;
  t.for_each([&](WorldId w) { out.push_back(class_of(model, w, level)); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BisimClasses kbisim_classes(std::span<const KripkeModel* const> models, std::size_t k) {
  if (models.empty()) throw Error("kbisim_classes needs at least one model");
  const auto& sig = models[0]->signature();
  std::set<std::string> sig_set(sig.begin(), sig.end());
  for (const KripkeModel* m : models) {
    std::set<std::string> other(m->signature().begin(), m->signature().end());
    if (other != sig_set) throw SignatureError("models do not share a signature");
  }

  BisimClasses out;
  out.offsets_.push_back(0);
  for (const KripkeModel* m : models) out.offsets_.push_back(out.offsets_.back() + m->size());
  const std::size_t total = out.offsets_.back();

  // Global successor lists over the disjoint union.
  std::vector<std::vector<std::size_t>> succ(total);
  std::vector<std::vector<bool>> val(total);
  for (std::size_t i = 0; i < models.size(); ++i) {
    const KripkeModel& m = *models[i];
    for (WorldId w = 0; w < m.size(); ++w) {
      std::size_t g = out.offsets_[i] + w;
      for (WorldId v : m.successors(w)) succ[g].push_back(out.offsets_[i] + v);
      for (const auto& p : sig) val[g].push_back(m.valuation(p).contains(w));
    }
  }

  std::vector<BisimClasses::ClassId> level(total);
  {
    std::map<std::vector<bool>, BisimClasses::ClassId> ids;
    for (std::size_t g = 0; g < total; ++g)
      level[g] = ids.emplace(val[g], static_cast<BisimClasses::ClassId>(ids.size())).first->second;
  }
  out.levels_.push_back(level);

  std::size_t count = out.class_count(0);
  bool stable = false;
  for (std::size_t j = 1; j <= k; ++j) {
    if (stable) {
      out.levels_.push_back(out.levels_.back());
      continue;
    }
    const auto& prev = out.levels_.back();
    using Signature = std::pair<BisimClasses::ClassId, std::vector<BisimClasses::ClassId>>;
    std::map<Signature, BisimClasses::ClassId> ids;
    std::vector<BisimClasses::ClassId> next(total);
    for (std::size_t g = 0; g < total; ++g) {
      std::vector<BisimClasses::ClassId> s;
      for (std::size_t v : succ[g]) s.push_back(prev[v]);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      next[g] = ids.emplace(Signature{prev[g], std::move(s)},
                            static_cast<BisimClasses::ClassId>(ids.size()))
                    .first->second;
    }
    out.levels_.push_back(std::move(next));
    std::size_t c = out.class_count(j);
    // An unchanged class count means the partition did not split further;
    // first-appearance numbering then also reproduces the same ids.
    stable = (c == count);
    count = c;
  }
  return out;
}

BisimClasses kbisim_classes(const KripkeModel& a, const KripkeModel& b, std::size_t k) {
  const KripkeModel* ms[] = {&a, &b};
  return kbisim_classes(ms, k);
}

bool kbisimilar(const KripkeModel& a, WorldId w, const KripkeModel& b, WorldId v, std::size_t k) {
  return kbisim_classes(a, b, k).bisimilar(0, w, 1, v, k);
}

bool team_kbisim(const KripkeModel& a, const Team& t, const KripkeModel& b, const Team& u,
                 std::size_t k) {
  auto classes = kbisim_classes(a, b, k);
  return classes.classes_met(0, t, k) == classes.classes_met(1, u, k);
}

std::optional<std::size_t> team_distinguishing_level(const KripkeModel& a, const Team& t,
                                                     const KripkeModel& b, const Team& u,
                                                     std::size_t k) {
  auto classes = kbisim_classes(a, b, k);
  for (std::size_t j = 0; j <= k; ++j)
    if (classes.classes_met(0, t, j) != classes.classes_met(1, u, j)) return j;
  return std::nullopt;
}

namespace {

void push_unique(std::vector<Formula>& v, const Formula& f) {
  if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
}

}  // namespace

Formula hintikka(const KripkeModel& k, WorldId w, std::size_t depth) {
  if (w >= k.size()) throw Error("world index out of range");
  std::vector<Formula> current;
  current.reserve(k.size());
  for (WorldId v = 0; v < k.size(); ++v) {
    std::vector<Formula> lits;
    for (const auto& p : k.signature()) lits.push_back(k.valuation(p).contains(v) ? prop(p) : neg(p));
    current.push_back(conj_all(lits));
  }
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<Formula> next;
    next.reserve(k.size());
    for (WorldId v = 0; v < k.size(); ++v) {
      std::vector<Formula> succ;
      for (WorldId u : k.successors(v)) push_unique(succ, current[u]);
      std::vector<Formula> rest;
      for (const Formula& s : succ) rest.push_back(dia(s));
      rest.push_back(box(disj_all(succ)));
      next.push_back(conj(current[v], conj_all(rest)));
    }
    current = std::move(next);
  }
  return current[w];
}

Formula define_class(std::span<const std::pair<KripkeModel, Team>> exemplars, std::size_t k) {
  if (exemplars.empty()) throw Error("define_class needs at least one exemplar");
  std::set<std::string> sig(exemplars[0].first.signature().begin(),
                            exemplars[0].first.signature().end());
  std::vector<Formula> blocks;
  for (const auto& [model, team] : exemplars) {
    std::set<std::string> other(model.signature().begin(), model.signature().end());
    if (other != sig) throw SignatureError("exemplars do not share a signature");
    std::vector<Formula> chis;
    team.for_each([&](WorldId w) { push_unique(chis, hintikka(model, w, k)); });
    push_unique(blocks, disj_all(chis));
  }
  return idis_all(blocks);
}

}  // namespace teamlogic
