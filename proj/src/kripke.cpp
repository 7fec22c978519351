#include "teamlogic/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "teamlogic/error.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

// ---------------------------------------------------------------- Team

Team::Team(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

Team Team::full(std::size_t universe) {
  Team t(universe);
  for (std::size_t i = 0; i < t.words_.size(); ++i) t.words_[i] = ~std::uint64_t{0};
  if (universe % 64) t.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return t;
}

Team Team::singleton(std::size_t universe, WorldId w) {
  Team t(universe);
  t.insert(w);
  return t;
}

Team Team::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw Error("Team::from_mask needs at most 64 worlds");
  Team t(universe);
  if (universe > 0) t.words_[0] = mask & Team::full(universe).words_[0];
  return t;
}

std::size_t Team::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool Team::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Team::contains(WorldId w) const {
  return w < universe_ && (words_[w / 64] >> (w % 64) & 1);
}

void Team::insert(WorldId w) {
  if (w >= universe_) throw Error("world index out of range");
  words_[w / 64] |= std::uint64_t{1} << (w % 64);
}

void Team::erase(WorldId w) {
  if (w < universe_) words_[w / 64] &= ~(std::uint64_t{1} << (w % 64));
}

std::vector<WorldId> Team::members() const {
  std::vector<WorldId> out;
  for_each([&](WorldId w) { out.push_back(w); });
  return out;
}

std::uint64_t Team::mask() const {
  if (universe_ > 64) throw Error("Team::mask needs at most 64 worlds");
  return words_.empty() ? 0 : words_[0];
}

void Team::check_same(const Team& o) const {
  if (universe_ != o.universe_) throw Error("teams of different models combined");
}

bool Team::subset_of(const Team& o) const {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool Team::intersects(const Team& o) const {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

Team Team::complement() const { return Team::full(universe_) - *this; }

Team& Team::operator|=(const Team& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Team& Team::operator&=(const Team& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Team& Team::operator-=(const Team& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const Team& a, const Team& b) {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  // Same size: the team whose first differing member is smaller comes first.
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff) {
      std::uint64_t low = diff & (~diff + 1);
      return (a.words_[i] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t Team::hash() const {
  std::size_t h = universe_;
  for (auto w : words_) h = h * 0x100000001b3ULL ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6));
  return h;
}

// ---------------------------------------------------------------- KripkeModel

std::optional<WorldId> KripkeModel::find_world(std::string_view name) const {
  auto it = world_index_.find(name);
  if (it == world_index_.end()) return std::nullopt;
  return it->second;
}

WorldId KripkeModel::world(std::string_view name) const {
  auto w = find_world(name);
  if (!w) throw ModelError(0, "unknown world '" + std::string(name) + "'");
  return *w;
}

bool KripkeModel::has_prop(std::string_view p) const { return valuation_.contains(p); }

const Team& KripkeModel::valuation(std::string_view p) const {
  auto it = valuation_.find(p);
  if (it == valuation_.end())
    throw SignatureError("proposition '" + std::string(p) + "' is not in the model signature");
  return it->second;
}

bool KripkeModel::has_edge(WorldId from, WorldId to) const {
  const auto& s = succ_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::size_t KripkeModel::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

Team KripkeModel::team(std::span<const std::string> names) const {
  Team t = empty_team();
  for (const auto& n : names) {
    WorldId w = world(n);
    if (t.contains(w)) throw ModelError(0, "world '" + n + "' listed twice in team");
    t.insert(w);
  }
  return t;
}

// ---------------------------------------------------------------- ModelBuilder

WorldId ModelBuilder::add_world(std::string name) {
  if (name.empty()) throw ModelError(0, "empty world name");
  if (model_.world_index_.contains(name))
    throw ModelError(0, "duplicate world '" + name + "'");
  WorldId id = model_.worlds_.size();
  model_.world_index_.emplace(name, id);
  model_.worlds_.push_back(std::move(name));
  return id;
}

void ModelBuilder::add_prop(std::string name) {
  if (!is_identifier(name)) throw ModelError(0, "invalid proposition symbol '" + name + "'");
  if (truths_.contains(name)) throw ModelError(0, "duplicate proposition '" + name + "'");
  model_.signature_.push_back(name);
  truths_.emplace(std::move(name), std::vector<WorldId>{});
}

void ModelBuilder::add_edge(WorldId from, WorldId to) {
  if (from >= world_count() || to >= world_count())
    throw ModelError(0, "edge references an unknown world");
  edges_.emplace_back(from, to);
}

void ModelBuilder::add_edge(std::string_view from, std::string_view to) {
  add_edge(model_.world(from), model_.world(to));
}

void ModelBuilder::set_true(std::string_view prop, WorldId w) {
  auto it = truths_.find(prop);
  if (it == truths_.end())
    throw ModelError(0, "undeclared proposition '" + std::string(prop) + "'");
  if (w >= world_count()) throw ModelError(0, "valuation references an unknown world");
  it->second.push_back(w);
}

void ModelBuilder::set_true(std::string_view prop, std::string_view world) {
  set_true(prop, model_.world(world));
}

void ModelBuilder::set_default_team(std::span<const std::string> names) {
  team_.emplace(names.begin(), names.end());
}

KripkeModel ModelBuilder::build() && {
  KripkeModel& m = model_;
  std::size_t n = m.worlds_.size();
  m.succ_.assign(n, {});
  m.pred_.assign(n, {});
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    m.succ_[u].push_back(v);
    m.pred_[v].push_back(u);
  }
  for (auto& p : m.pred_) std::sort(p.begin(), p.end());
  for (const auto& sym : m.signature_) {
    Team t(n);
    for (WorldId w : truths_.at(sym)) t.insert(w);
    m.valuation_.emplace(sym, t);
  }
  if (team_) m.default_team_ = m.team(*team_);
  return std::move(m);
}

// ---------------------------------------------------------------- file format

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

KripkeModel load_model(std::string_view text, std::string name) {
  ModelBuilder b;
  b.set_name(std::move(name));
  bool have_worlds = false;
  bool have_team = false;
  std::set<std::string> props;
  std::set<std::string> valued;

  struct Pending {
    std::size_t line;
    std::vector<std::string> words;
  };
  std::vector<Pending> pending;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    try {
      if (key == "worlds") {
        if (words.size() < 2) throw ModelError(0, "'worlds' needs at least one world");
        for (std::size_t i = 1; i < words.size(); ++i) b.add_world(words[i]);
        have_worlds = true;
      } else if (key == "signature") {
        for (std::size_t i = 1; i < words.size(); ++i) {
          if (props.insert(words[i]).second) b.add_prop(words[i]);
        }
      } else if (key == "prop") {
        if (words.size() < 2) throw ModelError(0, "'prop' needs a proposition symbol");
        if (!valued.insert(words[1]).second)
          throw ModelError(0, "duplicate proposition '" + words[1] + "'");
        if (props.insert(words[1]).second) b.add_prop(words[1]);
        pending.push_back({lineno, std::move(words)});
      } else if (key == "edge") {
        if (words.size() != 3) throw ModelError(0, "'edge' needs exactly two worlds");
        pending.push_back({lineno, std::move(words)});
      } else if (key == "team") {
        if (have_team) throw ModelError(0, "more than one 'team' line");
        have_team = true;
        pending.push_back({lineno, std::move(words)});
      } else {
        throw ModelError(0, "unknown directive '" + key + "'");
      }
    } catch (const ModelError& e) {
      throw ModelError(lineno, e.detail());
    }
    if (end == text.size()) break;
  }
  if (!have_worlds) throw ModelError(0, "missing 'worlds' line");

  // World references are resolved after all worlds are declared.
  for (const auto& p : pending) {
    try {
      const auto& w = p.words;
      if (w[0] == "prop") {
        for (std::size_t i = 2; i < w.size(); ++i) b.set_true(w[1], w[i]);
      } else if (w[0] == "edge") {
        b.add_edge(w[1], w[2]);
      } else {
        std::vector<std::string> names(w.begin() + 1, w.end());
        std::set<std::string> uniq(names.begin(), names.end());
        if (uniq.size() != names.size()) throw ModelError(0, "world listed twice in team");
        b.set_default_team(names);
      }
    } catch (const ModelError& e) {
      throw ModelError(p.line, e.detail());
    }
  }
  try {
    return std::move(b).build();
  } catch (const ModelError& e) {
    throw ModelError(0, e.detail());
  }
}

KripkeModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(0, "cannot open model file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  try {
    return load_model(ss.str(), stem);
  } catch (const ModelError& e) {
    throw ModelError(e.line(), e.detail(), path);
  }
}

std::string dump_model(const KripkeModel& k) {
  std::ostringstream os;
  os << "worlds";
  for (const auto& w : k.worlds()) os << ' ' << w;
  os << '\n';
  for (const auto& p : k.signature()) {
    os << "prop " << p;
    k.valuation(p).for_each([&](WorldId w) { os << ' ' << k.world_name(w); });
    os << '\n';
  }
  for (WorldId u = 0; u < k.size(); ++u)
    for (WorldId v : k.successors(u)) os << "edge " << k.world_name(u) << ' ' << k.world_name(v) << '\n';
  if (k.default_team()) {
    os << "team";
    k.default_team()->for_each([&](WorldId w) { os << ' ' << k.world_name(w); });
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- relations

Team image(const KripkeModel& k, const Team& t) {
  Team out = k.empty_team();
  t.for_each([&](WorldId w) {
    for (WorldId v : k.successors(w)) out.insert(v);
  });
  return out;
}

Team preimage(const KripkeModel& k, const Team& t) {
  Team out = k.empty_team();
  t.for_each([&](WorldId v) {
    for (WorldId w : k.predecessors(v)) out.insert(w);
  });
  return out;
}

bool is_successor_team(const KripkeModel& k, const Team& t, const Team& s) {
  return s.subset_of(image(k, t)) && t.subset_of(preimage(k, s));
}

bool for_each_choice_successor(const KripkeModel& k, const Team& t,
                               const std::function<bool(const Team&)>& fn) {
  std::vector<WorldId> members = t.members();
  for (WorldId w : members)
    if (k.successors(w).empty()) return true;
  std::vector<std::size_t> pick(members.size(), 0);
  while (true) {
    Team s = k.empty_team();
    for (std::size_t i = 0; i < members.size(); ++i) s.insert(k.successors(members[i])[pick[i]]);
    if (!fn(s)) return false;
    // Odometer increment.
    std::size_t i = 0;
    for (; i < members.size(); ++i) {
      if (++pick[i] < k.successors(members[i]).size()) break;
      pick[i] = 0;
    }
    if (i == members.size()) return true;
  }
}

std::vector<Team> choice_successor_teams(const KripkeModel& k, const Team& t) {
  std::set<Team> seen;
  for_each_choice_successor(k, t, [&](const Team& s) {
    seen.insert(s);
    return true;
  });
  return {seen.begin(), seen.end()};
}

std::vector<Team> all_subteams(const Team& t) {
  std::vector<WorldId> members = t.members();
  if (members.size() >= 63) throw GuardError("too many subteams to enumerate");
  std::vector<Team> out;
  out.reserve(std::size_t{1} << members.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << members.size()); ++m) {
    Team s(t.universe());
    for (std::size_t i = 0; i < members.size(); ++i)
      if (m >> i & 1) s.insert(members[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Team> all_teams(const KripkeModel& k, std::size_t guard) {
  if (k.size() > guard)
    throw GuardError("team enumeration is limited to " + std::to_string(guard) +
                     " worlds (model has " + std::to_string(k.size()) + ")");
  return all_subteams(k.full_team());
}

std::string format_team(const KripkeModel& k, const Team& t) {
  std::string out = "{";
  bool first = true;
  t.for_each([&](WorldId w) {
    if (!first) out += ',';
    first = false;
    out += k.world_name(w);
  });
  return out + "}";
}

Team parse_team(const KripkeModel& k, std::string_view csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string name(csv.substr(start, comma - start));
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (!name.empty()) names.push_back(std::move(name));
    start = comma + 1;
  }
  return k.team(names);
}

}  // namespace teamlogic
