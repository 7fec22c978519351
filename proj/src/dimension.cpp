#include "teamlogic/dimension.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "teamlogic/error.hpp"
#include "teamlogic/semantics.hpp"

namespace teamlogic {

namespace {

// Truth of f on every team, indexed by world mask. Masks are visited in
// increasing order, so every strict subteam is decided before its supersets;
// a team with a falsifying one-smaller subteam is falsifying by downward
// closure and is not evaluated.
std::vector<char> sweep(const KripkeModel& k, const Formula& f, std::size_t guard) {
  if (k.size() > guard)
    throw GuardError("team enumeration is limited to " + std::to_string(guard) +
                     " worlds (model has " + std::to_string(k.size()) + ")");
  const std::size_t n = k.size();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<char> sat(count, 0);
  Evaluator ev(k);
  for (std::uint64_t m = 0; m < count; ++m) {
    bool pruned = false;
    for (std::uint64_t rest = m; rest && !pruned; rest &= rest - 1)
      pruned = !sat[m & ~(rest & (~rest + 1))];
    sat[m] = !pruned && ev.eval(Team::from_mask(n, m), f);
  }
  return sat;
}

std::vector<Team> to_teams(const KripkeModel& k, const std::vector<std::uint64_t>& masks) {
  std::vector<Team> out;
  for (auto m : masks) out.push_back(Team::from_mask(k.size(), m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Team> maximal_from(const KripkeModel& k, const std::vector<char>& sat) {
  const std::uint64_t full = (std::uint64_t{1} << k.size()) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (!sat[m]) continue;
    bool maximal = true;
    for (std::uint64_t rest = full & ~m; rest && maximal; rest &= rest - 1)
      maximal = !sat[m | (rest & (~rest + 1))];
    if (maximal) out.push_back(m);
  }
  return to_teams(k, out);
}

std::vector<Team> minimal_from(const KripkeModel& k, const std::vector<char>& sat) {
  const std::uint64_t full = (std::uint64_t{1} << k.size()) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (sat[m]) continue;
    bool minimal = true;
    for (std::uint64_t rest = m; rest && minimal; rest &= rest - 1)
      minimal = sat[m & ~(rest & (~rest + 1))];
    if (minimal) out.push_back(m);
  }
  return to_teams(k, out);
}

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

}  // namespace

std::vector<Team> maximal_teams(const KripkeModel& k, const Formula& f, std::size_t guard) {
  return maximal_from(k, sweep(k, f, guard));
}

std::vector<Team> minimal_falsifying(const KripkeModel& k, const Formula& f, std::size_t guard) {
  return minimal_from(k, sweep(k, f, guard));
}

std::uint64_t dim_upper_estimate(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bot:
    case Kind::Prop:
    case Kind::NegProp:
      return 1;
    case Kind::And:
    case Kind::Or:
      return sat_mul(dim_upper_estimate(f.left()), dim_upper_estimate(f.right()));
    case Kind::IDis:
      return sat_add(dim_upper_estimate(f.left()), dim_upper_estimate(f.right()));
    case Kind::Dia:
    case Kind::Box:
      return dim_upper_estimate(f.operand());
    case Kind::Dep: {
      const std::size_t n = f.dep_args().size();
      if (n >= 6) return kSaturated;  // 2^(2^6) overflows
      return std::uint64_t{1} << (std::uint64_t{1} << n);
    }
  }
  return kSaturated;
}

bool coherence_check(const KripkeModel& k, const Formula& f, std::size_t n, std::size_t guard) {
  if (k.size() > guard)
    throw GuardError("team enumeration is limited to " + std::to_string(guard) + " worlds");
  const std::size_t worlds = k.size();
  const std::uint64_t count = std::uint64_t{1} << worlds;
  Evaluator ev(k);
  std::vector<char> sat(count);
  for (std::uint64_t m = 0; m < count; ++m) sat[m] = ev.eval(Team::from_mask(worlds, m), f);
  // small_ok[T]: every subteam of T with at most n members satisfies f.
  std::vector<char> small_ok(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) <= n) {
      bool ok = sat[m];
      for (std::uint64_t rest = m; rest && ok; rest &= rest - 1)
        ok = small_ok[m & ~(rest & (~rest + 1))];
      small_ok[m] = ok;
    } else {
      bool ok = true;
      for (std::uint64_t rest = m; rest && ok; rest &= rest - 1)
        ok = small_ok[m & ~(rest & (~rest + 1))];
      small_ok[m] = ok;
    }
    if (small_ok[m] != sat[m]) return false;
  }
  return true;
}

DimensionReport dim_report(std::span<const KripkeModel> models, const Formula& f,
                           std::size_t guard) {
  DimensionReport r{f, {}, dim_upper_estimate(f), 0, 0, occ_ivee(f), symbol_size(f)};
  for (const KripkeModel& k : models) {
    auto sat = sweep(k, f, guard);
    ModelDimensions md{k, maximal_from(k, sat), minimal_from(k, sat)};
    std::size_t largest_minimal = 0;
    for (const Team& t : md.minimal_falsifying) largest_minimal = std::max(largest_minimal, t.size());
    if (largest_minimal > md.maximal_family.size())
      throw std::logic_error("minimal falsifying team larger than the maximal family in model " +
                             k.name());
    r.witnessed_upper = std::max(r.witnessed_upper, md.maximal_family.size());
    r.witnessed_lower = std::max(r.witnessed_lower, largest_minimal);
    r.per_model.push_back(std::move(md));
  }
  if (r.witnessed_upper > r.estimate || r.witnessed_lower > r.estimate)
    throw std::logic_error("witnessed dimension exceeds the compositional estimate");
  return r;
}

std::string format_report(const DimensionReport& r) {
  std::ostringstream os;
  os << "formula " << render(r.formula) << '\n';
  for (std::size_t i = 0; i < r.per_model.size(); ++i) {
    const auto& md = r.per_model[i];
    const std::string name = md.model.name().empty() ? "model" + std::to_string(i + 1) : md.model.name();
    os << "model " << name << '\n';
    os << "  |M|=" << md.maximal_family.size() << '\n';
    for (const Team& t : md.maximal_family) os << "  M " << format_team(md.model, t) << '\n';
    os << "  |N|=" << md.minimal_falsifying.size() << '\n';
    for (const Team& t : md.minimal_falsifying) os << "  N " << format_team(md.model, t) << '\n';
  }
  os << "witnessed Dim>=" << r.witnessed_upper << " dim>=" << r.witnessed_lower << '\n';
  os << "Dim<=" << r.estimate << " occ_ivee=" << r.occ_ivee << " size=" << r.symbol_size << '\n';
  return os.str();
}

KripkeModel full_valuation_model(const std::vector<std::string>& props) {
  if (props.size() > 20) throw GuardError("full valuation model limited to 20 symbols");
  ModelBuilder b;
  for (const auto& p : props) b.add_prop(p);
  const std::size_t n = props.size();
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::string name = "w";
    for (std::size_t i = 0; i < n; ++i) name += (v >> (n - 1 - i) & 1) ? '1' : '0';
    WorldId w = b.add_world(name);
    for (std::size_t i = 0; i < n; ++i)
      if (v >> (n - 1 - i) & 1) b.set_true(props[i], w);
  }
  b.set_name("FULL" + std::to_string(n));
  return std::move(b).build();
}

}  // namespace teamlogic
