// Acceptance suite: one PASS/FAIL line per criterion, each with its own time
// limit. Exit status is non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "teamlogic/bisim.hpp"
#include "teamlogic/dimension.hpp"
#include "teamlogic/error.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/translate.hpp"

using namespace teamlogic;

namespace {

const std::vector<std::string> kPQ = {"p", "q"};
constexpr std::size_t kFourWorldSample = 5000;

struct Outcome {
  bool ok = true;
  std::string detail;
};

KripkeModel fixture(const std::string& name) {
  return load_model_file(std::string(TEAMLOGIC_ROOT) + "/fixtures/" + name + ".kripke");
}

// All models with at most 3 worlds over {p,q} up to isomorphism, then a
// seeded sample of 4-world models.
const std::vector<KripkeModel>& family_up_to_4() {
  static const std::vector<KripkeModel> models = [] {
    auto out = gen::small_models(3, kPQ);
    std::mt19937_64 rng(2024);
    const double densities[] = {0.15, 0.3, 0.5, 0.7};
    for (std::size_t i = 0; i < kFourWorldSample; ++i)
      out.push_back(gen::random_model(rng, 4, kPQ, densities[i % 4]));
    return out;
  }();
  return models;
}

const std::vector<KripkeModel>& family_up_to_3() {
  static const std::vector<KripkeModel> models = gen::small_models(3, kPQ);
  return models;
}

// Criterion 1: flatness of ML.
Outcome flatness() {
  gen::FormulaGen g(101, kPQ);
  std::vector<Formula> formulas;
  for (int i = 0; i < 200; ++i) formulas.push_back(g.ml(3, 10));
  std::size_t checks = 0, violations = 0;
  for (const auto& k : family_up_to_4()) {
    Evaluator ev(k, EvalOptions{false});
    auto teams = all_teams(k);
    for (const auto& f : formulas) {
      const Team& points = ev.point_extension(f);
      for (const Team& t : teams) {
        ++checks;
        if (ev.eval(t, f) != t.subset_of(points)) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " team checks over " +
                               std::to_string(family_up_to_4().size()) + " models, " +
                               std::to_string(violations) + " violations"};
}

// Criterion 2: downward closure of ML(\/), MDL and EMDL.
Outcome downward_closure() {
  gen::FormulaGen g(102, kPQ);
  std::vector<Formula> formulas;
  const gen::Logic logics[] = {gen::Logic::MLIDis, gen::Logic::MDL, gen::Logic::EMDL};
  for (int i = 0; i < 200; ++i) formulas.push_back(g(logics[i % 3], 2, 9));
  std::size_t checks = 0, violations = 0;
  for (const auto& k : family_up_to_4()) {
    Evaluator ev(k, EvalOptions{false});
    const std::uint64_t count = std::uint64_t{1} << k.size();
    std::vector<char> sat(count);
    for (const auto& f : formulas) {
      for (std::uint64_t m = 0; m < count; ++m) sat[m] = ev.eval(Team::from_mask(k.size(), m), f);
      for (std::uint64_t m = 0; m < count; ++m) {
        if (!sat[m]) continue;
        for (std::uint64_t s = m;; s = (s - 1) & m) {
          ++checks;
          if (!sat[s]) ++violations;
          if (s == 0) break;
        }
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " subteam checks, " + std::to_string(violations) +
                               " violations"};
}

// Criterion 3: refinement verdicts against Hintikka formulas.
Outcome bisim_vs_hintikka() {
  std::mt19937_64 rng(103);
  std::vector<KripkeModel> models;
  for (int i = 0; i < 20; ++i) models.push_back(gen::random_model(rng, 1 + static_cast<std::size_t>(i % 4), kPQ, 0.4));
  std::vector<const KripkeModel*> ptrs;
  for (const auto& m : models) ptrs.push_back(&m);
  auto classes = kbisim_classes(ptrs, 3);
  std::size_t pairs = 0, bisimilar = 0, mismatches = 0;
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::size_t i = 0; i < models.size(); ++i)
      for (WorldId w = 0; w < models[i].size(); ++w) {
        Formula chi = hintikka(models[i], w, k);
        for (std::size_t j = 0; j < models.size(); ++j)
          for (WorldId v = 0; v < models[j].size(); ++v) {
            bool by_classes = classes.bisimilar(i, w, j, v, k);
            ++pairs;
            bisimilar += by_classes;
            if (by_classes != eval_point(models[j], v, chi)) ++mismatches;
          }
      }
  return {mismatches == 0, std::to_string(pairs) + " pointed pairs (" + std::to_string(bisimilar) +
                               " bisimilar), " + std::to_string(mismatches) + " mismatches"};
}

// Class-set key of every team of every model at one level.
struct TeamKeys {
  std::vector<std::vector<int>> key;  // key[model][team mask]
};

TeamKeys team_keys(const BisimClasses& c, const std::vector<KripkeModel>& models, std::size_t level) {
  std::map<std::vector<BisimClasses::ClassId>, int> ids;
  TeamKeys out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const std::uint64_t count = std::uint64_t{1} << models[i].size();
    std::vector<int> row(count);
    for (std::uint64_t m = 0; m < count; ++m) {
      auto met = c.classes_met(i, Team::from_mask(models[i].size(), m), level);
      row[m] = ids.emplace(std::move(met), static_cast<int>(ids.size())).first->second;
    }
    out.key.push_back(std::move(row));
  }
  return out;
}

// Criterion 4: ML(\/) truth is constant on team k-bisimulation classes.
// Teams are grouped by the set of k-classes they meet over the whole family,
// so agreement within each group covers every bisimilar pair.
Outcome bisim_invariance() {
  const auto& models = family_up_to_3();
  std::vector<const KripkeModel*> ptrs;
  for (const auto& m : models) ptrs.push_back(&m);
  auto classes = kbisim_classes(ptrs, 3);
  std::vector<TeamKeys> keys;
  for (std::size_t k = 0; k <= 3; ++k) keys.push_back(team_keys(classes, models, k));

  gen::FormulaGen g(104, kPQ);
  std::size_t pairs = 0, violations = 0;
  for (int i = 0; i < 100; ++i) {
    Formula f = g(gen::Logic::MLIDis, 1 + i % 3, 9);
    std::size_t k = modal_depth(f);
    std::map<int, std::array<std::size_t, 2>> groups;  // key -> (false count, true count)
    for (std::size_t m = 0; m < models.size(); ++m) {
      Evaluator ev(models[m]);
      for (std::uint64_t t = 0; t < keys[k].key[m].size(); ++t)
        ++groups[keys[k].key[m][t]][ev.eval(Team::from_mask(models[m].size(), t), f)];
    }
    for (const auto& [key, counts] : groups) {
      std::size_t n = counts[0] + counts[1];
      pairs += n * n;
      violations += 2 * counts[0] * counts[1];
    }
  }
  return {violations == 0, std::to_string(pairs) + " bisimilar team pairs over " +
                               std::to_string(models.size()) + " models, " + std::to_string(violations) +
                               " disagreements"};
}

// Criterion 5: the four clauses relating T ~(k+1) T' to successors, images
// and covers, checked group-wise as in criterion 4 in both directions.
// Successor teams are compared in their strongest form: the k-keys of all
// successor teams agree.
Outcome team_bisim_lemma() {
  const auto& models = family_up_to_3();
  std::vector<const KripkeModel*> ptrs;
  for (const auto& m : models) ptrs.push_back(&m);
  auto classes = kbisim_classes(ptrs, 3);
  std::vector<TeamKeys> keys;
  for (std::size_t k = 0; k <= 3; ++k) keys.push_back(team_keys(classes, models, k));

  struct Profile {
    std::set<int> successors;
    int image = 0;
    std::set<std::pair<int, int>> covers;
    auto operator<=>(const Profile&) const = default;
  };
  std::size_t teams = 0, failures = 0;
  for (std::size_t k = 0; k <= 2; ++k) {
    std::map<int, Profile> seen;
    std::map<Profile, int> back;
    for (std::size_t m = 0; m < models.size(); ++m) {
      const auto& km = models[m];
      const auto& lo = keys[k].key[m];
      const auto& hi = keys[k + 1].key[m];
      for (std::uint64_t t = 0; t < lo.size(); ++t) {
        Team tt = Team::from_mask(km.size(), t);
        Profile p;
        std::uint64_t img = image(km, tt).mask();
        for (std::uint64_t s = img;; s = (s - 1) & img) {
          if (is_successor_team(km, tt, Team::from_mask(km.size(), s))) p.successors.insert(lo[s]);
          if (s == 0) break;
        }
        p.image = lo[img];
        for (std::uint64_t a = t;; a = (a - 1) & t) {
          for (std::uint64_t b = t;; b = (b - 1) & t) {
            if ((a | b) == t) p.covers.emplace(hi[a], hi[b]);
            if (b == 0) break;
          }
          if (a == 0) break;
        }
        ++teams;
        auto [it, fresh] = seen.try_emplace(hi[t], p);
        if (!fresh && !(it->second == p)) ++failures;
        auto [jt, new_profile] = back.try_emplace(p, hi[t]);
        if (!new_profile && jt->second != hi[t]) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(teams) + " (team, k) cases over " + std::to_string(models.size()) +
                             " models, " + std::to_string(failures) + " counterexamples"};
}

// Criterion 6: round trip through both translations.
Outcome round_trip() {
  const auto& models = family_up_to_3();
  std::size_t checks = 0, mismatches = 0;
  std::string first_bad;
  for (const char* text : corpus::kMdl) {
    Formula f = parse(text);
    if (classify(f) != Fragment::MDL) return {false, std::string("not MDL: ") + text};
    Formula g = emdl_to_mlidis(f);
    Formula h = mlidis_to_emdl(g);
    for (const auto& k : models) {
      Evaluator ev(k);
      for (const Team& t : all_teams(k)) {
        bool a = ev.eval(t, f), b = ev.eval(t, g), c = ev.eval(t, h);
        ++checks;
        if (a != b || a != c) {
          ++mismatches;
          if (first_bad.empty()) first_bad = text;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(corpus::kMdl.size()) + " formulas, " + std::to_string(checks) +
                               " team checks, " + std::to_string(mismatches) + " mismatches" +
                               (first_bad.empty() ? "" : " (first: " + first_bad + ")")};
}

// Criterion 7: dependence atoms reach 2^(2^n) maximal teams.
Outcome dep_dimension() {
  std::ostringstream os;
  bool ok = true;
  struct Case {
    const char* formula;
    std::vector<std::string> props;
    std::size_t expected;
  };
  for (const Case& c : {Case{"dep(p; q)", {"p", "q"}, 4}, Case{"dep(p1, p2; q)", {"p1", "p2", "q"}, 16}}) {
    auto k = full_valuation_model(c.props);
    Formula f = parse(c.formula);
    auto max = maximal_teams(k, f);
    auto min = minimal_falsifying(k, f);
    bool sizes_two = !min.empty();
    for (const Team& t : min) sizes_two = sizes_two && t.size() == 2;
    bool good = max.size() == c.expected && dim_upper_estimate(f) == c.expected && sizes_two;
    ok = ok && good;
    os << c.formula << ": |M|=" << max.size() << " estimate=" << dim_upper_estimate(f)
       << " |N|=" << min.size() << (sizes_two ? " all size 2" : " NOT all size 2") << "; ";
  }
  return {ok, os.str()};
}

// Criterion 8: the conjunction and cyclic examples.
Outcome dimension_examples() {
  auto conjex = fixture("CONJEX");
  Formula phi = parse("p0 & ~p1 \\/ p1 & ~p0");
  Formula psi = parse("q0 & ~q1 \\/ q1 & ~q0");
  std::size_t m_phi = maximal_teams(conjex, phi).size(), m_psi = maximal_teams(conjex, psi).size();
  std::size_t m_both = maximal_teams(conjex, conj(phi, psi)).size();

  auto cycle = fixture("CYCLE4");
  std::vector<Formula> disjuncts;
  auto psi_j = [](int j) {
    std::vector<Formula> parts{prop("q" + std::to_string(j))};
    for (int l = 0; l < 4; ++l)
      if (l != j) parts.push_back(neg("q" + std::to_string(l)));
    return conj_all(parts);
  };
  for (int j = 0; j < 4; ++j) disjuncts.push_back(disj(psi_j(j), psi_j((j + 1) % 4)));
  Formula theta = idis_all(disjuncts);
  std::vector<KripkeModel> models{cycle};
  auto report = dim_report(models, theta);
  bool ok = m_phi == 2 && m_psi == 2 && m_both == 4 && report.witnessed_upper == 4 &&
            report.witnessed_lower == 2 && coherence_check(cycle, theta, 2) &&
            !coherence_check(cycle, theta, 1);
  std::ostringstream os;
  os << "conjunction |M|=" << m_phi << "," << m_psi << " -> " << m_both << "; cyclic |M|="
     << report.witnessed_upper << " largest N-member=" << report.witnessed_lower;
  return {ok, os.str()};
}

// Criterion 9: size of the expanded dependence atoms and the 2^occ bound.
Outcome succinctness() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Formula> args;
    std::vector<std::string> props;
    for (std::size_t i = 1; i <= n; ++i) {
      props.push_back("p" + std::to_string(i));
      args.push_back(prop(props.back()));
    }
    props.push_back("q");
    Formula g = emdl_to_mlidis(dep(args, prop("q")));
    std::size_t occ = occ_ivee(g), size = symbol_size(g);
    bool good = occ >= (std::size_t{1} << n) && size > (std::size_t{1} << n);
    if (n == 2) good = good && occ == 15;
    if (n <= 2) good = good && maximal_teams(full_valuation_model(props), g).size() == (std::size_t{1} << (1u << n));
    ok = ok && good;
    os << "n=" << n << " occ=" << occ << " size=" << size << "; ";
  }

  // |M(phi,K)| <= 2^occ(phi) and <= the estimate on every checked model.
  std::vector<Formula> formulas;
  for (const char* text : corpus::kMdl) formulas.push_back(emdl_to_mlidis(parse(text)));
  gen::FormulaGen g(109, kPQ);
  for (int i = 0; i < 100; ++i) formulas.push_back(g(gen::Logic::MLIDis, 2, 9));
  std::vector<KripkeModel> models{fixture("M1"), fixture("M2"), fixture("M3"), fixture("FULL2")};
  std::mt19937_64 rng(110);
  for (int i = 0; i < 40; ++i) models.push_back(gen::random_model(rng, 3 + static_cast<std::size_t>(i % 4), kPQ, 0.35));
  std::size_t rows = 0, violations = 0, widest = 0;
  for (const auto& f : formulas) {
    for (const auto& k : models) {
      std::size_t m = maximal_teams(k, f).size();
      ++rows;
      widest = std::max(widest, m);
      if (occ_ivee(f) < 63 && m > (std::size_t{1} << occ_ivee(f))) ++violations;
      if (m > dim_upper_estimate(f)) ++violations;
    }
  }
  ok = ok && violations == 0;
  os << rows << " (formula, model) rows, max |M|=" << widest << ", " << violations << " bound violations";
  return {ok, os.str()};
}

// Criterion 10: CLI golden files.
Outcome cli_golden() {
  const std::string root = TEAMLOGIC_ROOT;
  std::ifstream cases(root + "/tests/golden/cases.txt");
  if (!cases) return {false, "missing tests/golden/cases.txt"};
  std::string line;
  std::size_t run = 0, failed = 0;
  std::string failures;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar1 = line.find('|'), bar2 = line.find('|', bar1 + 1);
    std::string name = line.substr(0, bar1);
    int want_code = std::stoi(line.substr(bar1 + 1, bar2 - bar1 - 1));
    std::string args = line.substr(bar2 + 1);
    std::ifstream expected_file(root + "/tests/golden/" + name + ".out");
    std::stringstream expected;
    expected << expected_file.rdbuf();

    std::string cmd = "cd '" + root + "' && '" + std::string(TEAMLOGIC_CLI) + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {false, "cannot run the CLI"};
    std::string output;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    ++run;
    if (!expected_file || output != expected.str() || code != want_code) {
      ++failed;
      failures += " " + name + "(exit " + std::to_string(code) + ")";
    }
  }
  return {failed == 0 && run == 12, std::to_string(run) + " invocations, " + std::to_string(failed) +
                                        " mismatches" + failures};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "flatness of ML", 60, flatness},
      {2, "downward closure", 120, downward_closure},
      {3, "k-bisimulation vs Hintikka formulas", 60, bisim_vs_hintikka},
      {4, "ML(\\/) invariance under team k-bisimulation", 120, bisim_invariance},
      {5, "successor, image and cover clauses of team bisimulation", 60, team_bisim_lemma},
      {6, "translation round trip", 300, round_trip},
      {7, "dependence atom dimension", 30, dep_dimension},
      {8, "conjunction and cyclic dimension examples", 30, dimension_examples},
      {9, "succinctness evidence", 30, succinctness},
      {10, "CLI golden files", 10, cli_golden},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.ok && secs < c.limit_s;
    failures += !pass;
    std::printf("%s criterion %2d: %s [%.2fs / %.0fs] %s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %zu of %zu criteria passed\n", failures ? "FAILED" : "OK", criteria.size() - failures,
              criteria.size());
  return failures ? 1 : 0;
}
