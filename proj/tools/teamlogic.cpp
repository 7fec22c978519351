// Command-line front end: model checking, bisimulation, translations and
// dimension reports over model files and inline formulas.
//
// Exit status: 0 success or true, 1 false / not bisimilar, 2 any error.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teamlogic/bisim.hpp"
#include "teamlogic/dimension.hpp"
#include "teamlogic/error.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/kripke.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/translate.hpp"

namespace tl = teamlogic;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

// Models are given by path; a bare fixture name such as "M1" also finds
// "M1.kripke".
tl::KripkeModel open_model(const std::string& arg) {
  namespace fs = std::filesystem;
  if (!fs::exists(arg) && fs::exists(arg + ".kripke")) return tl::load_model_file(arg + ".kripke");
  return tl::load_model_file(arg);
}

tl::Formula read_formula(const std::string& text) {
  try {
    return tl::parse(text);
  } catch (const tl::ParseError& e) {
    throw tl::Error("formula \"" + text + "\": " + e.what());
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

tl::WorldId world_of(const tl::KripkeModel& k, const std::string& name) {
  auto w = k.find_world(name);
  if (!w) throw tl::Error("model " + k.name() + " has no world '" + name + "'");
  return *w;
}

struct Options {
  std::string model, other_model, formula, team, world, other_world, to, models;
  std::size_t k = 0;
  bool teams = false;
};

int run_check(const Options& o) {
  auto k = open_model(o.model);
  auto f = read_formula(o.formula);
  tl::Team t = !o.team.empty()     ? tl::parse_team(k, o.team)
               : k.default_team() ? *k.default_team()
                                  : k.full_team();
  bool holds = tl::eval(k, t, f);
  std::cout << (holds ? "true" : "false") << '\n';
  return holds ? kTrue : kFalse;
}

int run_bisim(const Options& o) {
  auto a = open_model(o.model);
  auto b = open_model(o.other_model);
  auto classes = tl::kbisim_classes(a, b, o.k);
  std::optional<std::size_t> level;
  if (o.teams) {
    tl::Team t = tl::parse_team(a, o.world);
    tl::Team u = tl::parse_team(b, o.other_world);
    for (std::size_t j = 0; j <= o.k && !level; ++j)
      if (classes.classes_met(0, t, j) != classes.classes_met(1, u, j)) level = j;
  } else {
    level = classes.distinguishing_level(0, world_of(a, o.world), 1, world_of(b, o.other_world));
  }
  if (!level) {
    std::cout << "bisimilar\n";
    return kTrue;
  }
  std::cout << "not-bisimilar level=" << *level << '\n';
  return kFalse;
}

int run_hintikka(const Options& o) {
  auto k = open_model(o.model);
  std::cout << tl::render(tl::hintikka(k, world_of(k, o.world), o.k)) << '\n';
  return kTrue;
}

int run_translate(const Options& o) {
  auto f = read_formula(o.formula);
  tl::Fragment frag = tl::classify(f);
  if (o.to == "emdl") {
    if (frag != tl::Fragment::ML && frag != tl::Fragment::MLIDis)
      throw tl::FragmentError("translation to EMDL needs an ML(\\/) formula, got " +
                              std::string(tl::fragment_name(frag)));
    std::cout << tl::render(tl::mlidis_to_emdl(f)) << '\n';
  } else {
    if (frag == tl::Fragment::MLIDis)
      throw tl::FragmentError("translation to ML(\\/) needs an EMDL formula, got MLIDis");
    std::cout << tl::render(tl::emdl_to_mlidis(f)) << '\n';
  }
  return kTrue;
}

int run_normalform(const Options& o) {
  for (const auto& g : tl::to_normal_form(read_formula(o.formula))) std::cout << tl::render(g) << '\n';
  return kTrue;
}

int run_dim(const Options& o) {
  auto f = read_formula(o.formula);
  std::vector<tl::KripkeModel> models;
  for (const auto& path : split_commas(o.models)) models.push_back(open_model(path));
  std::cout << tl::format_report(tl::dim_report(models, f));
  return kTrue;
}

int run_classify(const Options& o) {
  std::cout << tl::fragment_name(tl::classify(read_formula(o.formula))) << '\n';
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking and analysis for modal logics with team semantics"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Evaluate a formula on a team");
  check->add_option("-m,--model", o.model, "Model file")->required();
  check->add_option("-f,--formula", o.formula, "Formula")->required();
  check->add_option("-t,--team", o.team, "Comma-separated worlds (default: the model's team line, else all worlds)");

  auto* bisim = app.add_subcommand("bisim", "Decide k-bisimilarity of two worlds or teams");
  bisim->add_option("-m", o.model, "First model file")->required();
  bisim->add_option("-w", o.world, "World (or team with --teams) of the first model")->required();
  bisim->add_option("-n", o.other_model, "Second model file")->required();
  bisim->add_option("-x", o.other_world, "World (or team with --teams) of the second model")->required();
  bisim->add_option("-k", o.k, "Depth")->required();
  bisim->add_flag("--teams", o.teams, "Read -w and -x as comma-separated teams");

  auto* hint = app.add_subcommand("hintikka", "Print the k-th Hintikka formula of a world");
  hint->add_option("-m,--model", o.model, "Model file")->required();
  hint->add_option("-w,--world", o.world, "World")->required();
  hint->add_option("-k", o.k, "Depth")->required();

  auto* translate = app.add_subcommand("translate", "Translate between EMDL and ML(\\/)");
  translate->add_option("--to", o.to, "Target logic")->required()->check(CLI::IsMember({"emdl", "mlidis"}));
  translate->add_option("-f,--formula", o.formula, "Formula")->required();

  auto* nf = app.add_subcommand("normalform", "Print the \\/-normal form, one disjunct per line");
  nf->add_option("-f,--formula", o.formula, "Formula")->required();

  auto* dim = app.add_subcommand("dim", "Maximal and minimal falsifying teams per model");
  dim->add_option("-m,--models", o.models, "Comma-separated model files")->required();
  dim->add_option("-f,--formula", o.formula, "Formula")->required();

  auto* cls = app.add_subcommand("classify", "Print the least fragment of a formula");
  cls->add_option("-f,--formula", o.formula, "Formula")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (check->parsed()) return run_check(o);
    if (bisim->parsed()) return run_bisim(o);
    if (hint->parsed()) return run_hintikka(o);
    if (translate->parsed()) return run_translate(o);
    if (nf->parsed()) return run_normalform(o);
    if (dim->parsed()) return run_dim(o);
    if (cls->parsed()) return run_classify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
