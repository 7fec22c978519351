#include "teamlogic/translate.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "teamlogic/error.hpp"
#include "teamlogic/semantics.hpp"

namespace teamlogic {

PsiContext::PsiContext(std::vector<Formula> members) : members_(std::move(members)) {
  if (members_.size() > 31) throw Error("a Psi context holds at most 31 formulas");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!members_[i].is_ml())
      throw FragmentError("Psi members must be ML formulas, got " + render(members_[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (members_[i] == members_[j]) throw Error("duplicate Psi member " + render(members_[i]));
  }
}

PsiType type_of(const KripkeModel& k, WorldId w, const PsiContext& ctx) {
  Evaluator ev(k);
  PsiType t;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ev.eval_point(w, ctx[i])) t.bits |= std::uint32_t{1} << i;
  return t;
}

TypeSet tset(const KripkeModel& k, const Team& t, const PsiContext& ctx) {
  Evaluator ev(k);
  TypeSet out;
  t.for_each([&](WorldId w) {
    PsiType ty;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ev.eval_point(w, ctx[i])) ty.bits |= std::uint32_t{1} << i;
    out.insert(ty);
  });
  return out;
}

namespace {

Formula theta_of(std::uint32_t gamma, std::span<const Formula> psi) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (gamma >> i & 1) parts.push_back(psi[i]);
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (!(gamma >> i & 1)) parts.push_back(negate_ml(psi[i]));
  return conj_all(parts);
}

// Shares theta and gamma^k nodes between the conjuncts of one translation.
class XiBuilder {
 public:
  explicit XiBuilder(const PsiContext& ctx) : ctx_(ctx), gamma_(gamma_formula(ctx)) {}

  const Formula& theta(std::uint32_t g) {
    auto it = thetas_.find(g);
    if (it == thetas_.end()) it = thetas_.emplace(g, theta_of(g, ctx_.members())).first;
    return it->second;
  }

  const Formula& gamma_k(std::size_t k) {
    while (gammas_.size() <= k)
      gammas_.push_back(gammas_.empty() ? bot() : disj(gammas_.back(), gamma_));
    return gammas_[k];
  }

  Formula xi(const TypeSet& types) {
    if (types.empty()) throw Error("xi needs a non-empty type set");
    std::vector<Formula> outside;
    const std::uint32_t all = std::uint32_t{1} << ctx_.size();
    for (std::uint32_t g = 0; g < all; ++g)
      if (!types.contains(PsiType{g})) outside.push_back(theta(g));
    return disj(disj_all(outside), gamma_k(types.size() - 1));
  }

 private:
  const PsiContext& ctx_;
  Formula gamma_;
  std::map<std::uint32_t, Formula> thetas_;
  std::vector<Formula> gammas_;
};

void push_unique(std::vector<Formula>& v, Formula f) {
  if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(std::move(f));
}

}  // namespace

Formula theta_gamma(PsiType gamma, const PsiContext& ctx) {
  return theta_of(gamma.bits, ctx.members());
}

Formula gamma_formula(const PsiContext& ctx) {
  std::vector<Formula> atoms;
  for (const Formula& psi : ctx.members()) atoms.push_back(dep({}, psi));
  return conj_all(atoms);
}

Formula gamma_k(const PsiContext& ctx, std::size_t k) { return XiBuilder(ctx).gamma_k(k); }

Formula xi(const TypeSet& types, const PsiContext& ctx) { return XiBuilder(ctx).xi(types); }

std::vector<Formula> to_normal_form(const Formula& f) {
  if (f.has_dep())
    throw FragmentError("normal form needs an ML or ML(\\/) formula, got " + render(f));
  if (f.is_ml()) return {f};
  std::vector<Formula> out;
  switch (f.kind()) {
    case Kind::IDis:
      for (auto& g : to_normal_form(f.left())) push_unique(out, g);
      for (auto& g : to_normal_form(f.right())) push_unique(out, g);
      break;
    case Kind::And:
    case Kind::Or: {
      auto ls = to_normal_form(f.left());
      auto rs = to_normal_form(f.right());
      for (const auto& l : ls)
        for (const auto& r : rs) push_unique(out, f.kind() == Kind::And ? conj(l, r) : disj(l, r));
      break;
    }
    case Kind::Dia:
      for (auto& g : to_normal_form(f.operand())) push_unique(out, dia(g));
      break;
    case Kind::Box:
      for (auto& g : to_normal_form(f.operand())) push_unique(out, box(g));
      break;
    default:
      throw FragmentError("unexpected node in normal form");
  }
  return out;
}

std::vector<std::uint32_t> minimal_separating_type_sets(std::size_t m) {
  if (m > kMaxPsiSize) throw GuardError("type-set enumeration is limited to |Psi| <= 4");
  const std::uint32_t types = std::uint32_t{1} << m;
  const std::uint32_t everything = types - 1;
  const std::uint64_t families = std::uint64_t{1} << types;

  auto separating = [&](std::uint32_t fam) {
    if (fam == 0) return false;
    std::uint32_t common = everything;
    for (std::uint32_t t = 0; t < types; ++t)
      if (fam >> t & 1) common &= t;
    return common == 0;
  };

  std::vector<std::uint32_t> out;
  for (std::uint64_t f = 1; f < families; ++f) {
    auto fam = static_cast<std::uint32_t>(f);
    if (!separating(fam)) continue;
    // Separation is preserved by supersets, so single removals decide minimality.
    bool minimal = true;
    for (std::uint32_t t = 0; t < types && minimal; ++t)
      if ((fam >> t & 1) && separating(fam & ~(std::uint32_t{1} << t))) minimal = false;
    if (minimal) out.push_back(fam);
  }
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return out;
}

Formula mlidis_to_emdl(const Formula& f) {
  auto psi = to_normal_form(f);
  if (psi.size() > kMaxPsiSize)
    throw GuardError("normal form has " + std::to_string(psi.size()) +
                     " disjuncts; translation to EMDL is limited to " +
                     std::to_string(kMaxPsiSize));
  PsiContext ctx(std::move(psi));
  XiBuilder builder(ctx);
  std::vector<Formula> conjuncts;
  for (std::uint32_t fam : minimal_separating_type_sets(ctx.size())) {
    TypeSet types;
    for (std::uint32_t t = 0; t < (std::uint32_t{1} << ctx.size()); ++t)
      if (fam >> t & 1) types.insert(PsiType{t});
    conjuncts.push_back(builder.xi(types));
  }
  return conj_all(conjuncts);
}

namespace {

Formula expand_dep(const Formula& atom) {
  auto args = atom.dep_args();
  const std::size_t n = args.size();
  if (n > kMaxDepArgs)
    throw GuardError("dependence atom with " + std::to_string(n) +
                     " arguments; expansion is limited to " + std::to_string(kMaxDepArgs));
  const Formula& target = atom.dep_target();
  const Formula negated = negate_ml(target);

  // Argument types, fullest first.
  std::vector<Formula> thetas;
  for (std::uint32_t g = (std::uint32_t{1} << n); g-- > 0;) thetas.push_back(theta_of(g, args));

  // Determination function: bit i set sends type i to the negated target.
  const std::uint64_t functions = std::uint64_t{1} << thetas.size();
  std::vector<Formula> disjuncts;
  for (std::uint64_t fn = 0; fn < functions; ++fn) {
    std::vector<Formula> cases;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const Formula& value = (fn >> i & 1) ? negated : target;
      cases.push_back(n == 0 ? value : conj(thetas[i], value));
    }
    disjuncts.push_back(disj_all(cases));
  }
  return idis_all(disjuncts);
}

}  // namespace

Formula emdl_to_mlidis(const Formula& f) {
  if (!f.has_dep()) return f;
  if (f.has_idis())
    throw FragmentError("formula mixes intuitionistic disjunction and dependence atoms");
  switch (f.kind()) {
    case Kind::Dep: return expand_dep(f);
    case Kind::And: return conj(emdl_to_mlidis(f.left()), emdl_to_mlidis(f.right()));
    case Kind::Or: return disj(emdl_to_mlidis(f.left()), emdl_to_mlidis(f.right()));
    case Kind::Dia: return dia(emdl_to_mlidis(f.operand()));
    case Kind::Box: return box(emdl_to_mlidis(f.operand()));
    default: break;
  }
  throw FragmentError("unexpected node in dependence-atom expansion");
}

}  // namespace teamlogic
