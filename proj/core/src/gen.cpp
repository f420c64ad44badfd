#include "ielc/gen.hpp"

#include <algorithm>

#include "ielc/rewrite.hpp"
#include "ielc/typecheck.hpp"

namespace ielc {

uint64_t Rng::next() {
  state_ += 0x9E3779B97f4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t n) { return next() % n; }

bool Rng::chance(int percent) {
  return below(100) < static_cast<uint64_t>(percent);
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

FormulaPtr gen_formula(Rng& rng, int max_depth,
                       const std::vector<std::string>& atoms) {
  if (max_depth <= 0 || rng.chance(30)) {
    uint64_t roll = rng.below(10);
    if (roll < 7 && !atoms.empty())
      return f_atom(atoms[rng.below(atoms.size())]);
    if (roll < 9) return f_top();
    return f_bot();
  }
  switch (rng.below(5)) {
    case 0:
      return f_impl(gen_formula(rng, max_depth - 1, atoms),
                    gen_formula(rng, max_depth - 1, atoms));
    case 1:
      return f_conj(gen_formula(rng, max_depth - 1, atoms),
                    gen_formula(rng, max_depth - 1, atoms));
    case 2:
      return f_disj(gen_formula(rng, max_depth - 1, atoms),
                    gen_formula(rng, max_depth - 1, atoms));
    default:
      return f_box(gen_formula(rng, max_depth - 1, atoms));
  }
}

// ---------------------------------------------------------------------------
// Raw terms (syntax only, for parser round-trips)
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kNamePool = {"x", "y", "z", "f", "g",
                                            "a", "b", "w", "u", "v"};

std::string pick_name(Rng& rng) {
  std::string n = kNamePool[rng.below(kNamePool.size())];
  if (rng.chance(10)) n += '\'';
  return n;
}

}  // namespace

TermPtr gen_raw_term(Rng& rng, int max_size,
                     const std::vector<std::string>& atoms) {
  if (max_size <= 1) return t_var(pick_name(rng));
  switch (rng.below(12)) {
    case 0:
      return t_var(pick_name(rng));
    case 1:
      return t_lam(pick_name(rng), gen_formula(rng, 2, atoms),
                   gen_raw_term(rng, max_size - 1, atoms));
    case 2:
      return t_app(gen_raw_term(rng, max_size / 2, atoms),
                   gen_raw_term(rng, max_size / 2, atoms));
    case 3:
      return t_pair(gen_raw_term(rng, max_size / 2, atoms),
                    gen_raw_term(rng, max_size / 2, atoms));
    case 4:
      return t_proj1(gen_raw_term(rng, max_size - 1, atoms));
    case 5:
      return t_proj2(gen_raw_term(rng, max_size - 1, atoms));
    case 6: {
      FormulaPtr sum = f_disj(gen_formula(rng, 1, atoms),
                              gen_formula(rng, 1, atoms));
      return rng.chance(50)
                 ? t_inj1(sum, gen_raw_term(rng, max_size - 1, atoms))
                 : t_inj2(sum, gen_raw_term(rng, max_size - 1, atoms));
    }
    case 7:
      return t_case(gen_raw_term(rng, max_size / 3, atoms), pick_name(rng),
                    gen_raw_term(rng, max_size / 3, atoms), pick_name(rng),
                    gen_raw_term(rng, max_size / 3, atoms));
    case 8:
      return t_exfalso(gen_formula(rng, 2, atoms),
                       gen_raw_term(rng, max_size - 1, atoms));
    case 9:
      return t_triv(gen_raw_term(rng, max_size - 1, atoms));
    default: {
      size_t n = rng.below(3);
      std::vector<BoxBinding> binds;
      std::set<std::string> used;
      for (size_t i = 0; i < n; ++i) {
        std::string name = fresh_name(pick_name(rng), used);
        used.insert(name);
        binds.push_back({name, gen_formula(rng, 1, atoms),
                         gen_raw_term(rng, max_size / 3, atoms)});
      }
      return t_box(std::move(binds),
                   gen_raw_term(rng, std::max(1, max_size / 3), atoms));
    }
  }
}

// ---------------------------------------------------------------------------
// Well-typed terms
// ---------------------------------------------------------------------------

namespace {

struct TypedGen {
  Rng& rng;
  const GenOptions& opts;
  int name_counter = 0;

  using Env = std::vector<std::pair<std::string, FormulaPtr>>;

  std::string fresh_var(const Env& env) {
    std::set<std::string> taken;
    for (const auto& [n, f] : env) taken.insert(n);
    std::string base = kNamePool[rng.below(kNamePool.size())];
    return fresh_name(base, taken);
  }

  bool env_has_bot(const Env& env) const {
    for (const auto& [n, f] : env)
      if (f->kind == FKind::Bot) return true;
    return false;
  }

  bool inhabited(const Env& env, const FormulaPtr& f, int depth) const {
    for (const auto& [n, g] : env)
      if (formula_eq(g, f)) return true;
    if (env_has_bot(env)) return true;
    switch (f->kind) {
      case FKind::Top:
        return true;
      case FKind::Atom:
      case FKind::Bot:
        return false;
      case FKind::Impl: {
        if (depth <= 0) return false;
        Env ext = env;
        ext.push_back({"#", f->lhs});
        return inhabited(ext, f->rhs, depth - 1);
      }
      case FKind::Conj:
        return depth > 0 && inhabited(env, f->lhs, depth - 1) &&
               inhabited(env, f->rhs, depth - 1);
      case FKind::Disj:
        return depth > 0 && (inhabited(env, f->lhs, depth - 1) ||
                             inhabited(env, f->rhs, depth - 1));
      case FKind::Box:
        return depth > 0 && inhabited(env, f->lhs, depth - 1);
    }
    return false;
  }

  // Small formulas worth using as cut types for eliminations.
  FormulaPtr candidate(const Env& env) {
    uint64_t roll = rng.below(10);
    if (roll < 4 && !env.empty())
      return env[rng.below(env.size())].second;
    if (roll < 6) return f_top();
    if (roll < 8 && !opts.atoms.empty())
      return f_atom(opts.atoms[rng.below(opts.atoms.size())]);
    return f_impl(f_bot(), f_bot());
  }

  TermPtr closed_unit_witness() {
    return t_triv(t_lam("x", f_bot(), t_var("x")));
  }

  std::optional<TermPtr> gen(const Env& env, const FormulaPtr& f, int fuel) {
    if (!inhabited(env, f, 6)) return std::nullopt;

    std::vector<TermPtr> vars;
    for (const auto& [n, g] : env)
      if (formula_eq(g, f)) vars.push_back(t_var(n));

    // Prefer a variable when fuel runs dry.
    if (fuel <= 0 && !vars.empty()) return vars[rng.below(vars.size())];

    // An elimination now and then, fuel permitting.
    if (fuel > 2 && rng.chance(25)) {
      if (auto t = gen_elim(env, f, fuel)) return t;
    }
    if (!vars.empty() && rng.chance(35)) return vars[rng.below(vars.size())];
    if (env_has_bot(env) && rng.chance(50)) {
      for (const auto& [n, g] : env)
        if (g->kind == FKind::Bot) return t_exfalso(f, t_var(n));
    }
    if (auto t = gen_intro(env, f, fuel)) return t;
    if (!vars.empty()) return vars[rng.below(vars.size())];
    for (const auto& [n, g] : env)
      if (g->kind == FKind::Bot) return t_exfalso(f, t_var(n));
    return std::nullopt;
  }

  std::optional<TermPtr> gen_intro(const Env& env, const FormulaPtr& f,
                                   int fuel) {
    switch (f->kind) {
      case FKind::Top: {
        if (fuel > 0 && !env.empty() && rng.chance(40)) {
          const auto& [n, g] = env[rng.below(env.size())];
          return t_triv(t_var(n));
        }
        return closed_unit_witness();
      }
      case FKind::Impl: {
        std::string x = fresh_var(env);
        Env ext = env;
        ext.push_back({x, f->lhs});
        auto body = gen(ext, f->rhs, fuel - 1);
        if (!body) return std::nullopt;
        return t_lam(x, f->lhs, *body);
      }
      case FKind::Conj: {
        auto a = gen(env, f->lhs, fuel - 1);
        auto b = gen(env, f->rhs, fuel - 1);
        if (!a || !b) return std::nullopt;
        return t_pair(*a, *b);
      }
      case FKind::Disj: {
        bool left_ok = inhabited(env, f->lhs, 5);
        bool right_ok = inhabited(env, f->rhs, 5);
        if (!left_ok && !right_ok) return std::nullopt;
        bool go_left = left_ok && (!right_ok || rng.chance(50));
        auto w = gen(env, go_left ? f->lhs : f->rhs, fuel - 1);
        if (!w) return std::nullopt;
        return go_left ? t_inj1(f, *w) : t_inj2(f, *w);
      }
      case FKind::Box: {
        size_t n = 0;
        if (fuel > 1) {
          uint64_t roll = rng.below(100);
          n = roll < 50 ? 0 : roll < 85 ? 1 : 2;
        }
        Env locked = env;  // box binders must be fresh for the whole scope
        std::vector<BoxBinding> binds;
        for (size_t i = 0; i < n; ++i) {
          FormulaPtr ai = candidate(env);
          if (!inhabited(env, f_box(ai), 6)) continue;
          auto arg = gen(env, f_box(ai), fuel - 2);
          if (!arg) continue;
          std::string x = fresh_var(locked);
          locked.push_back({x, ai});
          binds.push_back({x, ai, *arg});
        }
        Env ext = env;
        for (const auto& b : binds) ext.push_back({b.name, b.annot});
        auto body = gen(ext, f->lhs, fuel - 1);
        if (!body) return std::nullopt;
        return t_box(std::move(binds), *body);
      }
      case FKind::Atom:
      case FKind::Bot:
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<TermPtr> gen_elim(const Env& env, const FormulaPtr& f,
                                  int fuel) {
    switch (rng.below(3)) {
      case 0: {  // application at a cut type
        FormulaPtr c = candidate(env);
        if (!inhabited(env, c, 5)) return std::nullopt;
        auto fn = gen(env, f_impl(c, f), fuel - 2);
        if (!fn) return std::nullopt;
        auto arg = gen(env, c, fuel - 2);
        if (!arg) return std::nullopt;
        return t_app(*fn, *arg);
      }
      case 1: {  // projection from a synthesized pair type
        FormulaPtr d = candidate(env);
        if (!inhabited(env, d, 5)) return std::nullopt;
        bool fst = rng.chance(50);
        auto p = gen(env, fst ? f_conj(f, d) : f_conj(d, f), fuel - 2);
        if (!p) return std::nullopt;
        return fst ? t_proj1(*p) : t_proj2(*p);
      }
      default: {  // case split over a synthesized sum
        FormulaPtr c = candidate(env);
        FormulaPtr d = candidate(env);
        auto scrut = gen(env, f_disj(c, d), fuel - 2);
        if (!scrut) return std::nullopt;
        std::string x = fresh_var(env);
        Env extl = env;
        extl.push_back({x, c});
        auto left = gen(extl, f, fuel - 2);
        if (!left) return std::nullopt;
        std::string y = fresh_var(env);
        Env extr = env;
        extr.push_back({y, d});
        auto right = gen(extr, f, fuel - 2);
        if (!right) return std::nullopt;
        return t_case(*scrut, x, *left, y, *right);
      }
    }
  }
};

// Typed positions for redex injection: (path, formula, names in scope).
struct TypedPos {
  Path path;
  FormulaPtr formula;
  std::set<std::string> scope;
};

void collect_positions(const TermPtr& t,
                       std::vector<std::pair<std::string, FormulaPtr>>& env,
                       Path& path, std::vector<TypedPos>& out) {
  FormulaPtr f;
  try {
    f = infer_with_env(env, t);
  } catch (const TypeError&) {
    return;
  }
  std::set<std::string> scope;
  for (const auto& [n, g] : env) scope.insert(n);
  out.push_back({path, f, scope});

  auto recurse = [&](int k, const TermPtr& sub) {
    path.push_back(k);
    collect_positions(sub, env, path, out);
    path.pop_back();
  };
  switch (t->kind) {
    case TKind::Var:
      return;
    case TKind::Lam:
      env.push_back({t->var, t->annot});
      recurse(0, t->a);
      env.pop_back();
      return;
    case TKind::App:
    case TKind::Pair:
      recurse(0, t->a);
      recurse(1, t->b);
      return;
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Inj1:
    case TKind::Inj2:
    case TKind::Exfalso:
    case TKind::Triv:
      recurse(0, t->a);
      return;
    case TKind::Case: {
      recurse(0, t->a);
      FormulaPtr sum = infer_with_env(env, t->a);
      env.push_back({t->var, sum->lhs});
      recurse(1, t->b);
      env.pop_back();
      env.push_back({t->var2, sum->rhs});
      recurse(2, t->c);
      env.pop_back();
      return;
    }
    case TKind::BoxIntro: {
      for (size_t i = 0; i < t->bindings.size(); ++i)
        recurse(static_cast<int>(i), t->bindings[i].arg);
      for (const auto& b : t->bindings) env.push_back({b.name, b.annot});
      recurse(static_cast<int>(t->bindings.size()), t->body);
      for (size_t i = 0; i < t->bindings.size(); ++i) env.pop_back();
      return;
    }
  }
}

TermPtr closed_unit() { return t_triv(t_lam("x", f_bot(), t_var("x"))); }

// Wraps the subterm at one position in a type-preserving redex.
TermPtr inject_redex(Rng& rng, const TermPtr& t) {
  std::vector<std::pair<std::string, FormulaPtr>> env;
  Path path;
  std::vector<TypedPos> positions;
  collect_positions(t, env, path, positions);
  if (positions.empty()) return t;
  const TypedPos& pos = positions[rng.below(positions.size())];
  TermPtr sub = pos.path.empty() ? t : nullptr;
  {
    TermPtr cur = t;
    for (int k : pos.path) cur = term_child(cur, k);
    sub = cur;
  }
  const FormulaPtr& b = pos.formula;
  std::string z = fresh_name("z", pos.scope);
  TermPtr wrapped;
  switch (rng.below(b->kind == FKind::Box ? 5 : 3)) {
    case 0:  // beta redex
      wrapped = t_app(t_lam(z, b, t_var(z)), sub);
      break;
    case 1:  // projection redex
      wrapped = t_proj1(t_pair(sub, closed_unit()));
      break;
    case 2: {  // case redex over a duplicated sum
      std::string z2 = fresh_name("z'", pos.scope);
      wrapped = t_case(t_inj1(f_disj(b, b), sub), z, t_var(z), z2, t_var(z2));
      break;
    }
    case 3:  // iota redex (box type only)
      wrapped = t_box({{z, b->lhs, sub}}, t_var(z));
      break;
    default: {  // delta redex (box type only)
      std::set<std::string> avoid = pos.scope;
      avoid.insert(z);
      std::string w = fresh_name("w", avoid);
      avoid.insert(w);
      std::string z2 = fresh_name("u", avoid);
      wrapped = t_box({{z, b->lhs, t_box({{w, b->lhs, sub}}, t_var(w))},
                       {z2, f_top(), t_box({}, closed_unit())}},
                      t_var(z));
      break;
    }
  }
  return term_replace_at(t, pos.path, wrapped);
}

}  // namespace

TermPtr gen_typed_term(Rng& rng, const GenOptions& opts) {
  TypedGen gen{rng, opts};
  for (int attempt = 0; attempt < 40; ++attempt) {
    FormulaPtr target;
    switch (rng.below(5)) {
      case 0:
        target = f_box(gen_formula(rng, 2, opts.atoms));
        break;
      case 1: {
        FormulaPtr l = gen_formula(rng, 1, opts.atoms);
        FormulaPtr r = gen_formula(rng, 1, opts.atoms);
        target = rng.chance(50) ? f_disj(l, r) : f_box(f_disj(l, r));
        break;
      }
      default:
        target = gen_formula(rng, opts.max_formula_depth, opts.atoms);
        break;
    }
    if (!gen.inhabited({}, target, 6)) continue;
    auto t = gen.gen({}, target, 6);
    if (!t) continue;
    TermPtr result = *t;
    int injections = static_cast<int>(rng.below(3));
    for (int i = 0; i < injections; ++i) {
      TermPtr next = inject_redex(rng, result);
      if (term_size(next) <= opts.max_term_size) result = next;
    }
    if (term_size(result) <= opts.max_term_size) return result;
  }
  // Guaranteed fallback: the co-reflection witness.
  return t_lam("x", f_atom("p"), t_box({}, t_var("x")));
}

std::vector<TermPtr> gen_corpus(uint64_t seed, int count,
                                const GenOptions& opts) {
  std::vector<TermPtr> out;
  out.reserve(count);
  Rng rng(seed);
  for (int i = 0; i < count; ++i) out.push_back(gen_typed_term(rng, opts));
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert proofs
// ---------------------------------------------------------------------------

HilbertProof gen_hilbert_proof(Rng& rng, bool with_hypotheses, int moves) {
  std::vector<std::string> atoms = {"p", "q"};
  HilbertProof p;
  auto small = [&]() { return gen_formula(rng, 1, atoms); };
  auto add_axiom = [&](SchemeId id, Instantiation inst) {
    p.lines.push_back(
        {instantiate_scheme(id, inst), Justification::axiom(id, inst)});
    return static_cast<int>(p.lines.size());
  };
  auto add_mp = [&](int major, int minor) {
    p.lines.push_back({p.lines[major - 1].formula->rhs,
                       Justification::mp(major, minor)});
    return static_cast<int>(p.lines.size());
  };

  if (with_hypotheses) {
    size_t k = 1 + rng.below(2);
    for (size_t i = 0; i < k; ++i) {
      p.hypotheses.push_back(small());
      p.lines.push_back({p.hypotheses.back(),
                         Justification::hyp(static_cast<int>(i) + 1)});
    }
  } else {
    add_axiom(SchemeId::A10, {});
  }

  for (int m = 0; m < moves; ++m) {
    int pick = static_cast<int>(rng.below(p.lines.size())) + 1;
    FormulaPtr F = p.lines[pick - 1].formula;
    switch (rng.below(6)) {
      case 0: {  // fresh axiom instance
        SchemeId id = all_schemes()[rng.below(all_schemes().size())];
        Instantiation inst;
        for (const std::string& mv : scheme_metavars(id)) inst[mv] = small();
        add_axiom(id, inst);
        break;
      }
      case 1: {  // weaken: F gives G -> F
        FormulaPtr G = small();
        int ax = add_axiom(SchemeId::A1, {{"A", F}, {"B", G}});
        add_mp(ax, pick);
        break;
      }
      case 2: {  // box it
        int ax = add_axiom(SchemeId::CR, {{"A", F}});
        add_mp(ax, pick);
        break;
      }
      case 3: {  // disjunction on the left
        FormulaPtr G = small();
        int ax = add_axiom(SchemeId::A6, {{"A", F}, {"B", G}});
        add_mp(ax, pick);
        break;
      }
      case 4: {  // pair two lines
        int other = static_cast<int>(rng.below(p.lines.size())) + 1;
        FormulaPtr G = p.lines[other - 1].formula;
        int ax = add_axiom(SchemeId::A5, {{"A", F}, {"B", G}});
        int s = add_mp(ax, pick);
        add_mp(s, other);
        break;
      }
      default: {  // distribute a boxed implication, when one exists
        int found = 0;
        for (size_t i = 0; i < p.lines.size(); ++i) {
          const FormulaPtr& g = p.lines[i].formula;
          if (g->kind == FKind::Box && g->lhs->kind == FKind::Impl)
            found = static_cast<int>(i) + 1;
        }
        if (!found) break;
        const FormulaPtr& boxed = p.lines[found - 1].formula->lhs;
        int ax = add_axiom(SchemeId::K,
                           {{"A", boxed->lhs}, {"B", boxed->rhs}});
        int dist = add_mp(ax, found);
        // feed it a boxed antecedent when available
        for (size_t i = 0; i < p.lines.size(); ++i)
          if (formula_eq(p.lines[i].formula,
                         p.lines[dist - 1].formula->lhs)) {
            add_mp(dist, static_cast<int>(i) + 1);
            break;
          }
        break;
      }
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

KripkeModel gen_model(Rng& rng, int max_worlds,
                      const std::vector<std::string>& atoms) {
  int n = 1 + static_cast<int>(rng.below(max_worlds));
  KripkeModel m;
  for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng.chance(30)) m.le.insert({i, j});
  auto cl = m.le_closure();
  // E within the closed order, then forced closed under composition.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cl[i][j] && rng.chance(40)) m.E.insert({i, j});
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (cl[x][y])
          for (int z = 0; z < n; ++z)
            if (m.E.count({y, z}) && !m.E.count({x, z})) {
              m.E.insert({x, z});
              changed = true;
            }
  }
  for (const std::string& atom : atoms) {
    std::set<int>& vs = m.val[atom];
    for (int i = 0; i < n; ++i)
      if (rng.chance(40)) vs.insert(i);
    // upward closure
    bool grow = true;
    while (grow) {
      grow = false;
      for (int i : std::set<int>(vs))
        for (int j = 0; j < n; ++j)
          if (cl[i][j] && !vs.count(j)) {
            vs.insert(j);
            grow = true;
          }
    }
  }
  return m;
}

}  // namespace ielc
