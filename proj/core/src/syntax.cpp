#include "ielc/syntax.hpp"

#include <algorithm>

namespace ielc {

// ---------------------------------------------------------------------------
// Formula constructors
// ---------------------------------------------------------------------------

static FormulaPtr mk_formula(Formula f) {
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr f_atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return mk_formula({FKind::Atom, std::move(name), nullptr, nullptr});
}

FormulaPtr f_top() {
  static const FormulaPtr t = mk_formula({FKind::Top, "", nullptr, nullptr});
  return t;
}

FormulaPtr f_bot() {
  static const FormulaPtr b = mk_formula({FKind::Bot, "", nullptr, nullptr});
  return b;
}

FormulaPtr f_impl(FormulaPtr a, FormulaPtr b) {
  return mk_formula({FKind::Impl, "", std::move(a), std::move(b)});
}

FormulaPtr f_conj(FormulaPtr a, FormulaPtr b) {
  return mk_formula({FKind::Conj, "", std::move(a), std::move(b)});
}

FormulaPtr f_disj(FormulaPtr a, FormulaPtr b) {
  return mk_formula({FKind::Disj, "", std::move(a), std::move(b)});
}

FormulaPtr f_box(FormulaPtr a) {
  return mk_formula({FKind::Box, "", std::move(a), nullptr});
}

FormulaPtr f_neg(FormulaPtr a) { return f_impl(std::move(a), f_bot()); }

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
      return a->atom == b->atom;
    case FKind::Top:
    case FKind::Bot:
      return true;
    case FKind::Box:
      return formula_eq(a->lhs, b->lhs);
    default:
      return formula_eq(a->lhs, b->lhs) && formula_eq(a->rhs, b->rhs);
  }
}

int formula_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
      return 0;
    case FKind::Box:
      return 1 + formula_depth(f->lhs);
    default:
      return 1 + std::max(formula_depth(f->lhs), formula_depth(f->rhs));
  }
}

int formula_size(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
      return 1;
    case FKind::Box:
      return 1 + formula_size(f->lhs);
    default:
      return 1 + formula_size(f->lhs) + formula_size(f->rhs);
  }
}

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      out.insert(f->atom);
      return;
    case FKind::Top:
    case FKind::Bot:
      return;
    case FKind::Box:
      collect_atoms(f->lhs, out);
      return;
    default:
      collect_atoms(f->lhs, out);
      collect_atoms(f->rhs, out);
      return;
  }
}

FormulaPtr substitute_atoms(
    const FormulaPtr& f,
    const std::vector<std::pair<std::string, FormulaPtr>>& map) {
  switch (f->kind) {
    case FKind::Atom:
      for (const auto& [name, repl] : map)
        if (name == f->atom) return repl;
      return f;
    case FKind::Top:
    case FKind::Bot:
      return f;
    case FKind::Box:
      return f_box(substitute_atoms(f->lhs, map));
    case FKind::Impl:
      return f_impl(substitute_atoms(f->lhs, map), substitute_atoms(f->rhs, map));
    case FKind::Conj:
      return f_conj(substitute_atoms(f->lhs, map), substitute_atoms(f->rhs, map));
    case FKind::Disj:
      return f_disj(substitute_atoms(f->lhs, map), substitute_atoms(f->rhs, map));
  }
  throw std::logic_error("substitute_atoms: unreachable");
}

// ---------------------------------------------------------------------------
// Term constructors
// ---------------------------------------------------------------------------

static TermPtr mk_term(ProofTerm t) {
  return std::make_shared<const ProofTerm>(std::move(t));
}

TermPtr t_var(std::string x) {
  if (x.empty()) throw std::invalid_argument("empty variable name");
  ProofTerm t;
  t.kind = TKind::Var;
  t.var = std::move(x);
  return mk_term(std::move(t));
}

TermPtr t_lam(std::string x, FormulaPtr annot, TermPtr body) {
  ProofTerm t;
  t.kind = TKind::Lam;
  t.var = std::move(x);
  t.annot = std::move(annot);
  t.a = std::move(body);
  return mk_term(std::move(t));
}

TermPtr t_app(TermPtr f, TermPtr arg) {
  ProofTerm t;
  t.kind = TKind::App;
  t.a = std::move(f);
  t.b = std::move(arg);
  return mk_term(std::move(t));
}

TermPtr t_pair(TermPtr a, TermPtr b) {
  ProofTerm t;
  t.kind = TKind::Pair;
  t.a = std::move(a);
  t.b = std::move(b);
  return mk_term(std::move(t));
}

TermPtr t_proj1(TermPtr arg) {
  ProofTerm t;
  t.kind = TKind::Proj1;
  t.a = std::move(arg);
  return mk_term(std::move(t));
}

TermPtr t_proj2(TermPtr arg) {
  ProofTerm t;
  t.kind = TKind::Proj2;
  t.a = std::move(arg);
  return mk_term(std::move(t));
}

static TermPtr mk_inj(TKind kind, FormulaPtr sum, TermPtr arg) {
  if (sum->kind != FKind::Disj)
    throw std::invalid_argument("injection annotation must be a disjunction");
  ProofTerm t;
  t.kind = kind;
  t.annot = std::move(sum);
  t.a = std::move(arg);
  return mk_term(std::move(t));
}

TermPtr t_inj1(FormulaPtr sum, TermPtr t) {
  return mk_inj(TKind::Inj1, std::move(sum), std::move(t));
}

TermPtr t_inj2(FormulaPtr sum, TermPtr t) {
  return mk_inj(TKind::Inj2, std::move(sum), std::move(t));
}

TermPtr t_case(TermPtr scrut, std::string x, TermPtr left, std::string y,
               TermPtr right) {
  ProofTerm t;
  t.kind = TKind::Case;
  t.a = std::move(scrut);
  t.var = std::move(x);
  t.b = std::move(left);
  t.var2 = std::move(y);
  t.c = std::move(right);
  return mk_term(std::move(t));
}

TermPtr t_exfalso(FormulaPtr annot, TermPtr arg) {
  ProofTerm t;
  t.kind = TKind::Exfalso;
  t.annot = std::move(annot);
  t.a = std::move(arg);
  return mk_term(std::move(t));
}

TermPtr t_triv(TermPtr arg) {
  ProofTerm t;
  t.kind = TKind::Triv;
  t.a = std::move(arg);
  return mk_term(std::move(t));
}

TermPtr t_box(std::vector<BoxBinding> bindings, TermPtr body) {
  for (size_t i = 0; i < bindings.size(); ++i)
    for (size_t j = i + 1; j < bindings.size(); ++j)
      if (bindings[i].name == bindings[j].name)
        throw std::invalid_argument("duplicate box binder: " +
                                    bindings[i].name);
  ProofTerm t;
  t.kind = TKind::BoxIntro;
  t.bindings = std::move(bindings);
  t.body = std::move(body);
  return mk_term(std::move(t));
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

static void free_vars_rec(const TermPtr& t, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (t->kind) {
    case TKind::Var:
      if (!bound.count(t->var)) out.insert(t->var);
      return;
    case TKind::Lam: {
      bool fresh = bound.insert(t->var).second;
      free_vars_rec(t->a, bound, out);
      if (fresh) bound.erase(t->var);
      return;
    }
    case TKind::App:
    case TKind::Pair:
      free_vars_rec(t->a, bound, out);
      free_vars_rec(t->b, bound, out);
      return;
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Inj1:
    case TKind::Inj2:
    case TKind::Exfalso:
    case TKind::Triv:
      free_vars_rec(t->a, bound, out);
      return;
    case TKind::Case: {
      free_vars_rec(t->a, bound, out);
      bool fx = bound.insert(t->var).second;
      free_vars_rec(t->b, bound, out);
      if (fx) bound.erase(t->var);
      bool fy = bound.insert(t->var2).second;
      free_vars_rec(t->c, bound, out);
      if (fy) bound.erase(t->var2);
      return;
    }
    case TKind::BoxIntro: {
      // Binders bind only inside the body, not inside the bound arguments.
      for (const auto& b : t->bindings) free_vars_rec(b.arg, bound, out);
      std::vector<std::string> added;
      for (const auto& b : t->bindings)
        if (bound.insert(b.name).second) added.push_back(b.name);
      free_vars_rec(t->body, bound, out);
      for (const auto& n : added) bound.erase(n);
      return;
    }
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  free_vars_rec(t, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  std::string candidate = base;
  while (avoid.count(candidate)) candidate += '\'';
  return candidate;
}

static void bound_box_names_rec(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TKind::Var:
      return;
    case TKind::App:
    case TKind::Pair:
      bound_box_names_rec(t->a, out);
      bound_box_names_rec(t->b, out);
      return;
    case TKind::Case:
      bound_box_names_rec(t->a, out);
      bound_box_names_rec(t->b, out);
      bound_box_names_rec(t->c, out);
      return;
    case TKind::BoxIntro:
      for (const auto& b : t->bindings) {
        out.insert(b.name);
        bound_box_names_rec(b.arg, out);
      }
      bound_box_names_rec(t->body, out);
      return;
    default:
      bound_box_names_rec(t->a, out);
      return;
  }
}

std::set<std::string> bound_box_names(const TermPtr& t) {
  std::set<std::string> out;
  bound_box_names_rec(t, out);
  return out;
}

namespace {

// Freshening policy for one substitution run. A binder is renamed when it
// would capture a free variable of s, or (guarded runs only) when splicing s
// below it would make one of s's box binders shadow it. Fresh names stay
// clear of the replacement, the ambient scope, and every box binder under
// the body being renamed.
struct SubstGuard {
  std::set<std::string> fv_s;
  std::set<std::string> box_names_s;  // empty for plain substitution
  std::set<std::string> ambient;

  bool triggers(const std::string& name) const {
    return fv_s.count(name) || box_names_s.count(name);
  }
  std::set<std::string> avoid_for(const std::string& x,
                                  const TermPtr& body) const {
    std::set<std::string> avoid = fv_s;
    avoid.insert(box_names_s.begin(), box_names_s.end());
    avoid.insert(ambient.begin(), ambient.end());
    avoid.insert(x);
    auto fv_body = free_vars(body);
    avoid.insert(fv_body.begin(), fv_body.end());
    auto boxes = bound_box_names(body);
    avoid.insert(boxes.begin(), boxes.end());
    return avoid;
  }
};

TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& s,
                  const SubstGuard& g);

std::pair<std::string, TermPtr> freshen_binder(const std::string& name,
                                               const TermPtr& body,
                                               const std::string& x,
                                               const SubstGuard& g) {
  std::string fresh = fresh_name(name, g.avoid_for(x, body));
  if (fresh == name) return {name, body};
  return {fresh, substitute(body, name, t_var(fresh))};
}

TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& s,
                  const SubstGuard& g) {
  switch (t->kind) {
    case TKind::Var:
      return t->var == x ? s : t;
    case TKind::Lam: {
      if (t->var == x) return t;
      std::string name = t->var;
      TermPtr body = t->a;
      if (g.triggers(name)) {
        auto [n, b] = freshen_binder(name, body, x, g);
        name = n;
        body = b;
      }
      return t_lam(name, t->annot, subst_rec(body, x, s, g));
    }
    case TKind::App:
      return t_app(subst_rec(t->a, x, s, g), subst_rec(t->b, x, s, g));
    case TKind::Pair:
      return t_pair(subst_rec(t->a, x, s, g), subst_rec(t->b, x, s, g));
    case TKind::Proj1:
      return t_proj1(subst_rec(t->a, x, s, g));
    case TKind::Proj2:
      return t_proj2(subst_rec(t->a, x, s, g));
    case TKind::Inj1:
      return t_inj1(t->annot, subst_rec(t->a, x, s, g));
    case TKind::Inj2:
      return t_inj2(t->annot, subst_rec(t->a, x, s, g));
    case TKind::Exfalso:
      return t_exfalso(t->annot, subst_rec(t->a, x, s, g));
    case TKind::Triv:
      return t_triv(subst_rec(t->a, x, s, g));
    case TKind::Case: {
      TermPtr scrut = subst_rec(t->a, x, s, g);
      std::string xl = t->var;
      TermPtr left = t->b;
      if (xl != x) {
        if (g.triggers(xl)) {
          auto [n, b] = freshen_binder(xl, left, x, g);
          xl = n;
          left = b;
        }
        left = subst_rec(left, x, s, g);
      }
      std::string yr = t->var2;
      TermPtr right = t->c;
      if (yr != x) {
        if (g.triggers(yr)) {
          auto [n, b] = freshen_binder(yr, right, x, g);
          yr = n;
          right = b;
        }
        right = subst_rec(right, x, s, g);
      }
      return t_case(scrut, xl, left, yr, right);
    }
    case TKind::BoxIntro: {
      std::vector<BoxBinding> binds;
      binds.reserve(t->bindings.size());
      for (const auto& b : t->bindings)
        binds.push_back({b.name, b.annot, subst_rec(b.arg, x, s, g)});
      bool shadowed = false;
      for (const auto& b : binds)
        if (b.name == x) shadowed = true;
      if (shadowed) return t_box(std::move(binds), t->body);
      TermPtr body = t->body;
      std::set<std::string> taken;
      for (const auto& b : binds) taken.insert(b.name);
      for (auto& b : binds) {
        if (!g.triggers(b.name)) continue;
        std::set<std::string> avoid = g.avoid_for(x, body);
        avoid.insert(taken.begin(), taken.end());
        std::string fresh = fresh_name(b.name, avoid);
        body = substitute(body, b.name, t_var(fresh));
        taken.erase(b.name);
        taken.insert(fresh);
        b.name = fresh;
      }
      return t_box(std::move(binds), subst_rec(body, x, s, g));
    }
  }
  throw std::logic_error("substitute: unreachable");
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s) {
  SubstGuard g;
  g.fv_s = free_vars(s);
  return subst_rec(t, x, s, g);
}

TermPtr substitute_guarded(const TermPtr& t, const std::string& x,
                           const TermPtr& s,
                           const std::set<std::string>& ambient) {
  SubstGuard g;
  g.fv_s = free_vars(s);
  g.box_names_s = bound_box_names(s);
  g.ambient = ambient;
  return subst_rec(t, x, s, g);
}

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------

namespace {

// Parallel rename stacks; a bound variable is identified by the most recent
// entry mentioning it on either side.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool var_eq(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      bool hit_a = it->first == a;
      bool hit_b = it->second == b;
      if (hit_a || hit_b) return hit_a && hit_b;
    }
    return a == b;  // both free
  }
};

bool alpha_rec(const TermPtr& t, const TermPtr& u, AlphaEnv& env) {
  if (t->kind != u->kind) return false;
  switch (t->kind) {
    case TKind::Var:
      return env.var_eq(t->var, u->var);
    case TKind::Lam: {
      if (!formula_eq(t->annot, u->annot)) return false;
      env.pairs.push_back({t->var, u->var});
      bool ok = alpha_rec(t->a, u->a, env);
      env.pairs.pop_back();
      return ok;
    }
    case TKind::App:
    case TKind::Pair:
      return alpha_rec(t->a, u->a, env) && alpha_rec(t->b, u->b, env);
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Triv:
      return alpha_rec(t->a, u->a, env);
    case TKind::Inj1:
    case TKind::Inj2:
    case TKind::Exfalso:
      return formula_eq(t->annot, u->annot) && alpha_rec(t->a, u->a, env);
    case TKind::Case: {
      if (!alpha_rec(t->a, u->a, env)) return false;
      env.pairs.push_back({t->var, u->var});
      bool okl = alpha_rec(t->b, u->b, env);
      env.pairs.pop_back();
      if (!okl) return false;
      env.pairs.push_back({t->var2, u->var2});
      bool okr = alpha_rec(t->c, u->c, env);
      env.pairs.pop_back();
      return okr;
    }
    case TKind::BoxIntro: {
      if (t->bindings.size() != u->bindings.size()) return false;
      for (size_t i = 0; i < t->bindings.size(); ++i) {
        if (!formula_eq(t->bindings[i].annot, u->bindings[i].annot))
          return false;
        if (!alpha_rec(t->bindings[i].arg, u->bindings[i].arg, env))
          return false;
      }
      for (size_t i = 0; i < t->bindings.size(); ++i)
        env.pairs.push_back({t->bindings[i].name, u->bindings[i].name});
      bool ok = alpha_rec(t->body, u->body, env);
      for (size_t i = 0; i < t->bindings.size(); ++i) env.pairs.pop_back();
      return ok;
    }
  }
  throw std::logic_error("alpha_eq: unreachable");
}

void canon_rec(const TermPtr& t,
               std::vector<std::pair<std::string, std::string>>& renames,
               int& counter, std::string& out);

std::string canon_formula(const FormulaPtr& f);

void canon_formula_rec(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case FKind::Atom:
      out += f->atom;
      return;
    case FKind::Top:
      out += "T";
      return;
    case FKind::Bot:
      out += "F";
      return;
    case FKind::Impl:
      out += "(>";
      canon_formula_rec(f->lhs, out);
      out += ' ';
      canon_formula_rec(f->rhs, out);
      out += ')';
      return;
    case FKind::Conj:
      out += "(&";
      canon_formula_rec(f->lhs, out);
      out += ' ';
      canon_formula_rec(f->rhs, out);
      out += ')';
      return;
    case FKind::Disj:
      out += "(|";
      canon_formula_rec(f->lhs, out);
      out += ' ';
      canon_formula_rec(f->rhs, out);
      out += ')';
      return;
    case FKind::Box:
      out += "(#";
      canon_formula_rec(f->lhs, out);
      out += ')';
      return;
  }
}

std::string canon_formula(const FormulaPtr& f) {
  std::string out;
  canon_formula_rec(f, out);
  return out;
}

std::string canon_var(
    const std::string& name,
    const std::vector<std::pair<std::string, std::string>>& renames) {
  for (auto it = renames.rbegin(); it != renames.rend(); ++it)
    if (it->first == name) return it->second;
  return "!" + name;  // free variables keep their identity
}

void canon_rec(const TermPtr& t,
               std::vector<std::pair<std::string, std::string>>& renames,
               int& counter, std::string& out) {
  switch (t->kind) {
    case TKind::Var:
      out += canon_var(t->var, renames);
      return;
    case TKind::Lam: {
      std::string b = "b" + std::to_string(counter++);
      out += "(\\" + b + ":" + canon_formula(t->annot) + ".";
      renames.push_back({t->var, b});
      canon_rec(t->a, renames, counter, out);
      renames.pop_back();
      out += ')';
      return;
    }
    case TKind::App:
      out += "(@";
      canon_rec(t->a, renames, counter, out);
      out += ' ';
      canon_rec(t->b, renames, counter, out);
      out += ')';
      return;
    case TKind::Pair:
      out += "(,";
      canon_rec(t->a, renames, counter, out);
      out += ' ';
      canon_rec(t->b, renames, counter, out);
      out += ')';
      return;
    case TKind::Proj1:
      out += "(p1 ";
      canon_rec(t->a, renames, counter, out);
      out += ')';
      return;
    case TKind::Proj2:
      out += "(p2 ";
      canon_rec(t->a, renames, counter, out);
      out += ')';
      return;
    case TKind::Inj1:
    case TKind::Inj2:
      out += t->kind == TKind::Inj1 ? "(i1[" : "(i2[";
      out += canon_formula(t->annot);
      out += "] ";
      canon_rec(t->a, renames, counter, out);
      out += ')';
      return;
    case TKind::Exfalso:
      out += "(ex[" + canon_formula(t->annot) + "] ";
      canon_rec(t->a, renames, counter, out);
      out += ')';
      return;
    case TKind::Triv:
      out += "(tv ";
      canon_rec(t->a, renames, counter, out);
      out += ')';
      return;
    case TKind::Case: {
      out += "(cs ";
      canon_rec(t->a, renames, counter, out);
      std::string bx = "b" + std::to_string(counter++);
      out += " " + bx + ".";
      renames.push_back({t->var, bx});
      canon_rec(t->b, renames, counter, out);
      renames.pop_back();
      std::string by = "b" + std::to_string(counter++);
      out += " " + by + ".";
      renames.push_back({t->var2, by});
      canon_rec(t->c, renames, counter, out);
      renames.pop_back();
      out += ')';
      return;
    }
    case TKind::BoxIntro: {
      out += "(bx";
      for (const auto& b : t->bindings) {
        out += " [" + canon_formula(b.annot) + "=";
        canon_rec(b.arg, renames, counter, out);
        out += ']';
      }
      out += " .";
      std::vector<std::string> names;
      for (const auto& b : t->bindings) {
        std::string nb = "b" + std::to_string(counter++);
        renames.push_back({b.name, nb});
        names.push_back(nb);
      }
      canon_rec(t->body, renames, counter, out);
      for (size_t i = 0; i < t->bindings.size(); ++i) renames.pop_back();
      out += ')';
      return;
    }
  }
}

}  // namespace

bool alpha_eq(const TermPtr& t, const TermPtr& u) {
  AlphaEnv env;
  return alpha_rec(t, u, env);
}

std::string canonical_key(const TermPtr& t) {
  std::vector<std::pair<std::string, std::string>> renames;
  int counter = 0;
  std::string out;
  canon_rec(t, renames, counter, out);
  return out;
}

int term_size(const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var:
      return 1;
    case TKind::Lam:
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Inj1:
    case TKind::Inj2:
    case TKind::Exfalso:
    case TKind::Triv:
      return 1 + term_size(t->a);
    case TKind::App:
    case TKind::Pair:
      return 1 + term_size(t->a) + term_size(t->b);
    case TKind::Case:
      return 1 + term_size(t->a) + term_size(t->b) + term_size(t->c);
    case TKind::BoxIntro: {
      int n = 1 + term_size(t->body);
      for (const auto& b : t->bindings) n += term_size(b.arg);
      return n;
    }
  }
  throw std::logic_error("term_size: unreachable");
}

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

void Context::push(std::string name, FormulaPtr formula) {
  if (contains(name))
    throw std::invalid_argument("duplicate context variable: " + name);
  entries_.push_back({std::move(name), std::move(formula)});
}

const FormulaPtr* Context::lookup(const std::string& name) const {
  for (const auto& [n, f] : entries_)
    if (n == name) return &f;
  return nullptr;
}

bool Context::contains(const std::string& name) const {
  return lookup(name) != nullptr;
}

}  // namespace ielc
