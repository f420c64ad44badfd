#include "ielc/stlc.hpp"

#include <deque>
#include <map>
#include <set>

namespace ielc {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

static StlcTypePtr mk_type(StlcType t) {
  return std::make_shared<const StlcType>(std::move(t));
}

StlcTypePtr s_unit() {
  static const StlcTypePtr t = mk_type({SKind::Unit, "", nullptr, nullptr});
  return t;
}
StlcTypePtr s_empty() {
  static const StlcTypePtr t = mk_type({SKind::Empty, "", nullptr, nullptr});
  return t;
}
StlcTypePtr s_atom(std::string name) {
  return mk_type({SKind::Atom, std::move(name), nullptr, nullptr});
}
StlcTypePtr s_q() {
  static const StlcTypePtr t = mk_type({SKind::Q, "", nullptr, nullptr});
  return t;
}
StlcTypePtr s_arrow(StlcTypePtr a, StlcTypePtr b) {
  return mk_type({SKind::Arrow, "", std::move(a), std::move(b)});
}
StlcTypePtr s_product(StlcTypePtr a, StlcTypePtr b) {
  return mk_type({SKind::Product, "", std::move(a), std::move(b)});
}
StlcTypePtr s_sum(StlcTypePtr a, StlcTypePtr b) {
  return mk_type({SKind::Sum, "", std::move(a), std::move(b)});
}

bool stlc_type_eq(const StlcTypePtr& a, const StlcTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SKind::Unit:
    case SKind::Empty:
    case SKind::Q:
      return true;
    case SKind::Atom:
      return a->atom == b->atom;
    default:
      return stlc_type_eq(a->lhs, b->lhs) && stlc_type_eq(a->rhs, b->rhs);
  }
}

// Arrow 1 (right associative), Sum 2, Product 3, leaves 4. The answer atom
// displays as a plain q, matching the erasure clause's usual presentation.
static void print_type_rec(const StlcTypePtr& t, int min_prec,
                           std::string& out) {
  switch (t->kind) {
    case SKind::Unit:
      out += '1';
      return;
    case SKind::Empty:
      out += '0';
      return;
    case SKind::Atom:
      out += t->atom;
      return;
    case SKind::Q:
      out += 'q';
      return;
    case SKind::Arrow: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      print_type_rec(t->lhs, 2, out);
      out += " -> ";
      print_type_rec(t->rhs, 1, out);
      if (paren) out += ')';
      return;
    }
    case SKind::Sum: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      print_type_rec(t->lhs, 2, out);
      out += " + ";
      print_type_rec(t->rhs, 3, out);
      if (paren) out += ')';
      return;
    }
    case SKind::Product: {
      bool paren = min_prec > 3;
      if (paren) out += '(';
      print_type_rec(t->lhs, 3, out);
      out += " * ";
      print_type_rec(t->rhs, 4, out);
      if (paren) out += ')';
      return;
    }
  }
}

std::string print_stlc_type(const StlcTypePtr& t) {
  std::string out;
  print_type_rec(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

static StlcTermPtr mk(StlcTerm t) {
  return std::make_shared<const StlcTerm>(std::move(t));
}

StlcTermPtr st_var(std::string x) {
  StlcTerm t;
  t.kind = STKind::Var;
  t.var = std::move(x);
  return mk(std::move(t));
}
StlcTermPtr st_lam(std::string x, StlcTypePtr annot, StlcTermPtr body) {
  StlcTerm t;
  t.kind = STKind::Lam;
  t.var = std::move(x);
  t.annot = std::move(annot);
  t.a = std::move(body);
  return mk(std::move(t));
}
StlcTermPtr st_app(StlcTermPtr f, StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::App;
  t.a = std::move(f);
  t.b = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_pair(StlcTermPtr a, StlcTermPtr b) {
  StlcTerm t;
  t.kind = STKind::Pair;
  t.a = std::move(a);
  t.b = std::move(b);
  return mk(std::move(t));
}
StlcTermPtr st_proj1(StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Proj1;
  t.a = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_proj2(StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Proj2;
  t.a = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_inj1(StlcTypePtr sum, StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Inj1;
  t.annot = std::move(sum);
  t.a = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_inj2(StlcTypePtr sum, StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Inj2;
  t.annot = std::move(sum);
  t.a = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_case(StlcTermPtr s, std::string x, StlcTermPtr l, std::string y,
                    StlcTermPtr r) {
  StlcTerm t;
  t.kind = STKind::Case;
  t.a = std::move(s);
  t.var = std::move(x);
  t.b = std::move(l);
  t.var2 = std::move(y);
  t.c = std::move(r);
  return mk(std::move(t));
}
StlcTermPtr st_exfalso(StlcTypePtr annot, StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Exfalso;
  t.annot = std::move(annot);
  t.a = std::move(a);
  return mk(std::move(t));
}
StlcTermPtr st_triv(StlcTermPtr a) {
  StlcTerm t;
  t.kind = STKind::Triv;
  t.a = std::move(a);
  return mk(std::move(t));
}

int stlc_term_size(const StlcTermPtr& t) {
  switch (t->kind) {
    case STKind::Var:
      return 1;
    case STKind::App:
    case STKind::Pair:
      return 1 + stlc_term_size(t->a) + stlc_term_size(t->b);
    case STKind::Case:
      return 1 + stlc_term_size(t->a) + stlc_term_size(t->b) +
             stlc_term_size(t->c);
    default:
      return 1 + stlc_term_size(t->a);
  }
}

static void sfv_rec(const StlcTermPtr& t, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (t->kind) {
    case STKind::Var:
      if (!bound.count(t->var)) out.insert(t->var);
      return;
    case STKind::Lam: {
      bool fresh = bound.insert(t->var).second;
      sfv_rec(t->a, bound, out);
      if (fresh) bound.erase(t->var);
      return;
    }
    case STKind::App:
    case STKind::Pair:
      sfv_rec(t->a, bound, out);
      sfv_rec(t->b, bound, out);
      return;
    case STKind::Case: {
      sfv_rec(t->a, bound, out);
      bool fx = bound.insert(t->var).second;
      sfv_rec(t->b, bound, out);
      if (fx) bound.erase(t->var);
      bool fy = bound.insert(t->var2).second;
      sfv_rec(t->c, bound, out);
      if (fy) bound.erase(t->var2);
      return;
    }
    default:
      sfv_rec(t->a, bound, out);
      return;
  }
}

std::set<std::string> stlc_free_vars(const StlcTermPtr& t) {
  std::set<std::string> bound, out;
  sfv_rec(t, bound, out);
  return out;
}

static StlcTermPtr ssub(const StlcTermPtr& t, const std::string& x,
                        const StlcTermPtr& s,
                        const std::set<std::string>& fv_s);

static std::pair<std::string, StlcTermPtr> sfreshen(
    const std::string& name, const StlcTermPtr& body, const std::string& x,
    const std::set<std::string>& fv_s) {
  std::set<std::string> avoid = fv_s;
  avoid.insert(x);
  auto fv_body = stlc_free_vars(body);
  avoid.insert(fv_body.begin(), fv_body.end());
  std::string fresh = fresh_name(name, avoid);
  if (fresh == name) return {name, body};
  return {fresh, stlc_substitute(body, name, st_var(fresh))};
}

static StlcTermPtr ssub(const StlcTermPtr& t, const std::string& x,
                        const StlcTermPtr& s,
                        const std::set<std::string>& fv_s) {
  switch (t->kind) {
    case STKind::Var:
      return t->var == x ? s : t;
    case STKind::Lam: {
      if (t->var == x) return t;
      std::string name = t->var;
      StlcTermPtr body = t->a;
      if (fv_s.count(name)) {
        auto [n, b] = sfreshen(name, body, x, fv_s);
        name = n;
        body = b;
      }
      return st_lam(name, t->annot, ssub(body, x, s, fv_s));
    }
    case STKind::App:
      return st_app(ssub(t->a, x, s, fv_s), ssub(t->b, x, s, fv_s));
    case STKind::Pair:
      return st_pair(ssub(t->a, x, s, fv_s), ssub(t->b, x, s, fv_s));
    case STKind::Proj1:
      return st_proj1(ssub(t->a, x, s, fv_s));
    case STKind::Proj2:
      return st_proj2(ssub(t->a, x, s, fv_s));
    case STKind::Inj1:
      return st_inj1(t->annot, ssub(t->a, x, s, fv_s));
    case STKind::Inj2:
      return st_inj2(t->annot, ssub(t->a, x, s, fv_s));
    case STKind::Exfalso:
      return st_exfalso(t->annot, ssub(t->a, x, s, fv_s));
    case STKind::Triv:
      return st_triv(ssub(t->a, x, s, fv_s));
    case STKind::Case: {
      StlcTermPtr scrut = ssub(t->a, x, s, fv_s);
      std::string xl = t->var;
      StlcTermPtr left = t->b;
      if (xl != x) {
        if (fv_s.count(xl)) {
          auto [n, b] = sfreshen(xl, left, x, fv_s);
          xl = n;
          left = b;
        }
        left = ssub(left, x, s, fv_s);
      }
      std::string yr = t->var2;
      StlcTermPtr right = t->c;
      if (yr != x) {
        if (fv_s.count(yr)) {
          auto [n, b] = sfreshen(yr, right, x, fv_s);
          yr = n;
          right = b;
        }
        right = ssub(right, x, s, fv_s);
      }
      return st_case(scrut, xl, left, yr, right);
    }
  }
  throw std::logic_error("stlc_substitute: unreachable");
}

StlcTermPtr stlc_substitute(const StlcTermPtr& t, const std::string& x,
                            const StlcTermPtr& s) {
  return ssub(t, x, s, stlc_free_vars(s));
}

namespace {

struct SAlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;
  bool var_eq(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      bool ha = it->first == a, hb = it->second == b;
      if (ha || hb) return ha && hb;
    }
    return a == b;
  }
};

bool salpha(const StlcTermPtr& t, const StlcTermPtr& u, SAlphaEnv& env) {
  if (t->kind != u->kind) return false;
  switch (t->kind) {
    case STKind::Var:
      return env.var_eq(t->var, u->var);
    case STKind::Lam: {
      if (!stlc_type_eq(t->annot, u->annot)) return false;
      env.pairs.push_back({t->var, u->var});
      bool ok = salpha(t->a, u->a, env);
      env.pairs.pop_back();
      return ok;
    }
    case STKind::App:
    case STKind::Pair:
      return salpha(t->a, u->a, env) && salpha(t->b, u->b, env);
    case STKind::Proj1:
    case STKind::Proj2:
    case STKind::Triv:
      return salpha(t->a, u->a, env);
    case STKind::Inj1:
    case STKind::Inj2:
    case STKind::Exfalso:
      return stlc_type_eq(t->annot, u->annot) && salpha(t->a, u->a, env);
    case STKind::Case: {
      if (!salpha(t->a, u->a, env)) return false;
      env.pairs.push_back({t->var, u->var});
      bool okl = salpha(t->b, u->b, env);
      env.pairs.pop_back();
      if (!okl) return false;
      env.pairs.push_back({t->var2, u->var2});
      bool okr = salpha(t->c, u->c, env);
      env.pairs.pop_back();
      return okr;
    }
  }
  throw std::logic_error("stlc_alpha_eq: unreachable");
}

std::string canon_var(
    const std::string& name,
    const std::vector<std::pair<std::string, std::string>>& renames) {
  for (auto it = renames.rbegin(); it != renames.rend(); ++it)
    if (it->first == name) return it->second;
  return "!" + name;
}

void scanon(const StlcTermPtr& t,
            std::vector<std::pair<std::string, std::string>>& renames,
            int& counter, std::string& out) {
  switch (t->kind) {
    case STKind::Var:
      out += canon_var(t->var, renames);
      return;
    case STKind::Lam: {
      std::string b = "b" + std::to_string(counter++);
      out += "(\\" + b + ":" + print_stlc_type(t->annot) + ".";
      renames.push_back({t->var, b});
      scanon(t->a, renames, counter, out);
      renames.pop_back();
      out += ')';
      return;
    }
    case STKind::App:
    case STKind::Pair:
      out += t->kind == STKind::App ? "(@" : "(,";
      scanon(t->a, renames, counter, out);
      out += ' ';
      scanon(t->b, renames, counter, out);
      out += ')';
      return;
    case STKind::Proj1:
    case STKind::Proj2:
      out += t->kind == STKind::Proj1 ? "(p1 " : "(p2 ";
      scanon(t->a, renames, counter, out);
      out += ')';
      return;
    case STKind::Inj1:
    case STKind::Inj2:
      out += t->kind == STKind::Inj1 ? "(i1[" : "(i2[";
      out += print_stlc_type(t->annot);
      out += "] ";
      scanon(t->a, renames, counter, out);
      out += ')';
      return;
    case STKind::Exfalso:
      out += "(ex[" + print_stlc_type(t->annot) + "] ";
      scanon(t->a, renames, counter, out);
      out += ')';
      return;
    case STKind::Triv:
      out += "(tv ";
      scanon(t->a, renames, counter, out);
      out += ')';
      return;
    case STKind::Case: {
      out += "(cs ";
      scanon(t->a, renames, counter, out);
      std::string bx = "b" + std::to_string(counter++);
      out += " " + bx + ".";
      renames.push_back({t->var, bx});
      scanon(t->b, renames, counter, out);
      renames.pop_back();
      std::string by = "b" + std::to_string(counter++);
      out += " " + by + ".";
      renames.push_back({t->var2, by});
      scanon(t->c, renames, counter, out);
      renames.pop_back();
      out += ')';
      return;
    }
  }
}

}  // namespace

bool stlc_alpha_eq(const StlcTermPtr& t, const StlcTermPtr& u) {
  SAlphaEnv env;
  return salpha(t, u, env);
}

std::string stlc_canonical_key(const StlcTermPtr& t) {
  std::vector<std::pair<std::string, std::string>> renames;
  int counter = 0;
  std::string out;
  scanon(t, renames, counter, out);
  return out;
}

std::string print_stlc_term(const StlcTermPtr& t) {
  // Display only; annotations are dropped, mirroring the erasure's usual
  // presentation.
  switch (t->kind) {
    case STKind::Var:
      return t->var;
    case STKind::Lam:
      return "\\" + t->var + ". " + print_stlc_term(t->a);
    case STKind::App: {
      std::string f = print_stlc_term(t->a);
      if (t->a->kind == STKind::Lam || t->a->kind == STKind::Case)
        f = "(" + f + ")";
      std::string a = print_stlc_term(t->b);
      if (t->b->kind != STKind::Var) a = "(" + a + ")";
      return f + " " + a;
    }
    case STKind::Pair:
      return "<" + print_stlc_term(t->a) + ", " + print_stlc_term(t->b) + ">";
    case STKind::Proj1:
    case STKind::Proj2: {
      std::string a = print_stlc_term(t->a);
      if (t->a->kind != STKind::Var) a = "(" + a + ")";
      return (t->kind == STKind::Proj1 ? "fst " : "snd ") + a;
    }
    case STKind::Inj1:
    case STKind::Inj2: {
      std::string a = print_stlc_term(t->a);
      if (t->a->kind != STKind::Var) a = "(" + a + ")";
      return (t->kind == STKind::Inj1 ? "inl " : "inr ") + a;
    }
    case STKind::Exfalso: {
      std::string a = print_stlc_term(t->a);
      if (t->a->kind != STKind::Var) a = "(" + a + ")";
      return "abort " + a;
    }
    case STKind::Triv: {
      std::string a = print_stlc_term(t->a);
      if (t->a->kind != STKind::Var) a = "(" + a + ")";
      return "triv " + a;
    }
    case STKind::Case:
      return "case " + print_stlc_term(t->a) + " of { inl " + t->var +
             " -> " + print_stlc_term(t->b) + " | inr " + t->var2 + " -> " +
             print_stlc_term(t->c) + " }";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Typechecker (oracle sanity)
// ---------------------------------------------------------------------------

StlcTypePtr stlc_infer(StlcEnv env, const StlcTermPtr& t) {
  auto fail = [&](const std::string& msg) -> StlcTypePtr {
    throw StlcTypeError("stlc: " + msg);
  };
  switch (t->kind) {
    case STKind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t->var) return it->second;
      return fail("unbound variable '" + t->var + "'");
    case STKind::Lam: {
      env.push_back({t->var, t->annot});
      StlcTypePtr body = stlc_infer(env, t->a);
      return s_arrow(t->annot, body);
    }
    case STKind::App: {
      StlcTypePtr fn = stlc_infer(env, t->a);
      StlcTypePtr arg = stlc_infer(env, t->b);
      if (fn->kind != SKind::Arrow) return fail("applying a non-function");
      if (!stlc_type_eq(fn->lhs, arg))
        return fail("argument type mismatch: expected " +
                    print_stlc_type(fn->lhs) + ", found " +
                    print_stlc_type(arg));
      return fn->rhs;
    }
    case STKind::Pair:
      return s_product(stlc_infer(env, t->a), stlc_infer(env, t->b));
    case STKind::Proj1:
    case STKind::Proj2: {
      StlcTypePtr p = stlc_infer(env, t->a);
      if (p->kind != SKind::Product) return fail("projecting a non-product");
      return t->kind == STKind::Proj1 ? p->lhs : p->rhs;
    }
    case STKind::Inj1:
    case STKind::Inj2: {
      if (t->annot->kind != SKind::Sum)
        return fail("injection annotation is not a sum");
      StlcTypePtr arg = stlc_infer(env, t->a);
      const StlcTypePtr& side =
          t->kind == STKind::Inj1 ? t->annot->lhs : t->annot->rhs;
      if (!stlc_type_eq(side, arg)) return fail("injection type mismatch");
      return t->annot;
    }
    case STKind::Case: {
      StlcTypePtr s = stlc_infer(env, t->a);
      if (s->kind != SKind::Sum) return fail("case over a non-sum");
      StlcEnv envl = env;
      envl.push_back({t->var, s->lhs});
      StlcTypePtr left = stlc_infer(envl, t->b);
      StlcEnv envr = env;
      envr.push_back({t->var2, s->rhs});
      StlcTypePtr right = stlc_infer(envr, t->c);
      if (!stlc_type_eq(left, right)) return fail("case branches disagree");
      return left;
    }
    case STKind::Exfalso: {
      StlcTypePtr arg = stlc_infer(env, t->a);
      if (arg->kind != SKind::Empty) return fail("abort premise is not empty");
      return t->annot;
    }
    case STKind::Triv:
      stlc_infer(env, t->a);
      return s_unit();
  }
  throw std::logic_error("stlc_infer: unreachable");
}

// ---------------------------------------------------------------------------
// Erasure
// ---------------------------------------------------------------------------

StlcTypePtr erase_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
      return s_atom(f->atom);
    case FKind::Top:
      return s_unit();
    case FKind::Bot:
      return s_empty();
    case FKind::Impl:
      return s_arrow(erase_formula(f->lhs), erase_formula(f->rhs));
    case FKind::Conj:
      return s_product(erase_formula(f->lhs), erase_formula(f->rhs));
    case FKind::Disj:
      return s_sum(erase_formula(f->lhs), erase_formula(f->rhs));
    case FKind::Box:
      // |box A| = (|A| -> q) -> q
      return s_arrow(s_arrow(erase_formula(f->lhs), s_q()), s_q());
  }
  throw std::logic_error("erase_formula: unreachable");
}

namespace {

using FEnv = std::vector<std::pair<std::string, FormulaPtr>>;

StlcTermPtr erase_rec(FEnv& env, const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var:
      return st_var(t->var);
    case TKind::Lam: {
      env.push_back({t->var, t->annot});
      StlcTermPtr body = erase_rec(env, t->a);
      env.pop_back();
      return st_lam(t->var, erase_formula(t->annot), body);
    }
    case TKind::App:
      return st_app(erase_rec(env, t->a), erase_rec(env, t->b));
    case TKind::Pair:
      return st_pair(erase_rec(env, t->a), erase_rec(env, t->b));
    case TKind::Proj1:
      return st_proj1(erase_rec(env, t->a));
    case TKind::Proj2:
      return st_proj2(erase_rec(env, t->a));
    case TKind::Inj1:
      return st_inj1(erase_formula(t->annot), erase_rec(env, t->a));
    case TKind::Inj2:
      return st_inj2(erase_formula(t->annot), erase_rec(env, t->a));
    case TKind::Exfalso:
      return st_exfalso(erase_formula(t->annot), erase_rec(env, t->a));
    case TKind::Triv:
      return st_triv(erase_rec(env, t->a));
    case TKind::Case: {
      FormulaPtr sum = infer_with_env(env, t->a);
      StlcTermPtr scrut = erase_rec(env, t->a);
      env.push_back({t->var, sum->lhs});
      StlcTermPtr left = erase_rec(env, t->b);
      env.pop_back();
      env.push_back({t->var2, sum->rhs});
      StlcTermPtr right = erase_rec(env, t->c);
      env.pop_back();
      return st_case(scrut, t->var, left, t->var2, right);
    }
    case TKind::BoxIntro: {
      // |box [x1=t1,...,xn=tn] in s| = \k. |t1| (\x1. ... |tn| (\xn. k |s|))
      FEnv inner = env;
      for (const auto& b : t->bindings) inner.push_back({b.name, b.annot});
      FormulaPtr body_formula = infer_with_env(inner, t->body);
      std::set<std::string> avoid = free_vars(t);
      for (const auto& b : t->bindings) avoid.insert(b.name);
      std::string k = fresh_name("k", avoid);
      StlcTermPtr cur = st_app(st_var(k), erase_rec(inner, t->body));
      for (size_t i = t->bindings.size(); i-- > 0;) {
        const BoxBinding& b = t->bindings[i];
        cur = st_app(erase_rec(env, b.arg),
                     st_lam(b.name, erase_formula(b.annot), cur));
      }
      return st_lam(k, s_arrow(erase_formula(body_formula), s_q()), cur);
    }
  }
  throw std::logic_error("erase_term: unreachable");
}

}  // namespace

StlcTermPtr erase_term(const Context& ctx, const TermPtr& t) {
  FEnv env = ctx.entries();
  return erase_rec(env, t);
}

StlcTermPtr erase_term(const TermPtr& t) { return erase_term(Context{}, t); }

// ---------------------------------------------------------------------------
// Reduction: beta + eta + commuting conversions
// ---------------------------------------------------------------------------

namespace {

int schild_count(const StlcTermPtr& t) {
  switch (t->kind) {
    case STKind::Var: return 0;
    case STKind::App:
    case STKind::Pair: return 2;
    case STKind::Case: return 3;
    default: return 1;
  }
}

StlcTermPtr sget_child(const StlcTermPtr& t, int k) {
  switch (k) {
    case 0: return t->a;
    case 1: return t->b;
    default: return t->c;
  }
}

StlcTermPtr swith_child(const StlcTermPtr& t, int k, StlcTermPtr c) {
  switch (t->kind) {
    case STKind::Lam:
      return st_lam(t->var, t->annot, std::move(c));
    case STKind::App:
      return k == 0 ? st_app(std::move(c), t->b) : st_app(t->a, std::move(c));
    case STKind::Pair:
      return k == 0 ? st_pair(std::move(c), t->b)
                    : st_pair(t->a, std::move(c));
    case STKind::Proj1:
      return st_proj1(std::move(c));
    case STKind::Proj2:
      return st_proj2(std::move(c));
    case STKind::Inj1:
      return st_inj1(t->annot, std::move(c));
    case STKind::Inj2:
      return st_inj2(t->annot, std::move(c));
    case STKind::Exfalso:
      return st_exfalso(t->annot, std::move(c));
    case STKind::Triv:
      return st_triv(std::move(c));
    case STKind::Case:
      if (k == 0) return st_case(std::move(c), t->var, t->b, t->var2, t->c);
      if (k == 1) return st_case(t->a, t->var, std::move(c), t->var2, t->c);
      return st_case(t->a, t->var, t->b, t->var2, std::move(c));
    default:
      throw std::logic_error("swith_child: bad position");
  }
}

std::pair<std::string, StlcTermPtr> sguard(
    const std::string& binder, const StlcTermPtr& branch,
    const std::set<std::string>& incoming) {
  if (!incoming.count(binder)) return {binder, branch};
  std::set<std::string> avoid = incoming;
  auto fv = stlc_free_vars(branch);
  avoid.insert(fv.begin(), fv.end());
  std::string fresh = fresh_name(binder, avoid);
  return {fresh, stlc_substitute(branch, binder, st_var(fresh))};
}

bool case_or_abort(const StlcTermPtr& t) {
  return t->kind == STKind::Case || t->kind == STKind::Exfalso;
}

// All root steps. restricted_eta keeps eta away from case/abort-headed
// subjects: together with the commuting conversions those overlaps are the
// classic source of distinct normal forms.
void srules(const StlcTermPtr& t, bool restricted_eta,
            std::vector<StlcTermPtr>& out) {
  switch (t->kind) {
    case STKind::App: {
      const StlcTermPtr& f = t->a;
      if (f->kind == STKind::Lam)
        out.push_back(stlc_substitute(f->a, f->var, t->b));
      if (f->kind == STKind::Case) {
        auto fv = stlc_free_vars(t->b);
        auto [x, l] = sguard(f->var, f->b, fv);
        auto [y, r] = sguard(f->var2, f->c, fv);
        out.push_back(
            st_case(f->a, x, st_app(l, t->b), y, st_app(r, t->b)));
      }
      if (f->kind == STKind::Exfalso && f->annot->kind == SKind::Arrow)
        out.push_back(st_exfalso(f->annot->rhs, f->a));
      break;
    }
    case STKind::Proj1:
    case STKind::Proj2: {
      bool fst = t->kind == STKind::Proj1;
      const StlcTermPtr& p = t->a;
      if (p->kind == STKind::Pair) out.push_back(fst ? p->a : p->b);
      if (p->kind == STKind::Case)
        out.push_back(st_case(p->a, p->var,
                              fst ? st_proj1(p->b) : st_proj2(p->b), p->var2,
                              fst ? st_proj1(p->c) : st_proj2(p->c)));
      if (p->kind == STKind::Exfalso && p->annot->kind == SKind::Product)
        out.push_back(st_exfalso(fst ? p->annot->lhs : p->annot->rhs, p->a));
      break;
    }
    case STKind::Case: {
      const StlcTermPtr& s = t->a;
      if (s->kind == STKind::Inj1)
        out.push_back(stlc_substitute(t->b, t->var, s->a));
      if (s->kind == STKind::Inj2)
        out.push_back(stlc_substitute(t->c, t->var2, s->a));
      if (s->kind == STKind::Case) {
        std::set<std::string> fv = stlc_free_vars(t->b);
        fv.erase(t->var);
        std::set<std::string> fv2 = stlc_free_vars(t->c);
        fv2.erase(t->var2);
        fv.insert(fv2.begin(), fv2.end());
        auto [x, l] = sguard(s->var, s->b, fv);
        auto [y, r] = sguard(s->var2, s->c, fv);
        out.push_back(st_case(s->a, x,
                              st_case(l, t->var, t->b, t->var2, t->c), y,
                              st_case(r, t->var, t->b, t->var2, t->c)));
      }
      // eta for sums stays out of >>: it is not part of the usual beta-eta
      // relation for this calculus.
      break;
    }
    case STKind::Exfalso: {
      const StlcTermPtr& e = t->a;
      if (e->kind == STKind::Case)
        out.push_back(st_case(e->a, e->var, st_exfalso(t->annot, e->b),
                              e->var2, st_exfalso(t->annot, e->c)));
      if (e->kind == STKind::Exfalso && e->annot->kind == SKind::Empty)
        out.push_back(st_exfalso(t->annot, e->a));
      break;
    }
    case STKind::Lam:
      if (t->a->kind == STKind::App && t->a->b->kind == STKind::Var &&
          t->a->b->var == t->var &&
          !stlc_free_vars(t->a->a).count(t->var) &&
          !(restricted_eta && case_or_abort(t->a->a)))
        out.push_back(t->a->a);
      break;
    case STKind::Pair:
      if (t->a->kind == STKind::Proj1 && t->b->kind == STKind::Proj2 &&
          stlc_alpha_eq(t->a->a, t->b->a) &&
          !(restricted_eta && case_or_abort(t->a->a)))
        out.push_back(t->a->a);
      break;
    default:
      break;
  }
}

std::optional<StlcTermPtr> sstep_lo(const StlcTermPtr& t) {
  std::vector<StlcTermPtr> here;
  srules(t, /*restricted_eta=*/true, here);
  if (!here.empty()) return here[0];
  int n = schild_count(t);
  for (int k = 0; k < n; ++k)
    if (auto sub = sstep_lo(sget_child(t, k)))
      return swith_child(t, k, *sub);
  return std::nullopt;
}

std::optional<StlcTermPtr> sstep_ri(const StlcTermPtr& t) {
  int n = schild_count(t);
  for (int k = n - 1; k >= 0; --k)
    if (auto sub = sstep_ri(sget_child(t, k)))
      return swith_child(t, k, *sub);
  std::vector<StlcTermPtr> here;
  srules(t, /*restricted_eta=*/true, here);
  if (!here.empty()) return here[0];
  return std::nullopt;
}

}  // namespace

std::vector<StlcTermPtr> stlc_all_steps(const StlcTermPtr& t) {
  std::vector<StlcTermPtr> out;
  srules(t, /*restricted_eta=*/false, out);
  int n = schild_count(t);
  for (int k = 0; k < n; ++k)
    for (auto& sub : stlc_all_steps(sget_child(t, k)))
      out.push_back(swith_child(t, k, sub));
  return out;
}

std::optional<StlcTermPtr> stlc_step(const StlcTermPtr& t, Strategy strat) {
  return strat == Strategy::LeftmostOutermost ? sstep_lo(t) : sstep_ri(t);
}

StlcTermPtr stlc_normalize(const StlcTermPtr& t, int budget, Strategy strat) {
  StlcTermPtr cur = t;
  for (int i = 0; i < budget; ++i) {
    auto next = stlc_step(cur, strat);
    if (!next) return cur;
    cur = *next;
  }
  if (!stlc_step(cur, strat)) return cur;
  throw StepBudgetExceeded(budget);
}

SearchVerdict simulates(const Context& ctx, const TermPtr& t,
                        const TermPtr& t2, int budget) {
  StlcTermPtr a = erase_term(ctx, t);
  StlcTermPtr b = erase_term(ctx, t2);
  std::string target = stlc_canonical_key(b);
  // At least one >>-step is required; erasures coinciding outright would
  // falsify the simulation statement rather than satisfy it.
  std::set<std::string> visited;
  std::deque<StlcTermPtr> queue;
  visited.insert(stlc_canonical_key(a));
  queue.push_back(a);
  int expansions = 0;
  while (!queue.empty()) {
    if (expansions >= budget) return SearchVerdict::OutOfBudget;
    StlcTermPtr cur = queue.front();
    queue.pop_front();
    ++expansions;
    for (auto& succ : stlc_all_steps(cur)) {
      std::string key = stlc_canonical_key(succ);
      if (key == target) return SearchVerdict::Yes;
      if (visited.insert(key).second) queue.push_back(succ);
    }
  }
  return SearchVerdict::No;
}

SearchVerdict simulates(const TermPtr& t, const TermPtr& t2, int budget) {
  return simulates(Context{}, t, t2, budget);
}

}  // namespace ielc
