#include "ielc/typecheck.hpp"

#include "ielc/printer.hpp"

namespace ielc {

namespace {

using Env = std::vector<std::pair<std::string, FormulaPtr>>;

std::string path_str(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::string s;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(path[i]);
  }
  return s;
}

[[noreturn]] void mismatch(const std::vector<int>& path,
                           const FormulaPtr& expected, const FormulaPtr& found,
                           const std::string& where) {
  throw TypeError(TypeErrorCode::TypeMismatch, path, expected, found,
                  "type mismatch at " + path_str(path) + " (" + where +
                      "): expected " + print_formula(expected) + ", found " +
                      print_formula(found));
}

struct Checker {
  Env env;
  std::vector<int> at;

  const FormulaPtr* lookup(const std::string& x) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  FormulaPtr child(const TermPtr& t, int index) {
    at.push_back(index);
    const TermPtr& sub = index == 0   ? t->a
                         : index == 1 ? t->b
                                      : t->c;
    FormulaPtr r = run(sub);
    at.pop_back();
    return r;
  }

  FormulaPtr run(const TermPtr& t) {
    switch (t->kind) {
      case TKind::Var: {
        const FormulaPtr* f = lookup(t->var);
        if (!f)
          throw TypeError(TypeErrorCode::UnboundVariable, at, nullptr, nullptr,
                          "unbound variable '" + t->var + "' at " +
                              path_str(at));
        return *f;
      }
      case TKind::Lam: {
        env.push_back({t->var, t->annot});
        FormulaPtr body = child(t, 0);
        env.pop_back();
        return f_impl(t->annot, body);
      }
      case TKind::App: {
        FormulaPtr fn = child(t, 0);
        FormulaPtr arg = child(t, 1);
        if (fn->kind != FKind::Impl)
          mismatch(at, f_impl(arg, f_atom("a")), fn,
                   "function position of application");
        if (!formula_eq(fn->lhs, arg))
          mismatch(at, fn->lhs, arg, "argument of application");
        return fn->rhs;
      }
      case TKind::Pair:
        return f_conj(child(t, 0), child(t, 1));
      case TKind::Proj1:
      case TKind::Proj2: {
        FormulaPtr p = child(t, 0);
        if (p->kind != FKind::Conj)
          mismatch(at, f_conj(f_atom("a"), f_atom("b")), p,
                   "projection argument");
        return t->kind == TKind::Proj1 ? p->lhs : p->rhs;
      }
      case TKind::Inj1:
      case TKind::Inj2: {
        // Constructor invariant: annot is a disjunction.
        FormulaPtr arg = child(t, 0);
        const FormulaPtr& side =
            t->kind == TKind::Inj1 ? t->annot->lhs : t->annot->rhs;
        if (!formula_eq(side, arg))
          mismatch(at, side, arg, "injection argument");
        return t->annot;
      }
      case TKind::Case: {
        FormulaPtr scrut = child(t, 0);
        if (scrut->kind != FKind::Disj)
          mismatch(at, f_disj(f_atom("a"), f_atom("b")), scrut,
                   "case scrutinee");
        env.push_back({t->var, scrut->lhs});
        FormulaPtr left = child(t, 1);
        env.pop_back();
        env.push_back({t->var2, scrut->rhs});
        FormulaPtr right = child(t, 2);
        env.pop_back();
        if (!formula_eq(left, right))
          mismatch(at, left, right, "case branches disagree");
        return left;
      }
      case TKind::Exfalso: {
        FormulaPtr arg = child(t, 0);
        if (arg->kind != FKind::Bot) mismatch(at, f_bot(), arg, "abort premise");
        return t->annot;
      }
      case TKind::Triv: {
        child(t, 0);
        return f_top();
      }
      case TKind::BoxIntro: {
        for (size_t i = 0; i < t->bindings.size(); ++i) {
          const BoxBinding& b = t->bindings[i];
          at.push_back(static_cast<int>(i));
          FormulaPtr arg = run(b.arg);
          if (arg->kind != FKind::Box)
            throw TypeError(TypeErrorCode::NonBoxArgument, at,
                            f_box(b.annot), arg,
                            "box argument for '" + b.name + "' at " +
                                path_str(at) + " has type " +
                                print_formula(arg) + ", not a box formula");
          if (!formula_eq(arg->lhs, b.annot))
            mismatch(at, f_box(b.annot), arg, "box argument annotation");
          at.pop_back();
        }
        for (const BoxBinding& b : t->bindings) {
          if (lookup(b.name))
            throw TypeError(TypeErrorCode::ShadowingInBox, at, nullptr,
                            nullptr,
                            "box binder '" + b.name +
                                "' shadows a variable in scope at " +
                                path_str(at));
        }
        for (const BoxBinding& b : t->bindings)
          env.push_back({b.name, b.annot});
        at.push_back(static_cast<int>(t->bindings.size()));
        FormulaPtr body = run(t->body);
        at.pop_back();
        for (size_t i = 0; i < t->bindings.size(); ++i) env.pop_back();
        return f_box(body);
      }
    }
    throw std::logic_error("infer: unreachable");
  }
};

}  // namespace

FormulaPtr infer(const Context& ctx, const TermPtr& t) {
  Checker checker;
  checker.env = ctx.entries();
  return checker.run(t);
}

FormulaPtr infer_with_env(std::vector<std::pair<std::string, FormulaPtr>> env,
                          const TermPtr& t) {
  Checker checker;
  checker.env = std::move(env);
  return checker.run(t);
}

bool check_closed_theorem(const TermPtr& t, const FormulaPtr& a,
                          std::string* diag) {
  auto fv = free_vars(t);
  if (!fv.empty()) {
    if (diag) *diag = "term is not closed: '" + *fv.begin() + "' is free";
    return false;
  }
  try {
    FormulaPtr inferred = infer(Context{}, t);
    if (formula_eq(inferred, a)) return true;
    if (diag)
      *diag = "term has type " + print_formula(inferred) + ", not " +
              print_formula(a);
    return false;
  } catch (const TypeError& e) {
    if (diag) *diag = e.what();
    return false;
  }
}

}  // namespace ielc
