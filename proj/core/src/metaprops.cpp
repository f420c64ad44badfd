#include "ielc/metaprops.hpp"

#include "ielc/printer.hpp"
#include "ielc/typecheck.hpp"

namespace ielc {

TermClass classify(const TermPtr& t) {
  if (auto redex = step(t)) return {TermClass::Kind::NotNormal, redex->path};
  switch (t->kind) {
    case TKind::Var:
    case TKind::App:
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Case:
    case TKind::Exfalso:
      return {TermClass::Kind::Neutral, {}};
    default:
      return {TermClass::Kind::IntroHeaded, {}};
  }
}

namespace {

FormulaPtr require_closed_of(const TermPtr& t, FKind outer,
                             const char* what) {
  auto fv = free_vars(t);
  if (!fv.empty())
    throw PreconditionError(std::string(what) + ": term is not closed ('" +
                            *fv.begin() + "' is free)");
  FormulaPtr f;
  try {
    f = infer(Context{}, t);
  } catch (const TypeError& e) {
    throw PreconditionError(std::string(what) + ": " + e.what());
  }
  if (f->kind != outer)
    throw PreconditionError(std::string(what) + ": term has type " +
                            print_formula(f) + ", wrong outer connective");
  return f;
}

// Recursive half of reflection: nf is closed, normal, of box type.
TermPtr extract_rec(const TermPtr& nf) {
  if (nf->kind != TKind::BoxIntro)
    throw Error(
        "canonicity violation: closed normal box proof is not box-headed");
  TermPtr body = nf->body;
  for (const BoxBinding& b : nf->bindings) {
    // Each argument is a closed normal proof of box A_i; one level down.
    TermPtr u = extract_rec(b.arg);
    body = substitute(body, b.name, u);
  }
  return normalize(body).first;
}

}  // namespace

bool canonicity_check(const TermPtr& t, const FormulaPtr& a) {
  auto fv = free_vars(t);
  if (!fv.empty()) throw PreconditionError("canonicity_check: term not closed");
  FormulaPtr f;
  try {
    f = infer(Context{}, t);
  } catch (const TypeError& e) {
    throw PreconditionError(std::string("canonicity_check: ") + e.what());
  }
  if (!formula_eq(f, a))
    throw PreconditionError("canonicity_check: term does not have type " +
                            print_formula(a));
  if (step(t))
    throw PreconditionError("canonicity_check: term is not normal");
  switch (a->kind) {
    case FKind::Impl:
      return t->kind == TKind::Lam;
    case FKind::Conj:
      return t->kind == TKind::Pair;
    case FKind::Disj:
      return t->kind == TKind::Inj1 || t->kind == TKind::Inj2;
    case FKind::Top:
      return t->kind == TKind::Triv;
    case FKind::Box:
      return t->kind == TKind::BoxIntro;
    case FKind::Atom:
    case FKind::Bot:
      return false;  // no introduction rule; unreachable for theorems
  }
  return false;
}

TermPtr reflection_extract(const TermPtr& t) {
  require_closed_of(t, FKind::Box, "reflection_extract");
  TermPtr nf = normalize(t).first;
  return extract_rec(nf);
}

std::pair<Side, TermPtr> disjunction_split(const TermPtr& t) {
  require_closed_of(t, FKind::Disj, "disjunction_split");
  TermPtr nf = normalize(t).first;
  if (nf->kind == TKind::Inj1) return {Side::Left, nf->a};
  if (nf->kind == TKind::Inj2) return {Side::Right, nf->a};
  throw Error(
      "canonicity violation: closed normal disjunction proof is not "
      "injection-headed");
}

std::pair<Side, TermPtr> weak_dp(const TermPtr& t) {
  FormulaPtr f = require_closed_of(t, FKind::Box, "weak_dp");
  if (f->lhs->kind != FKind::Disj)
    throw PreconditionError("weak_dp: term has type " + print_formula(f) +
                            ", not a boxed disjunction");
  TermPtr unboxed = reflection_extract(t);
  auto [side, witness] = disjunction_split(unboxed);
  return {side, t_box({}, witness)};
}

}  // namespace ielc
