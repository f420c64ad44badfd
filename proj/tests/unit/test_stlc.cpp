#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/stlc.hpp"
#include "ielc/typecheck.hpp"

using namespace ielc;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("erase_formula clauses") {
  // |box p| = (p -> q) -> q with q the reserved answer atom
  StlcTypePtr boxed = erase_formula(F("[]p"));
  CHECK(stlc_type_eq(boxed,
                     s_arrow(s_arrow(s_atom("p"), s_q()), s_q())));
  CHECK(print_stlc_type(boxed) == "(p -> q) -> q");

  // homomorphic elsewhere; user atom q0 stays itself
  CHECK(print_stlc_type(erase_formula(F("p -> q0"))) == "p -> q0");
  CHECK(print_stlc_type(erase_formula(F("p /\\ q \\/ Bot"))) == "p * q + 0");
  CHECK(print_stlc_type(erase_formula(F("Top"))) == "1");

  // two unfoldings for a doubled box
  CHECK(print_stlc_type(erase_formula(F("[][]p"))) ==
        "(((p -> q) -> q) -> q) -> q");

  // the reserved q is distinct from a user atom named q
  CHECK_FALSE(stlc_type_eq(s_q(), s_atom("q")));
  CHECK(stlc_type_eq(erase_formula(F("[]q"))->lhs->lhs, s_atom("q")));
}

TEST_CASE("erase_term on box introductions") {
  Context ctx = parse_context("a:p");
  StlcTermPtr e = erase_term(ctx, T("box [] in a"));
  // \k. k a
  StlcTermPtr expect = st_lam(
      "k", s_arrow(s_atom("p"), s_q()), st_app(st_var("k"), st_var("a")));
  CHECK(stlc_alpha_eq(e, expect));

  Context ctx2 = parse_context("f:[]p");
  StlcTermPtr e2 = erase_term(ctx2, T("box [x:p = f] in x"));
  // \k. f (\x. k x)
  StlcTermPtr expect2 = st_lam(
      "k", s_arrow(s_atom("p"), s_q()),
      st_app(st_var("f"), st_lam("x", s_atom("p"),
                                 st_app(st_var("k"), st_var("x")))));
  CHECK(stlc_alpha_eq(e2, expect2));

  CHECK(stlc_alpha_eq(erase_term(T("\\x:p. x")),
                      st_lam("x", s_atom("p"), st_var("x"))));
}

TEST_CASE("stlc_normalize eta-reduces the iota image") {
  Context ctx = parse_context("f:[]p");
  StlcTermPtr e = erase_term(ctx, T("box [x:p = f] in x"));
  CHECK(stlc_alpha_eq(stlc_normalize(e), st_var("f")));
  // (\x. x) y -> y
  StlcTermPtr app = st_app(st_lam("x", s_atom("p"), st_var("x")), st_var("y"));
  CHECK(stlc_alpha_eq(stlc_normalize(app), st_var("y")));
}

TEST_CASE("erased K witness applied to closed arguments normalizes") {
  TermPtr k = T("\\f:[](p->q). \\a:[]p. box [g:p->q = f, x:p = a] in g x");
  StlcTermPtr e = erase_term(k);
  CHECK_NOTHROW(stlc_normalize(e, 10000));
  StlcTypePtr ty = stlc_infer({}, e);
  CHECK(stlc_type_eq(ty, erase_formula(F("[](p->q) -> []p -> []q"))));

  // the full application, at an instance whose arguments are closed
  TermPtr applied = T(
      "(\\f:[](Top->Top). \\a:[]Top. box [g:Top->Top = f, x:Top = a] in g x) "
      "(box [] in \\u:Top. u) (box [] in triv (\\z:Bot. z))");
  CHECK(formula_eq(infer(Context{}, applied), F("[]Top")));
  StlcTermPtr ea = erase_term(applied);
  StlcTermPtr nf;
  CHECK_NOTHROW(nf = stlc_normalize(ea, 10000));
  CHECK(stlc_type_eq(stlc_infer({}, nf), erase_formula(F("[]Top"))));
}

TEST_CASE("simulation on the named examples") {
  Context ctx = parse_context("f:[]p");
  TermPtr iota_red = T("box [x:p = f] in x");
  CHECK(simulates(ctx, iota_red, t_var("f")) == SearchVerdict::Yes);

  TermPtr beta = T("(\\x:p. x) y");
  Context ctx2 = parse_context("y:p");
  CHECK(simulates(ctx2, beta, t_var("y")) == SearchVerdict::Yes);

  Context ctx3 = parse_context("f:[]p, g:p -> q, h:[]s0");
  TermPtr dt = T("box [b:q = (box [x:p = f] in g x), r:s0 = h] in <b, r>");
  TermPtr dres = T("box [x:p = f, r:s0 = h] in <g x, r>");
  CHECK(simulates(ctx3, dt, dres) == SearchVerdict::Yes);
}

TEST_CASE("erasure preserves typing across the corpus") {
  std::vector<TermPtr> corpus = gen_corpus(808, 120);
  for (const TermPtr& t : corpus) {
    FormulaPtr a = infer(Context{}, t);
    StlcTermPtr e = erase_term(t);
    CHECK(stlc_type_eq(stlc_infer({}, e), erase_formula(a)));
  }
}

TEST_CASE("every single step of every corpus term is simulated") {
  std::vector<TermPtr> corpus = gen_corpus(909, 60);
  int steps_checked = 0;
  for (const TermPtr& t : corpus) {
    for (const StepResult& r : all_steps(t)) {
      CHECK(simulates(Context{}, t, r.term, 200) == SearchVerdict::Yes);
      ++steps_checked;
    }
  }
  CHECK(steps_checked > 30);
}

TEST_CASE("oracle normal forms are strategy independent on the corpus") {
  std::vector<TermPtr> corpus = gen_corpus(1001, 80);
  for (const TermPtr& t : corpus) {
    StlcTermPtr e = erase_term(t);
    StlcTermPtr lo = stlc_normalize(e, 10000, Strategy::LeftmostOutermost);
    StlcTermPtr ri = stlc_normalize(e, 10000, Strategy::RightmostInnermost);
    CHECK(stlc_alpha_eq(lo, ri));
  }
}

TEST_CASE("stlc typechecker rejects ill-typed terms") {
  CHECK_THROWS_AS(stlc_infer({}, st_var("x")), StlcTypeError);
  CHECK_THROWS_AS(
      stlc_infer({}, st_app(st_lam("x", s_atom("p"), st_var("x")),
                            st_triv(st_lam("y", s_empty(), st_var("y"))))),
      StlcTypeError);
}
