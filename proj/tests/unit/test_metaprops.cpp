#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/metaprops.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/typecheck.hpp"

using namespace ielc;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("classification") {
  CHECK(classify(T("x")).kind == TermClass::Kind::Neutral);
  CHECK(classify(T("\\x:p. x")).kind == TermClass::Kind::IntroHeaded);
  TermClass c = classify(T("(\\x:p. x) y"));
  CHECK(c.kind == TermClass::Kind::NotNormal);
  CHECK(c.redex.empty());  // the redex is at the root
  CHECK(classify(T("fst w")).kind == TermClass::Kind::Neutral);
  CHECK(classify(T("box [] in x")).kind == TermClass::Kind::IntroHeaded);
  CHECK(classify(T("abort[p] z")).kind == TermClass::Kind::Neutral);
  CHECK(classify(T("triv z")).kind == TermClass::Kind::IntroHeaded);
}

TEST_CASE("canonicity on the showcase witnesses") {
  CHECK(canonicity_check(T("\\x:p. box [] in x"), F("p -> []p")));
  CHECK(canonicity_check(T("box [] in triv (\\x:Bot. x)"), F("[]Top")));
  CHECK_THROWS_AS(canonicity_check(T("(\\x:p. x) (\\y:p. y) "), F("p -> p")),
                  PreconditionError);  // not normal
  CHECK_THROWS_AS(canonicity_check(T("x"), F("p")), PreconditionError);
}

TEST_CASE("reflection extraction") {
  CHECK(alpha_eq(reflection_extract(T("box [] in (\\y:p. y)")),
                 T("\\y:p. y")));
  // one recursive unfolding
  TermPtr nested = T("box [x:p->p = (box [] in \\y:p. y)] in x");
  TermPtr got = reflection_extract(nested);
  CHECK(alpha_eq(got, T("\\y:p. y")));
  CHECK(formula_eq(infer(Context{}, got), F("p -> p")));
  // body returned directly
  CHECK(alpha_eq(reflection_extract(T("box [] in triv (\\x:Bot. x)")),
                 T("triv (\\x:Bot. x)")));
  // precondition: a non-box type is refused
  CHECK_THROWS_AS(reflection_extract(T("\\x:p. x")), PreconditionError);
  // open terms are refused
  CHECK_THROWS_AS(reflection_extract(T("box [] in x")), PreconditionError);
}

TEST_CASE("disjunction split") {
  auto [side1, w1] = disjunction_split(T("inl[(p->p) \\/ Bot] (\\x:p. x)"));
  CHECK(side1 == Side::Left);
  CHECK(alpha_eq(w1, T("\\x:p. x")));

  // a beta step happens first
  auto [side2, w2] = disjunction_split(
      T("(\\z:p->p. inl[(p->p) \\/ q] z) (\\x:p. x)"));
  CHECK(side2 == Side::Left);
  CHECK(alpha_eq(w2, T("\\x:p. x")));

  CHECK_THROWS_AS(disjunction_split(T("<a, b>")), PreconditionError);
}

TEST_CASE("weak disjunction property") {
  auto [side, w] = weak_dp(T("box [] in inl[(p->p) \\/ Bot] (\\x:p. x)"));
  CHECK(side == Side::Left);
  CHECK(alpha_eq(w, T("box [] in \\x:p. x")));
  CHECK(formula_eq(infer(Context{}, w), F("[](p -> p)")));

  auto [side2, w2] =
      weak_dp(T("box [] in inr[Bot \\/ Top] (triv (\\x:Bot. x))"));
  CHECK(side2 == Side::Right);
  CHECK(formula_eq(infer(Context{}, w2), F("[]Top")));
  // reflection of the re-boxed witness returns the split witness
  CHECK(alpha_eq(reflection_extract(w2), T("triv (\\x:Bot. x)")));

  CHECK_THROWS_AS(weak_dp(T("box [] in triv (\\x:Bot. x)")),
                  PreconditionError);
}

TEST_CASE("closed normal corpus terms are intro-headed and extractable") {
  std::vector<TermPtr> corpus = gen_corpus(1717, 150);
  int boxes = 0, sums = 0, boxed_sums = 0;
  for (const TermPtr& t : corpus) {
    FormulaPtr a = infer(Context{}, t);
    TermPtr nf = normalize(t).first;
    CHECK(classify(nf).kind == TermClass::Kind::IntroHeaded);
    CHECK(canonicity_check(nf, a));
    if (a->kind == FKind::Box) {
      ++boxes;
      TermPtr u = reflection_extract(t);
      CHECK(formula_eq(infer(Context{}, u), a->lhs));
      CHECK(classify(u).kind == TermClass::Kind::IntroHeaded);
    }
    if (a->kind == FKind::Disj) {
      ++sums;
      auto [side, w] = disjunction_split(t);
      FormulaPtr expect = side == Side::Left ? a->lhs : a->rhs;
      CHECK(formula_eq(infer(Context{}, w), expect));
    }
    if (a->kind == FKind::Box && a->lhs->kind == FKind::Disj) {
      ++boxed_sums;
      auto [side, w] = weak_dp(t);
      CHECK(formula_eq(infer(Context{}, w),
                       f_box(side == Side::Left ? a->lhs->lhs : a->lhs->rhs)));
    }
  }
  // the generator must feed each corollary something to chew on
  CHECK(boxes >= 10);
  CHECK(sums >= 5);
  CHECK(boxed_sums >= 3);
}
