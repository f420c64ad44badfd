#include <functional>

#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/typecheck.hpp"

using namespace ielc;

namespace {
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("iota contracts a single-binder box returning its variable") {
  auto r = step(T("box [x:p = f] in x"));
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::Iota);
  CHECK(r->path.empty());
  CHECK(alpha_eq(r->term, t_var("f")));
}

TEST_CASE("iota takes priority over delta on the same box") {
  // This box matches both rules; the contraction is the same term either
  // way, and the pinned priority tags it as iota.
  auto r = step(T("box [x:p = (box [] in a)] in x"));
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::Iota);
  CHECK(alpha_eq(r->term, T("box [] in a")));
}

TEST_CASE("beta arrow at the root") {
  auto r = step(T("(\\x:p. x) y"));
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::BetaArrow);
  CHECK(alpha_eq(r->term, t_var("y")));
}

TEST_CASE("delta migrates inner binders outward") {
  TermPtr t = T("box [b:q = (box [x:p = f] in g x), r:s0 = h] in <b, r>");
  auto r = step(t);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::Delta);
  CHECK(r->path.empty());
  CHECK(alpha_eq(r->term, T("box [x:p = f, r:s0 = h] in <g x, r>")));
}

TEST_CASE("delta example typechecks before and after") {
  Context ctx = parse_context("f:[]p, g:p -> q, h:[]s0");
  TermPtr t = T("box [b:q = (box [x:p = f] in g x), r:s0 = h] in <b, r>");
  FormulaPtr before = infer(ctx, t);
  auto r = step(t);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::Delta);
  CHECK(formula_eq(infer(ctx, r->term), before));
}

TEST_CASE("delta freshens migrating binders against the outer body") {
  // x is free in the outer body; the migrating binder must not capture it
  TermPtr t = T("box [b:q = (box [x:p = f] in g x)] in <b, x>");
  auto r = step(t);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::Delta);
  auto fv = free_vars(r->term);
  CHECK(fv.count("x"));
  CHECK(fv.count("f"));
  CHECK(fv.count("g"));
}

TEST_CASE("normalize examples") {
  TermPtr already = T("\\x:p. box [] in x");
  auto [nf1, tr1] = normalize(already);
  CHECK(alpha_eq(nf1, already));
  CHECK(tr1.steps.empty());
  CHECK(tr1.terminal);

  auto [nf2, tr2] = normalize(T("box [x:p = (box [] in a)] in x"));
  CHECK(alpha_eq(nf2, T("box [] in a")));
  CHECK(tr2.steps.size() == 1);

  auto [nf3, tr3] = normalize(T("(\\f:p->p. f y) (\\x:p. x)"));
  CHECK(alpha_eq(nf3, t_var("y")));
  CHECK(tr3.steps.size() == 2);
}

TEST_CASE("normalize throws past the step budget") {
  // a deliberately ill-typed self-application loops forever
  TermPtr omega = T("(\\x:p. x x) (\\x:p. x x)");
  CHECK_THROWS_AS(normalize(omega, 50), StepBudgetExceeded);
}

TEST_CASE("eq_mod_box") {
  CHECK(eq_mod_box(T("box [x:p = f] in x"), t_var("f")));
  CHECK(eq_mod_box(T("\\x:p. x"), T("\\y:p. y")));
  CHECK_FALSE(eq_mod_box(T("inl[p \\/ q] a"), T("inr[p \\/ q] b")));
}

TEST_CASE("joinable") {
  TermPtr t = T("(\\x:p. fst <x, x>) y");
  auto reducts = all_steps(t);
  REQUIRE(reducts.size() >= 2);
  CHECK(joinable(reducts[0].term, reducts[1].term, 500) == SearchVerdict::Yes);
  CHECK(joinable(t, t, 10) == SearchVerdict::Yes);
  CHECK(joinable(t_var("a"), t_var("b"), 10) == SearchVerdict::No);
}

TEST_CASE("trace line serialization format") {
  auto [nf, trace] = normalize(T("(\\x:p. x) y"));
  std::string s = print_trace(trace);
  CHECK(s == "#1 BetaArrow @ root ⇒ y\n");
}

TEST_CASE("paths use constructor child order") {
  // redex buried in the second pair component
  TermPtr t = T("<a, (\\x:p. x) y>");
  auto r = step(t);
  REQUIRE(r.has_value());
  CHECK(r->path == Path{1});
  CHECK(path_to_string(r->path) == "1");
}

TEST_CASE("step is stable under alpha renaming") {
  TermPtr t1 = T("(\\x:p. x) ((\\y:q. y) z)");
  TermPtr t2 = T("(\\u:p. u) ((\\v:q. v) z)");
  auto r1 = step(t1);
  auto r2 = step(t2);
  REQUIRE(r1.has_value());
  REQUIRE(r2.has_value());
  CHECK(r1->tag == r2->tag);
  CHECK(r1->path == r2->path);
  CHECK(alpha_eq(r1->term, r2->term));
}

TEST_CASE("modal rules strictly decrease the box count") {
  auto count_boxes = [](const TermPtr& t) {
    std::function<int(const TermPtr&)> go = [&](const TermPtr& u) -> int {
      int n = u->kind == TKind::BoxIntro ? 1 : 0;
      for (int k = 0; k < term_child_count(u); ++k)
        n += go(term_child(u, k));
      return n;
    };
    return go(t);
  };
  std::vector<TermPtr> corpus = gen_corpus(4242, 120);
  int modal_steps = 0;
  for (const TermPtr& t : corpus) {
    for (const StepResult& r : all_steps(t)) {
      if (r.tag == RuleTag::Iota || r.tag == RuleTag::Delta) {
        CHECK(count_boxes(r.term) < count_boxes(t));
        ++modal_steps;
      }
    }
  }
  CHECK(modal_steps > 0);
}

TEST_CASE("beta keeps spliced box binders clear of crossed binders") {
  // The argument's box binder x' would end up under the lambda binder x'
  // after contraction; the crossed binder gets renamed so the reduct still
  // typechecks (box binders may not shadow).
  TermPtr t = T(
      "(\\y:[]Top. \\x':p. <x', y>) "
      "(box [x':Top = box [] in triv (\\v:Bot. v)] in x')");
  FormulaPtr a = infer(Context{}, t);
  auto r = step(t);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::BetaArrow);
  CHECK(formula_eq(infer(Context{}, r->term), a));
  auto [nf, trace] = normalize(t);
  for (const TraceStep& s : trace.steps)
    CHECK(formula_eq(infer(Context{}, s.term), a));
}

TEST_CASE("delta freshening avoids nested box binders in the outer body") {
  // After migration the fresh binder must not collide with the box binder
  // nested inside the body.
  Context ctx = parse_context("f:[]p, g:p -> q, u:[]p");
  TermPtr t = T(
      "box [b:q = (box [x:p = f] in g x)] in <b, box [x:p = u] in x>");
  FormulaPtr a = infer(ctx, t);
  TermPtr cur = t;
  std::set<std::string> scope = {"f", "g", "u"};
  while (auto s = step(cur, RewriteMode::Default,
                       Strategy::LeftmostOutermost, scope)) {
    cur = s->term;
    CHECK(formula_eq(infer(ctx, cur), a));
  }
}

TEST_CASE("leftmost-outermost and rightmost-innermost agree on normal forms") {
  std::vector<TermPtr> corpus = gen_corpus(555, 120);
  for (const TermPtr& t : corpus) {
    TermPtr lo =
        normalize(t, 10000, RewriteMode::Default, Strategy::LeftmostOutermost)
            .first;
    TermPtr ri =
        normalize(t, 10000, RewriteMode::Default, Strategy::RightmostInnermost)
            .first;
    CHECK(alpha_eq(lo, ri));
  }
}

TEST_CASE("subject reduction along traces") {
  std::vector<TermPtr> corpus = gen_corpus(7331, 120);
  for (const TermPtr& t : corpus) {
    FormulaPtr a = infer(Context{}, t);
    auto [nf, trace] = normalize(t);
    for (const TraceStep& s : trace.steps)
      CHECK(formula_eq(infer(Context{}, s.term), a));
  }
}

TEST_CASE("permutation mode distributes eliminations over case") {
  TermPtr t = T("(case s of { inl x -> f | inr y -> g }) a");
  CHECK_FALSE(step(t).has_value());  // normal in the default relation
  auto r = step(t, RewriteMode::Perm);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::PermCase);
  CHECK(alpha_eq(r->term,
                 T("case s of { inl x -> f a | inr y -> g a }")));
}

TEST_CASE("permutation mode collapses eliminated aborts") {
  TermPtr t = T("fst (abort[p /\\ q] z)");
  auto r = step(t, RewriteMode::Perm);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::PermAbort);
  CHECK(alpha_eq(r->term, T("abort[p] z")));
}

TEST_CASE("eta mode") {
  auto r = step(T("\\x:p. f x"), RewriteMode::Eta);
  REQUIRE(r.has_value());
  CHECK(r->tag == RuleTag::EtaArrow);
  CHECK(alpha_eq(r->term, t_var("f")));
  // not eta when the variable occurs in the function
  CHECK_FALSE(step(T("\\x:p. x x"), RewriteMode::Eta).has_value());
  auto r2 = step(T("<fst w, snd w>"), RewriteMode::Eta);
  REQUIRE(r2.has_value());
  CHECK(r2->tag == RuleTag::EtaPair);
}
