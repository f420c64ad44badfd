#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/syntax.hpp"

using namespace ielc;

TEST_CASE("substitution: direct replacement") {
  // substitute(x, x, \y:p. y) = \y:p. y
  TermPtr id = parse_term("\\y:p. y");
  CHECK(alpha_eq(substitute(t_var("x"), "x", id), id));
}

TEST_CASE("substitution: capture avoidance forces a fresh binder") {
  // substitute(\y:p. x, x, y) = \y':p. y
  TermPtr t = parse_term("\\y:p. x");
  TermPtr got = substitute(t, "x", t_var("y"));
  CHECK(got->kind == TKind::Lam);
  CHECK(got->var != "y");
  CHECK(got->a->kind == TKind::Var);
  CHECK(got->a->var == "y");
  CHECK(free_vars(got) == std::set<std::string>{"y"});
}

TEST_CASE("substitution reaches box arguments but respects box binders") {
  // substitute(box[z:p = x] in z, x, f) = box[z:p = f] in z
  TermPtr t = parse_term("box [z:p = x] in z");
  TermPtr expected = parse_term("box [z:p = f] in z");
  CHECK(alpha_eq(substitute(t, "x", t_var("f")), expected));
  // free-variable audit
  CHECK(free_vars(substitute(t, "x", t_var("f"))) ==
        std::set<std::string>{"f"});
}

TEST_CASE("substitution is shadowed by box binders in the body") {
  TermPtr t = parse_term("box [x:p = f] in x");
  CHECK(alpha_eq(substitute(t, "x", t_var("g")), t));
}

TEST_CASE("box binders would capture: binder is freshened") {
  // box [z:p = w] in <z, x> with x := z must not let z be captured
  TermPtr t = parse_term("box [z:p = w] in <z, x>");
  TermPtr got = substitute(t, "x", t_var("z"));
  auto fv = free_vars(got);
  CHECK(fv == std::set<std::string>{"w", "z"});
  CHECK(got->bindings[0].name != "z");
}

TEST_CASE("alpha equivalence examples") {
  CHECK(alpha_eq(parse_term("\\x:p. x"), parse_term("\\y:p. y")));
  CHECK_FALSE(alpha_eq(parse_term("\\x:p. x"), parse_term("\\y:q. y")));
  CHECK(alpha_eq(parse_term("box [a:p = f] in a"),
                 parse_term("box [b:p = f] in b")));
  // binder annotations must match exactly
  CHECK_FALSE(alpha_eq(parse_term("box [a:p = f] in a"),
                       parse_term("box [b:q = f] in b")));
  // free variables compare by name
  CHECK_FALSE(alpha_eq(t_var("x"), t_var("y")));
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_term("\\x:p. x y")) == std::set<std::string>{"y"});
  CHECK(free_vars(parse_term("box [x:p = f] in x")) ==
        std::set<std::string>{"f"});
  // empty binder list leaves the body hypotheses open
  CHECK(free_vars(parse_term("box [] in z")) == std::set<std::string>{"z"});
  // binders do not scope over the bound arguments
  CHECK(free_vars(parse_term("box [x:p = x] in x")) ==
        std::set<std::string>{"x"});
}

TEST_CASE("box binders must be pairwise distinct") {
  CHECK_THROWS_AS(
      t_box({{"x", f_atom("p"), t_var("f")}, {"x", f_atom("q"), t_var("g")}},
            t_var("x")),
      std::invalid_argument);
}

TEST_CASE("injection annotations must be disjunctions") {
  CHECK_THROWS_AS(t_inj1(f_atom("p"), t_var("x")), std::invalid_argument);
}

TEST_CASE("substitution properties on random terms") {
  Rng rng(2024);
  const std::vector<std::string> atoms = {"p", "q"};
  const std::vector<std::string> names = {"x", "y", "f", "w"};
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen_raw_term(rng, 14, atoms);
    TermPtr s = gen_raw_term(rng, 6, atoms);
    std::string x = names[rng.below(names.size())];
    CHECK(alpha_eq(substitute(t, x, t_var(x)), t));
    if (!free_vars(t).count(x)) CHECK(alpha_eq(substitute(t, x, s), t));
    auto fv_t = free_vars(t);
    auto fv_s = free_vars(s);
    auto fv = free_vars(substitute(t, x, s));
    for (const auto& v : fv) {
      bool ok = (fv_t.count(v) && v != x) || fv_s.count(v);
      CHECK(ok);
    }
    if (fv_t.count(x))
      for (const auto& v : fv_s) CHECK(fv.count(v));
  }
}

TEST_CASE("alpha_eq is an equivalence relation on generated terms") {
  Rng rng(77);
  const std::vector<std::string> atoms = {"p", "q"};
  std::vector<TermPtr> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(gen_raw_term(rng, 10, atoms));
  for (const auto& t : pool) CHECK(alpha_eq(t, t));
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i + 1; j < pool.size(); ++j) {
      bool ij = alpha_eq(pool[i], pool[j]);
      CHECK(ij == alpha_eq(pool[j], pool[i]));
      if (ij)
        CHECK(canonical_key(pool[i]) == canonical_key(pool[j]));
    }
}

TEST_CASE("contexts reject duplicate names") {
  Context ctx;
  ctx.push("x", f_atom("p"));
  CHECK_THROWS_AS(ctx.push("x", f_atom("q")), std::invalid_argument);
  CHECK(ctx.contains("x"));
  CHECK(formula_eq(*ctx.lookup("x"), f_atom("p")));
  CHECK(ctx.lookup("y") == nullptr);
}
