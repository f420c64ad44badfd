#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"

using namespace ielc;

TEST_CASE("formula grammar: precedence and associativity") {
  // right-associative implication
  FormulaPtr f = parse_formula("p -> q -> p");
  CHECK(formula_eq(f, f_impl(f_atom("p"), f_impl(f_atom("q"), f_atom("p")))));

  // the K scheme reads as written in the axiom
  FormulaPtr k = parse_formula("[](p -> q) -> []p -> []q");
  FormulaPtr expect =
      f_impl(f_box(f_impl(f_atom("p"), f_atom("q"))),
             f_impl(f_box(f_atom("p")), f_box(f_atom("q"))));
  CHECK(formula_eq(k, expect));

  // negation desugars to an implication into Bot
  CHECK(formula_eq(parse_formula("~[]Bot"), f_impl(f_box(f_bot()), f_bot())));

  // precedence: ~ and [] bind tighter than /\ tighter than \/ tighter than ->
  CHECK(formula_eq(parse_formula("p /\\ q \\/ r -> s0"),
                   f_impl(f_disj(f_conj(f_atom("p"), f_atom("q")), f_atom("r")),
                          f_atom("s0"))));
  CHECK(formula_eq(parse_formula("~p \\/ q"),
                   f_disj(f_neg(f_atom("p")), f_atom("q"))));
}

TEST_CASE("term grammar") {
  TermPtr co = parse_term("\\x:p. box [] in x");
  CHECK(co->kind == TKind::Lam);
  CHECK(co->a->kind == TKind::BoxIntro);
  CHECK(co->a->bindings.empty());

  TermPtr k = parse_term("box [g:p->q = f, x:p = a] in g x");
  CHECK(k->kind == TKind::BoxIntro);
  REQUIRE(k->bindings.size() == 2);
  CHECK(k->bindings[0].name == "g");
  CHECK(formula_eq(k->bindings[0].annot, f_impl(f_atom("p"), f_atom("q"))));
  CHECK(k->body->kind == TKind::App);

  CHECK(alpha_eq(parse_term("fst <x, y>"),
                 t_proj1(t_pair(t_var("x"), t_var("y")))));

  // application is left-associative; lambda bodies extend right
  CHECK(alpha_eq(parse_term("f a b"),
                 t_app(t_app(t_var("f"), t_var("a")), t_var("b"))));
  CHECK(alpha_eq(parse_term("\\x:p. x y"),
                 t_lam("x", f_atom("p"), t_app(t_var("x"), t_var("y")))));

  TermPtr cs = parse_term("case s of { inl x -> x | inr y -> f y }");
  CHECK(cs->kind == TKind::Case);
  CHECK(cs->var == "x");
  CHECK(cs->var2 == "y");

  CHECK(parse_term("abort[p] z")->kind == TKind::Exfalso);
  CHECK(parse_term("triv z")->kind == TKind::Triv);
  CHECK(parse_term("inl[p \\/ q] x")->kind == TKind::Inj1);
}

TEST_CASE("printing of the showcase formulas") {
  CHECK(print_formula(f_impl(f_atom("p"), f_impl(f_atom("q"), f_atom("p")))) ==
        "p -> q -> p");
  CHECK(print_formula(f_box(f_disj(f_atom("p"), f_atom("q")))) ==
        "[](p \\/ q)");
  CHECK(print_term(parse_term("fst <x, y>")) == "fst <x, y>");
}

TEST_CASE("printing is deterministic") {
  TermPtr a = parse_term("box [x:p = f] in <x, x>");
  TermPtr b = parse_term("box  [ x : p = f ]  in  < x , x >  -- comment");
  CHECK(print_term(a) == print_term(b));
}

TEST_CASE("comments and blank lines are accepted everywhere") {
  FormulaPtr f = parse_formula("p -> -- inline comment\n q");
  CHECK(formula_eq(f, f_impl(f_atom("p"), f_atom("q"))));
}

TEST_CASE("syntax errors carry spans and expectations") {
  try {
    parse_formula("p -> ");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.span.start == 5);
    CHECK(!e.expected.empty());
  }
  try {
    parse_term("fst <x y>");  // `x y` is an application; the `>` is the error
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.span.start == 8);
  }
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);        // trailing input
  CHECK_THROWS_AS(parse_term("box [x:p = f, x:q = g] in x"), ParseError);
  CHECK_THROWS_AS(parse_formula("Box"), ParseError);
}

TEST_CASE("hilbert proof files round-trip") {
  std::string src =
      "hyps: p; q -> p\n"
      "1. p hyp 1\n"
      "2. p -> []p ax CR {A := p}\n"
      "3. []p mp 2 1\n";
  HilbertProof p = parse_hilbert(src);
  REQUIRE(p.lines.size() == 3);
  CHECK(p.hypotheses.size() == 2);
  CHECK(p.lines[1].just.kind == Justification::Kind::Axiom);
  CHECK(p.lines[1].just.scheme == SchemeId::CR);
  HilbertProof back = parse_hilbert(print_hilbert(p));
  CHECK(print_hilbert(back) == print_hilbert(p));
}

TEST_CASE("hilbert parsing rejects malformed lines") {
  CHECK_THROWS_AS(parse_hilbert("2. p ax A10\n"), ParseError);  // bad numbering
  CHECK_THROWS_AS(parse_hilbert("1. p frob\n"), ParseError);
  CHECK_THROWS_AS(parse_hilbert(""), ParseError);
  CHECK_THROWS_AS(parse_hilbert("1. p ax Z9\n"), ParseError);
}

TEST_CASE("kripke model files parse and round-trip") {
  std::string src =
      "worlds: w0 w1\n"
      "le: w0 <= w1\n"
      "E: w0 E w1, w1 E w1\n"
      "val: p @ w1\n";
  KripkeModel m = parse_model(src);
  CHECK(m.worlds == std::vector<std::string>{"w0", "w1"});
  CHECK(m.le == std::set<std::pair<int, int>>{{0, 1}});
  CHECK(m.E == std::set<std::pair<int, int>>{{0, 1}, {1, 1}});
  CHECK(m.val.at("p") == std::set<int>{1});
  KripkeModel back = parse_model(print_model(m));
  CHECK(back.worlds == m.worlds);
  CHECK(back.le == m.le);
  CHECK(back.E == m.E);
  CHECK(back.val.at("p") == m.val.at("p"));
}

TEST_CASE("kripke model parsing rejects unknown worlds") {
  CHECK_THROWS_AS(parse_model("worlds: w0\nle: w0 <= w9\n"), ParseError);
  CHECK_THROWS_AS(parse_model("val: p @ w0\n"), ParseError);
}

TEST_CASE("context strings parse") {
  Context ctx = parse_context("x:p, y:[]q -> r");
  CHECK(ctx.size() == 2);
  CHECK(formula_eq(*ctx.lookup("y"), f_impl(f_box(f_atom("q")), f_atom("r"))));
  CHECK(parse_context("").empty());
}

TEST_CASE("parse-print round trips on random formulas and terms") {
  Rng rng(501);
  const std::vector<std::string> atoms = {"p", "q", "s0"};
  for (int i = 0; i < 400; ++i) {
    FormulaPtr f = gen_formula(rng, 4, atoms);
    CHECK(formula_eq(parse_formula(print_formula(f)), f));
  }
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen_raw_term(rng, 18, atoms);
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  }
  for (int i = 0; i < 100; ++i) {
    Rng mr(900 + i);
    KripkeModel m = gen_model(mr, 3, {"p", "q"});
    KripkeModel back = parse_model(print_model(m));
    CHECK(back.worlds == m.worlds);
    CHECK(back.le == m.le);
    CHECK(back.E == m.E);
  }
}
