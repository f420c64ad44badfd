#include "doctest.h"
#include "ielc/gen.hpp"
#include "ielc/hilbert.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/typecheck.hpp"

using namespace ielc;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }

HilbertProof cr_instance() {
  HilbertProof p;
  p.lines.push_back({F("p -> []p"),
                     Justification::axiom(SchemeId::CR, {{"A", F("p")}})});
  return p;
}

HilbertProof boxed_p_from_hyp() {
  HilbertProof p;
  p.hypotheses.push_back(F("p"));
  p.lines.push_back({F("p"), Justification::hyp(1)});
  p.lines.push_back({F("p -> []p"),
                     Justification::axiom(SchemeId::CR, {{"A", F("p")}})});
  p.lines.push_back({F("[]p"), Justification::mp(2, 1)});
  return p;
}
}  // namespace

TEST_CASE("checking axiom instances and MP") {
  CHECK(formula_eq(check_hilbert(cr_instance()), F("p -> []p")));
  CHECK(formula_eq(check_hilbert(boxed_p_from_hyp()), F("[]p")));

  HilbertProof bad;
  bad.lines.push_back({F("p -> q"),
                       Justification::axiom(SchemeId::A1,
                                            {{"A", F("p")}, {"B", F("q")}})});
  try {
    check_hilbert(bad);
    CHECK(false);
  } catch (const HilbertError& e) {
    CHECK(e.code == HilbertErrorCode::BadAxiomInstance);
    CHECK(e.line == 1);
  }
}

TEST_CASE("checking rejects bad MP and bad hypothesis references") {
  HilbertProof p = boxed_p_from_hyp();
  p.lines[2].just = Justification::mp(1, 2);
  CHECK_THROWS_AS(check_hilbert(p), HilbertError);

  HilbertProof q = boxed_p_from_hyp();
  q.lines[0].just = Justification::hyp(4);
  try {
    check_hilbert(q);
    CHECK(false);
  } catch (const HilbertError& e) {
    CHECK(e.code == HilbertErrorCode::BadHypIndex);
  }

  HilbertProof empty;
  CHECK_THROWS_AS(check_hilbert(empty), HilbertError);
}

TEST_CASE("deduction theorem discharges a used hypothesis") {
  HilbertProof d = deduction_theorem(boxed_p_from_hyp(), F("p"));
  CHECK(d.hypotheses.empty());
  CHECK(formula_eq(check_hilbert(d), F("p -> []p")));
  CHECK(d.lines.size() <= 3 * 3 + 2);
}

TEST_CASE("deduction theorem on the one-line hypothesis proof") {
  HilbertProof p;
  p.hypotheses.push_back(F("p"));
  p.lines.push_back({F("p"), Justification::hyp(1)});
  HilbertProof d = deduction_theorem(p, F("p"));
  CHECK(formula_eq(check_hilbert(d), F("p -> p")));
  CHECK(d.lines.size() == 5);  // the shared A1/A2 identity block
}

TEST_CASE("deduction theorem pads an unused hypothesis") {
  HilbertProof p;
  p.hypotheses.push_back(F("r"));
  p.lines.push_back({F("p -> []p"),
                     Justification::axiom(SchemeId::CR, {{"A", F("p")}})});
  HilbertProof d = deduction_theorem(p, F("r"));
  CHECK(formula_eq(check_hilbert(d), F("r -> (p -> []p)")));
}

TEST_CASE("deduction theorem discharges every structural occurrence") {
  HilbertProof p;
  p.hypotheses = {F("p"), F("p")};
  p.lines.push_back({F("p"), Justification::hyp(2)});
  HilbertProof d = deduction_theorem(p, F("p"));
  CHECK(d.hypotheses.empty());
  CHECK(formula_eq(check_hilbert(d), F("p -> p")));
  CHECK_THROWS_AS(deduction_theorem(p, F("q")), HilbertError);
}

TEST_CASE("necessitation") {
  HilbertProof d = deduction_theorem(boxed_p_from_hyp(), F("p"));
  HilbertProof n = necessitation(d);
  CHECK(formula_eq(check_hilbert(n), F("[](p -> []p)")));

  HilbertProof top;
  top.lines.push_back({f_top(), Justification::axiom(SchemeId::A10, {})});
  CHECK(formula_eq(check_hilbert(necessitation(top)), F("[]Top")));

  CHECK_THROWS_AS(necessitation(boxed_p_from_hyp()), HilbertError);
}

TEST_CASE("hilbert_to_nd on the axiom schemes") {
  Context ctx;
  TermPtr t = hilbert_to_nd(cr_instance(), &ctx);
  CHECK(ctx.empty());
  CHECK(alpha_eq(t, parse_term("\\x:p. box [] in x")));
  CHECK(formula_eq(infer(ctx, t), F("p -> []p")));

  HilbertProof k;
  k.lines.push_back(
      {F("[](p->q) -> []p -> []q"),
       Justification::axiom(SchemeId::K, {{"A", F("p")}, {"B", F("q")}})});
  TermPtr kt = hilbert_to_nd(k, nullptr);
  CHECK(formula_eq(infer(Context{}, kt), F("[](p->q) -> []p -> []q")));
}

TEST_CASE("hilbert_to_nd maps MP to application and normalizes as expected") {
  Context ctx;
  TermPtr t = hilbert_to_nd(boxed_p_from_hyp(), &ctx);
  CHECK(ctx.size() == 1);
  CHECK(formula_eq(infer(ctx, t), F("[]p")));
  // App of the co-reflection witness to the hypothesis variable reduces to
  // box [] in h1
  TermPtr nf = normalize(t).first;
  CHECK(alpha_eq(nf, parse_term("box [] in h1")));
}

TEST_CASE("nd_to_hilbert on the lemma's showcase terms") {
  HilbertProof p1 = nd_to_hilbert(parse_term("\\x:p. x"), Context{});
  CHECK(formula_eq(check_hilbert(p1), F("p -> p")));

  HilbertProof p2 = nd_to_hilbert(parse_term("\\x:p. box [] in x"), Context{});
  CHECK(formula_eq(check_hilbert(p2), F("p -> []p")));
  bool uses_cr = false;
  for (const auto& line : p2.lines)
    if (line.just.kind == Justification::Kind::Axiom &&
        line.just.scheme == SchemeId::CR)
      uses_cr = true;
  CHECK(uses_cr);

  TermPtr kw =
      parse_term("\\f:[](p->q). \\a:[]p. box [g:p->q = f, x:p = a] in g x");
  HilbertProof p3 = nd_to_hilbert(kw, Context{});
  CHECK(formula_eq(check_hilbert(p3), F("[](p->q) -> []p -> []q")));
}

TEST_CASE("nd_to_hilbert handles every construct") {
  Context ctx = parse_context("c:q, f:[]p");
  TermPtr t = parse_term("box [x:p = f] in <x, c>");
  HilbertProof p = nd_to_hilbert(t, ctx);
  CHECK(formula_eq(check_hilbert(p), F("[](p /\\ q)")));
  REQUIRE(p.hypotheses.size() == 2);
  CHECK(formula_eq(p.hypotheses[0], F("q")));
  CHECK(formula_eq(p.hypotheses[1], F("[]p")));

  TermPtr swap = parse_term(
      "\\s:p \\/ q. case s of { inl x -> inr[q \\/ p] x | inr y -> inl[q \\/ "
      "p] y }");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(swap, Context{})),
                   F("p \\/ q -> q \\/ p")));

  TermPtr pairy = parse_term("\\w:p /\\ q. <snd w, fst w>");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(pairy, Context{})),
                   F("p /\\ q -> q /\\ p")));

  TermPtr ex = parse_term("\\z:Bot. abort[p] z");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(ex, Context{})),
                   F("Bot -> p")));

  TermPtr tv = parse_term("\\x:p. triv x");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(tv, Context{})),
                   F("p -> Top")));

  // the n = 0 box goes through Top
  TermPtr nec = parse_term("box [] in triv (\\x:Bot. x)");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(nec, Context{})), F("[]Top")));

  // nested boxes exercise box_conj with n = 2
  Context ctx2 = parse_context("f:[]p, g:[]q");
  TermPtr two = parse_term("box [x:p = f, y:q = g] in <x, y>");
  CHECK(formula_eq(check_hilbert(nd_to_hilbert(two, ctx2)),
                   F("[](p /\\ q)")));
}

TEST_CASE("box_conj derives the n-ary distribution") {
  HilbertProof p = box_conj({F("p"), F("q"), F("r")});
  CHECK(p.hypotheses.empty());
  CHECK(formula_eq(check_hilbert(p),
                   F("[]p -> []q -> []r -> [](p /\\ q /\\ r)")));
}

TEST_CASE("round trips on conclusions across random proofs and terms") {
  Rng rng(606);
  for (int i = 0; i < 60; ++i) {
    HilbertProof p = gen_hilbert_proof(rng, rng.chance(50), 6);
    FormulaPtr concl = check_hilbert(p);
    Context ctx;
    TermPtr t = hilbert_to_nd(p, &ctx);
    CHECK(formula_eq(infer(ctx, t), concl));
  }
  std::vector<TermPtr> corpus = gen_corpus(707, 60);
  for (const TermPtr& t : corpus) {
    FormulaPtr a = infer(Context{}, t);
    HilbertProof p = nd_to_hilbert(t, Context{});
    CHECK(formula_eq(check_hilbert(p), a));
  }
}

TEST_CASE("deduction theorem length bound") {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    HilbertProof p = gen_hilbert_proof(rng, true, 8);
    check_hilbert(p);
    HilbertProof d = deduction_theorem(p, p.hypotheses[0]);
    check_hilbert(d);
    CHECK(d.lines.size() <= 3 * p.lines.size() + 2);
    if (p.lines.size() >= 2) CHECK(d.lines.size() <= 4 * p.lines.size());
  }
}
