#include "ielc/selftest.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "ielc/gen.hpp"
#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/metaprops.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/stlc.hpp"
#include "ielc/typecheck.hpp"

namespace ielc {

namespace {

struct Suite {
  std::ostream& out;
  int failures = 0;

  // Runs one named suite; body returns the number of checks made, or throws
  // a string as a failure description.
  void run(const std::string& name, const std::function<int()>& body) {
    try {
      int checks = body();
      out << "ok " << name << " (" << checks << " checks)\n";
    } catch (const std::exception& e) {
      out << "FAIL " << name << ": " << e.what() << "\n";
      ++failures;
    }
  }
};

[[noreturn]] void failed(const std::string& what) { throw Error(what); }

}  // namespace

int run_selftest(uint64_t seed, int count, std::ostream& out) {
  Suite s{out};
  const std::vector<std::string> atoms = {"p", "q"};

  s.run("roundtrip-formulas", [&] {
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
      FormulaPtr f = gen_formula(rng, 4, atoms);
      FormulaPtr back = parse_formula(print_formula(f));
      if (!formula_eq(f, back)) failed("formula round-trip: " + print_formula(f));
    }
    return count;
  });

  s.run("roundtrip-terms", [&] {
    Rng rng(seed + 1);
    for (int i = 0; i < count; ++i) {
      TermPtr t = gen_raw_term(rng, 20, atoms);
      TermPtr back = parse_term(print_term(t));
      if (!alpha_eq(t, back)) failed("term round-trip: " + print_term(t));
    }
    return count;
  });

  s.run("roundtrip-models", [&] {
    Rng rng(seed + 2);
    for (int i = 0; i < count; ++i) {
      KripkeModel m = gen_model(rng, 3, atoms);
      KripkeModel back = parse_model(print_model(m));
      if (m.worlds != back.worlds || m.le != back.le || m.E != back.E)
        failed("model round-trip: " + print_model(m));
      for (const auto& [atom, ws] : m.val) {
        auto it = back.val.find(atom);
        std::set<int> got = it == back.val.end() ? std::set<int>{} : it->second;
        if (got != ws) failed("model valuation round-trip");
      }
    }
    return count;
  });

  s.run("substitution-laws", [&] {
    Rng rng(seed + 3);
    int checks = 0;
    for (int i = 0; i < count; ++i) {
      TermPtr t = gen_raw_term(rng, 14, atoms);
      std::string x = rng.chance(60) && !free_vars(t).empty()
                          ? *free_vars(t).begin()
                          : "x";
      TermPtr s1 = gen_raw_term(rng, 6, atoms);
      // t[x := x] is t
      if (!alpha_eq(substitute(t, x, t_var(x)), t))
        failed("subst identity: " + print_term(t));
      // x not free implies no effect
      if (!free_vars(t).count(x)) {
        if (!alpha_eq(substitute(t, x, s1), t))
          failed("subst on non-free variable changed term");
      }
      // free-variable bound
      auto fv_before = free_vars(t);
      auto fv_after = free_vars(substitute(t, x, s1));
      auto fv_s = free_vars(s1);
      for (const auto& v : fv_after) {
        bool allowed = (fv_before.count(v) && v != x) || fv_s.count(v);
        if (!allowed) failed("substitution introduced variable " + v);
      }
      if (fv_before.count(x)) {
        for (const auto& v : fv_s)
          if (!fv_after.count(v)) failed("substitution lost variable " + v);
      }
      checks += 3;
    }
    return checks;
  });

  s.run("alpha-equivalence", [&] {
    Rng rng(seed + 4);
    for (int i = 0; i < count; ++i) {
      TermPtr t = gen_raw_term(rng, 12, atoms);
      if (!alpha_eq(t, t)) failed("alpha not reflexive");
      TermPtr u = gen_raw_term(rng, 12, atoms);
      if (alpha_eq(t, u) != alpha_eq(u, t)) failed("alpha not symmetric");
      if ((canonical_key(t) == canonical_key(u)) != alpha_eq(t, u))
        failed("canonical key disagrees with alpha_eq");
    }
    return count;
  });

  s.run("typecheck-weakening", [&] {
    std::vector<TermPtr> corpus = gen_corpus(seed + 5, count);
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      Context weak;
      weak.push("fresh_weakening_var", f_atom("p"));
      if (!formula_eq(infer(weak, t), a)) failed("weakening changed the type");
    }
    return static_cast<int>(corpus.size());
  });

  s.run("subject-reduction", [&] {
    std::vector<TermPtr> corpus = gen_corpus(seed + 6, count);
    int checks = 0;
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      auto [nf, trace] = normalize(t);
      for (const TraceStep& step : trace.steps) {
        if (!formula_eq(infer(Context{}, step.term), a))
          failed("subject reduction broken at " + print_term(step.term));
        ++checks;
      }
    }
    return checks;
  });

  s.run("confluence-strategies", [&] {
    std::vector<TermPtr> corpus = gen_corpus(seed + 7, count);
    for (const TermPtr& t : corpus) {
      TermPtr lo = normalize(t, 10000, RewriteMode::Default,
                             Strategy::LeftmostOutermost)
                       .first;
      TermPtr ri = normalize(t, 10000, RewriteMode::Default,
                             Strategy::RightmostInnermost)
                       .first;
      if (!alpha_eq(lo, ri)) failed("strategy normal forms differ");
    }
    return static_cast<int>(corpus.size());
  });

  s.run("erasure-simulation", [&] {
    std::vector<TermPtr> corpus = gen_corpus(seed + 8, count / 2 + 1);
    int checks = 0;
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      StlcTermPtr erased = erase_term(t);
      StlcTypePtr target = stlc_infer({}, erased);
      if (!stlc_type_eq(target, erase_formula(a)))
        failed("erasure broke typing");
      ++checks;
      for (const StepResult& r : all_steps(t)) {
        if (simulates(Context{}, t, r.term, 200) != SearchVerdict::Yes)
          failed("simulation failed for a " + rule_tag_name(r.tag) + " step");
        ++checks;
      }
    }
    return checks;
  });

  s.run("hilbert-translations", [&] {
    Rng rng(seed + 9);
    int checks = 0;
    int rounds = count / 4 + 1;
    for (int i = 0; i < rounds; ++i) {
      HilbertProof p = gen_hilbert_proof(rng, rng.chance(50), 6);
      FormulaPtr concl = check_hilbert(p);
      Context ctx;
      TermPtr t = hilbert_to_nd(p, &ctx);
      if (!formula_eq(infer(ctx, t), concl))
        failed("hilbert_to_nd conclusion mismatch");
      ++checks;
      if (!p.hypotheses.empty()) {
        HilbertProof d = deduction_theorem(p, p.hypotheses[0]);
        check_hilbert(d);
        if (d.lines.size() > 3 * p.lines.size() + 2)
          failed("deduction theorem output too long");
        ++checks;
      } else {
        HilbertProof n = necessitation(p);
        if (!formula_eq(check_hilbert(n), f_box(concl)))
          failed("necessitation conclusion mismatch");
        ++checks;
      }
    }
    std::vector<TermPtr> corpus = gen_corpus(seed + 10, rounds);
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      HilbertProof p = nd_to_hilbert(t, Context{});
      if (!formula_eq(check_hilbert(p), a))
        failed("nd_to_hilbert conclusion mismatch");
      ++checks;
    }
    return checks;
  });

  s.run("kripke-semantics", [&] {
    Rng rng(seed + 11);
    int checks = 0;
    int rounds = count / 4 + 1;
    for (int i = 0; i < rounds; ++i) {
      KripkeModel m = gen_model(rng, 3, atoms);
      if (!validate_model(m).empty()) failed("generated model invalid");
      // persistence
      auto cl = m.le_closure();
      FormulaPtr f = gen_formula(rng, 3, atoms);
      ForcingTable table(m);
      for (size_t w = 0; w < m.worlds.size(); ++w)
        for (size_t v = 0; v < m.worlds.size(); ++v)
          if (cl[w][v] && table.forces(static_cast<int>(w), f) &&
              !table.forces(static_cast<int>(v), f))
            failed("persistence broken for " + print_formula(f));
      ++checks;
      // axiom validity
      SchemeId id = all_schemes()[rng.below(all_schemes().size())];
      Instantiation inst;
      for (const std::string& mv : scheme_metavars(id))
        inst[mv] = gen_formula(rng, 2, atoms);
      if (!valid_in_model(m, instantiate_scheme(id, inst)))
        failed("axiom " + scheme_name(id) + " fails in a valid model");
      ++checks;
    }
    return checks;
  });

  s.run("metaproperties", [&] {
    std::vector<TermPtr> corpus = gen_corpus(seed + 12, count / 2 + 1);
    int checks = 0;
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      TermPtr nf = normalize(t).first;
      TermClass cls = classify(nf);
      if (cls.kind != TermClass::Kind::IntroHeaded)
        failed("closed normal term not intro-headed: " + print_term(nf));
      if (!canonicity_check(nf, a)) failed("canonicity head mismatch");
      ++checks;
      if (a->kind == FKind::Box) {
        TermPtr u = reflection_extract(t);
        if (!formula_eq(infer(Context{}, u), a->lhs))
          failed("reflection witness has wrong type");
        ++checks;
      }
      if (a->kind == FKind::Disj) {
        auto [side, w] = disjunction_split(t);
        FormulaPtr expect = side == Side::Left ? a->lhs : a->rhs;
        if (!formula_eq(infer(Context{}, w), expect))
          failed("disjunction witness has wrong type");
        ++checks;
      }
      if (a->kind == FKind::Box && a->lhs->kind == FKind::Disj) {
        auto [side, w] = weak_dp(t);
        FormulaPtr expect =
            f_box(side == Side::Left ? a->lhs->lhs : a->lhs->rhs);
        if (!formula_eq(infer(Context{}, w), expect))
          failed("weak dp witness has wrong type");
        ++checks;
      }
    }
    return checks;
  });

  return s.failures;
}

}  // namespace ielc
