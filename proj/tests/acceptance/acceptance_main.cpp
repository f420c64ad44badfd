// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets and tolerances are pinned in code next to each check.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
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

using namespace ielc;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
  auto start = Clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                Clock::now() - start)
                .count();
  if (!ok || detail.rfind("FAIL", 0) == 0) {
    ok = false;
    ++failures;
  }
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "C" << number << " " << name
            << " (" << ms << " ms" << (detail.empty() ? "" : "; " + detail)
            << ")\n";
  std::cout.flush();
}

std::string fail(const std::string& why) { return "FAIL: " + why; }

long long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }

// Deterministic pool of depth<=2 formulas over {p, q}.
std::vector<FormulaPtr> instantiation_pool() {
  std::vector<FormulaPtr> d0 = {F("p"), F("q"), F("Top"), F("Bot")};
  std::vector<FormulaPtr> pool = d0;
  for (const auto& a : d0) pool.push_back(f_box(a));
  for (const auto& a : d0)
    for (const auto& b : d0) {
      pool.push_back(f_impl(a, b));
      pool.push_back(f_conj(a, b));
      pool.push_back(f_disj(a, b));
    }
  size_t depth1_end = pool.size();
  for (size_t i = 4; i < depth1_end; i += 7) pool.push_back(f_box(pool[i]));
  for (size_t i = 5; i + 9 < depth1_end; i += 11)
    pool.push_back(f_impl(pool[i], pool[i + 9]));
  return pool;
}

const uint64_t kCorpusSeed = 20240901;

}  // namespace

int main() {
  std::cout << "acceptance suite: intuitionistic belief kernel\n";

  criterion(1, "derivation goldens", [] {
    auto start = Clock::now();
    if (!formula_eq(infer(Context{}, T("\\x:p. box [] in x")), F("p -> []p")))
      return fail("co-reflection witness type");
    if (!formula_eq(
            infer(Context{},
                  T("\\f:[](p->q). \\a:[]p. box [g:p->q = f, x:p = a] in g "
                    "x")),
            F("[](p->q) -> []p -> []q")))
      return fail("K witness type");
    auto iota = step(T("box [x:p = f] in x"));
    if (!iota || iota->tag != RuleTag::Iota ||
        !alpha_eq(iota->term, t_var("f")))
      return fail("iota golden step");
    if (step(iota->term)) return fail("iota result should be normal");
    auto delta =
        step(T("box [b:q = (box [x:p = f] in g x), r:s0 = h] in <b, r>"));
    if (!delta || delta->tag != RuleTag::Delta)
      return fail("delta golden step");
    if (!alpha_eq(delta->term, T("box [x:p = f, r:s0 = h] in <g x, r>")))
      return fail("delta golden result");
    if (step(delta->term)) return fail("delta result should be normal");
    if (elapsed_ms(start) >= 1000) return fail("budget: must run in < 1 s");
    return std::string("4 goldens");
  });

  criterion(2, "kripke soundness sweep", [] {
    auto start = Clock::now();
    std::vector<FormulaPtr> pool = instantiation_pool();
    const size_t N = pool.size();
    std::vector<FormulaPtr> instances;
    int per_scheme = 24;  // >= 20 required
    for (SchemeId id : all_schemes()) {
      auto mvs = scheme_metavars(id);
      for (int i = 0; i < per_scheme; ++i) {
        Instantiation inst;
        size_t picks[3] = {(7 * i + 1) % N, (11 * i + 3) % N,
                           (13 * i + 5) % N};
        for (size_t m = 0; m < mvs.size(); ++m) inst[mvs[m]] = pool[picks[m]];
        instances.push_back(instantiate_scheme(id, inst));
      }
    }
    long models = 0;
    std::string violation;
    enumerate_valid_models(
        {"p", "q"}, 3, FrameMode::Default, [&](const KripkeModel& m) {
          ++models;
          ForcingTable table(m);
          for (const auto& inst : instances)
            for (size_t w = 0; w < m.worlds.size(); ++w)
              if (!table.forces(static_cast<int>(w), inst)) {
                violation = "instance " + print_formula(inst) + " fails in\n" +
                            print_model(m);
                return false;
              }
          return true;
        });
    if (!violation.empty()) return fail(violation);
    if (elapsed_ms(start) >= 300000) return fail("budget: must run in < 5 min");
    std::ostringstream ss;
    ss << instances.size() << " instances x " << models << " models";
    return ss.str();
  });

  criterion(3, "countermodel goldens", [] {
    const char* refutable[] = {"[]p -> p", "p \\/ ~p", "~~p -> p",
                               "[]p \\/ ~[]p"};
    for (const char* s : refutable) {
      auto start = Clock::now();
      auto found = countermodel_search(parse_formula(s), 3);
      if (!found) return fail(std::string("no countermodel for ") + s);
      if (found->first.worlds.size() > 3)
        return fail(std::string("oversized countermodel for ") + s);
      if (!validate_model(found->first).empty())
        return fail(std::string("invalid countermodel for ") + s);
      if (forces(found->first, found->second, parse_formula(s)))
        return fail(std::string("countermodel does not refute ") + s);
      if (elapsed_ms(start) >= 1000)
        return fail(std::string("budget: ") + s + " must run in < 1 s");
    }
    if (countermodel_search(F("p -> []p"), 3))
      return fail("co-reflection wrongly refuted");
    if (countermodel_search(F("[](p -> q) -> []p -> []q"), 3))
      return fail("K scheme wrongly refuted");
    return std::string("4 refuted, 2 validated");
  });

  criterion(4, "frame-condition conflict is observable", [] {
    auto literal =
        countermodel_search(F("[]p -> p"), 3, FrameMode::PaperLiteral);
    if (literal)
      return fail("paper-literal frames should validate []p -> p");
    auto dflt = countermodel_search(F("[]p -> p"), 3, FrameMode::Default);
    if (!dflt) return fail("default frames should refute []p -> p");
    return std::string("modes disagree as documented");
  });

  criterion(5, "erasure simulation (300 terms, budget 200)", [] {
    auto start = Clock::now();
    std::vector<TermPtr> corpus = gen_corpus(kCorpusSeed, 300);
    long steps = 0;
    for (const TermPtr& t : corpus) {
      for (const StepResult& r : all_steps(t)) {
        if (simulates(Context{}, t, r.term, 200) != SearchVerdict::Yes)
          return fail("unsimulated " + rule_tag_name(r.tag) + " step from " +
                      print_term(t));
        ++steps;
      }
    }
    if (steps < 300) return fail("corpus is redex-poor");
    if (elapsed_ms(start) >= 120000)
      return fail("budget: must run in < 2 min");
    std::ostringstream ss;
    ss << steps << " reduction steps simulated";
    return ss.str();
  });

  criterion(6, "termination and confluence across strategies", [] {
    std::vector<TermPtr> corpus = gen_corpus(kCorpusSeed, 300);
    for (const TermPtr& t : corpus) {
      TermPtr lo, ri;
      try {
        lo = normalize(t, 10000, RewriteMode::Default,
                       Strategy::LeftmostOutermost)
                 .first;
        ri = normalize(t, 10000, RewriteMode::Default,
                       Strategy::RightmostInnermost)
                 .first;
      } catch (const StepBudgetExceeded&) {
        return fail("normalization exceeded 10000 steps on " + print_term(t));
      }
      if (!alpha_eq(lo, ri))
        return fail("strategies disagree on " + print_term(t));
    }
    return std::string("300 terms, both strategies");
  });

  criterion(7, "subject reduction along every trace", [] {
    std::vector<TermPtr> corpus = gen_corpus(kCorpusSeed, 300);
    long checked = 0;
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      auto [nf, trace] = normalize(t);
      for (const TraceStep& s : trace.steps) {
        if (!formula_eq(infer(Context{}, s.term), a))
          return fail("type changed under reduction of " + print_term(t));
        ++checked;
      }
    }
    std::ostringstream ss;
    ss << checked << " trace entries";
    return ss.str();
  });

  criterion(8, "canonicity and the extraction corollaries", [] {
    std::vector<TermPtr> corpus = gen_corpus(kCorpusSeed, 300);
    long boxes = 0, sums = 0, boxed_sums = 0;
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      TermPtr nf = normalize(t).first;
      if (classify(nf).kind != TermClass::Kind::IntroHeaded)
        return fail("closed normal term not intro-headed: " + print_term(nf));
      if (!canonicity_check(nf, a))
        return fail("head does not match the connective of " +
                    print_formula(a));
      if (a->kind == FKind::Box) {
        ++boxes;
        TermPtr u = reflection_extract(t);
        if (!formula_eq(infer(Context{}, u), a->lhs))
          return fail("reflection witness has the wrong type");
      }
      if (a->kind == FKind::Disj) {
        ++sums;
        auto [side, w] = disjunction_split(t);
        if (!formula_eq(infer(Context{}, w),
                        side == Side::Left ? a->lhs : a->rhs))
          return fail("split witness has the wrong type");
      }
      if (a->kind == FKind::Box && a->lhs->kind == FKind::Disj) {
        ++boxed_sums;
        auto [side, w] = weak_dp(t);
        FormulaPtr expect =
            f_box(side == Side::Left ? a->lhs->lhs : a->lhs->rhs);
        if (!formula_eq(infer(Context{}, w), expect))
          return fail("weak-dp witness has the wrong type");
      }
    }
    if (boxes < 20 || sums < 10 || boxed_sums < 5)
      return fail("corpus is extraction-poor");
    std::ostringstream ss;
    ss << boxes << " reflections, " << sums << " splits, " << boxed_sums
       << " weak-dp runs";
    return ss.str();
  });

  criterion(9, "hilbert bridge", [] {
    // forward: random checking proofs become well-typed terms
    Rng rng(kCorpusSeed + 1);
    std::vector<KripkeModel> small_models;
    enumerate_valid_models({"p", "q"}, 2, FrameMode::Default,
                           [&](const KripkeModel& m) {
                             small_models.push_back(m);
                             return true;
                           });
    for (int i = 0; i < 200; ++i) {
      bool with_hyps = rng.chance(50);
      HilbertProof p = gen_hilbert_proof(rng, with_hyps, 6);
      FormulaPtr concl = check_hilbert(p);
      Context ctx;
      TermPtr t = hilbert_to_nd(p, &ctx);
      if (!formula_eq(infer(ctx, t), concl))
        return fail("hilbert_to_nd conclusion mismatch");
      if (!p.hypotheses.empty()) {
        HilbertProof d = deduction_theorem(p, p.hypotheses[0]);
        FormulaPtr dc = check_hilbert(d);
        if (dc->kind != FKind::Impl)
          return fail("deduction theorem lost the implication");
      } else {
        HilbertProof n = necessitation(p);
        if (!formula_eq(check_hilbert(n), f_box(concl)))
          return fail("necessitation conclusion mismatch");
        for (const KripkeModel& m : small_models)
          if (!valid_in_model(m, concl))
            return fail("theorem " + print_formula(concl) +
                        " fails in a 2-world model");
      }
    }
    // converse: corpus terms become checking proofs
    std::vector<TermPtr> corpus = gen_corpus(kCorpusSeed + 2, 200);
    for (const TermPtr& t : corpus) {
      FormulaPtr a = infer(Context{}, t);
      HilbertProof p = nd_to_hilbert(t, Context{});
      if (!formula_eq(check_hilbert(p), a))
        return fail("nd_to_hilbert conclusion mismatch for " + print_term(t));
    }
    std::ostringstream ss;
    ss << "200 proofs each way, " << small_models.size()
       << " two-world models";
    return ss.str();
  });

  criterion(10, "parse/print round trips (1000 each)", [] {
    Rng rng(kCorpusSeed + 3);
    const std::vector<std::string> atoms = {"p", "q", "s0"};
    for (int i = 0; i < 1000; ++i) {
      FormulaPtr f = gen_formula(rng, 4, atoms);
      if (!formula_eq(parse_formula(print_formula(f)), f))
        return fail("formula round trip: " + print_formula(f));
    }
    for (int i = 0; i < 1000; ++i) {
      TermPtr t = gen_raw_term(rng, 20, atoms);
      if (!alpha_eq(parse_term(print_term(t)), t))
        return fail("term round trip: " + print_term(t));
    }
    for (int i = 0; i < 1000; ++i) {
      KripkeModel m = gen_model(rng, 3, {"p", "q"});
      KripkeModel back = parse_model(print_model(m));
      if (back.worlds != m.worlds || back.le != m.le || back.E != m.E)
        return fail("model round trip");
      for (const auto& [atom, ws] : m.val) {
        auto it = back.val.find(atom);
        std::set<int> got =
            it == back.val.end() ? std::set<int>{} : it->second;
        if (got != ws) return fail("model valuation round trip");
      }
    }
    return std::string("3000 round trips");
  });

  if (failures) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
