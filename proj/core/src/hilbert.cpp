#include "ielc/hilbert.hpp"

#include <algorithm>

#include "ielc/printer.hpp"
#include "ielc/typecheck.hpp"

namespace ielc {

// ---------------------------------------------------------------------------
// Schemes
// ---------------------------------------------------------------------------

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> ids = {
      SchemeId::A1, SchemeId::A2, SchemeId::A3, SchemeId::A4,
      SchemeId::A5, SchemeId::A6, SchemeId::A7, SchemeId::A8,
      SchemeId::A9, SchemeId::A10, SchemeId::K, SchemeId::CR};
  return ids;
}

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::A1: return "A1";
    case SchemeId::A2: return "A2";
    case SchemeId::A3: return "A3";
    case SchemeId::A4: return "A4";
    case SchemeId::A5: return "A5";
    case SchemeId::A6: return "A6";
    case SchemeId::A7: return "A7";
    case SchemeId::A8: return "A8";
    case SchemeId::A9: return "A9";
    case SchemeId::A10: return "A10";
    case SchemeId::K: return "K";
    case SchemeId::CR: return "CR";
  }
  return "?";
}

bool scheme_from_name(const std::string& name, SchemeId& out) {
  for (SchemeId id : all_schemes())
    if (scheme_name(id) == name) {
      out = id;
      return true;
    }
  return false;
}

FormulaPtr scheme_shape(SchemeId id) {
  FormulaPtr A = f_atom("A"), B = f_atom("B"), C = f_atom("C");
  switch (id) {
    case SchemeId::A1:
      return f_impl(A, f_impl(B, A));
    case SchemeId::A2:
      return f_impl(f_impl(A, f_impl(B, C)),
                    f_impl(f_impl(A, B), f_impl(A, C)));
    case SchemeId::A3:
      return f_impl(f_conj(A, B), A);
    case SchemeId::A4:
      return f_impl(f_conj(A, B), B);
    case SchemeId::A5:
      return f_impl(A, f_impl(B, f_conj(A, B)));
    case SchemeId::A6:
      return f_impl(A, f_disj(A, B));
    case SchemeId::A7:
      return f_impl(B, f_disj(A, B));
    case SchemeId::A8:
      return f_impl(f_impl(A, C),
                    f_impl(f_impl(B, C), f_impl(f_disj(A, B), C)));
    case SchemeId::A9:
      return f_impl(f_bot(), A);
    case SchemeId::A10:
      return f_top();
    case SchemeId::K:
      return f_impl(f_box(f_impl(A, B)), f_impl(f_box(A), f_box(B)));
    case SchemeId::CR:
      return f_impl(A, f_box(A));
  }
  throw std::logic_error("scheme_shape: unreachable");
}

std::vector<std::string> scheme_metavars(SchemeId id) {
  switch (id) {
    case SchemeId::A2:
    case SchemeId::A8:
      return {"A", "B", "C"};
    case SchemeId::A9:
    case SchemeId::CR:
      return {"A"};
    case SchemeId::A10:
      return {};
    default:
      return {"A", "B"};
  }
}

FormulaPtr instantiate_scheme(SchemeId id, const Instantiation& inst) {
  std::vector<std::string> mvs = scheme_metavars(id);
  if (inst.size() != mvs.size())
    throw std::invalid_argument("scheme " + scheme_name(id) + " takes " +
                                std::to_string(mvs.size()) +
                                " metavariables");
  std::vector<std::pair<std::string, FormulaPtr>> map;
  for (const std::string& mv : mvs) {
    auto it = inst.find(mv);
    if (it == inst.end())
      throw std::invalid_argument("scheme " + scheme_name(id) +
                                  " needs metavariable " + mv);
    map.push_back({mv, it->second});
  }
  return substitute_atoms(scheme_shape(id), map);
}

Justification Justification::hyp(int index) {
  Justification j;
  j.kind = Kind::Hyp;
  j.hyp_index = index;
  return j;
}

Justification Justification::axiom(SchemeId id, Instantiation inst) {
  Justification j;
  j.kind = Kind::Axiom;
  j.scheme = id;
  j.inst = std::move(inst);
  return j;
}

Justification Justification::mp(int major, int minor) {
  Justification j;
  j.kind = Kind::MP;
  j.major = major;
  j.minor = minor;
  return j;
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

FormulaPtr check_hilbert(const HilbertProof& p) {
  if (p.lines.empty())
    throw HilbertError(HilbertErrorCode::EmptyProof, 0, "proof has no lines");
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& line = p.lines[i];
    int lineno = static_cast<int>(i) + 1;
    switch (line.just.kind) {
      case Justification::Kind::Hyp: {
        int j = line.just.hyp_index;
        if (j < 1 || j > static_cast<int>(p.hypotheses.size()))
          throw HilbertError(HilbertErrorCode::BadHypIndex, lineno,
                             "line " + std::to_string(lineno) +
                                 ": hypothesis index " + std::to_string(j) +
                                 " out of range");
        if (!formula_eq(p.hypotheses[j - 1], line.formula))
          throw HilbertError(HilbertErrorCode::BadHypIndex, lineno,
                             "line " + std::to_string(lineno) +
                                 ": formula differs from hypothesis " +
                                 std::to_string(j));
        break;
      }
      case Justification::Kind::Axiom: {
        FormulaPtr inst;
        try {
          inst = instantiate_scheme(line.just.scheme, line.just.inst);
        } catch (const std::invalid_argument& e) {
          throw HilbertError(HilbertErrorCode::BadAxiomInstance, lineno,
                             "line " + std::to_string(lineno) + ": " +
                                 e.what());
        }
        if (!formula_eq(inst, line.formula))
          throw HilbertError(
              HilbertErrorCode::BadAxiomInstance, lineno,
              "line " + std::to_string(lineno) + ": formula is not the " +
                  scheme_name(line.just.scheme) + " instance " +
                  print_formula(inst));
        break;
      }
      case Justification::Kind::MP: {
        int m = line.just.major, k = line.just.minor;
        auto bad = [&](const std::string& why) -> HilbertError {
          return HilbertError(HilbertErrorCode::BadMP, lineno,
                              "line " + std::to_string(lineno) + ": " + why);
        };
        if (m < 1 || m >= lineno || k < 1 || k >= lineno)
          throw bad("mp references must point at earlier lines");
        const FormulaPtr& major = p.lines[m - 1].formula;
        if (major->kind != FKind::Impl)
          throw bad("major premise is not an implication");
        if (!formula_eq(major->lhs, p.lines[k - 1].formula))
          throw bad("minor premise does not match the antecedent");
        if (!formula_eq(major->rhs, line.formula))
          throw bad("conclusion does not match the consequent");
        break;
      }
    }
  }
  return p.lines.back().formula;
}

// ---------------------------------------------------------------------------
// Proof builder
// ---------------------------------------------------------------------------

namespace {

struct Builder {
  std::vector<FormulaPtr> hyps;
  std::vector<ProofLine> lines;

  int add_hyp_line(int index) {
    lines.push_back({hyps[index - 1], Justification::hyp(index)});
    return static_cast<int>(lines.size());
  }
  int add_axiom(SchemeId id, Instantiation inst) {
    FormulaPtr f = instantiate_scheme(id, inst);
    lines.push_back({f, Justification::axiom(id, std::move(inst))});
    return static_cast<int>(lines.size());
  }
  int add_mp(int major, int minor) {
    const FormulaPtr& mf = lines[major - 1].formula;
    lines.push_back({mf->rhs, Justification::mp(major, minor)});
    return static_cast<int>(lines.size());
  }
  // Inlines a proof whose hypothesis list is a prefix of ours; returns the
  // 1-based index of its conclusion.
  int append(const HilbertProof& p) {
    int offset = static_cast<int>(lines.size());
    for (const ProofLine& line : p.lines) {
      ProofLine copy = line;
      if (copy.just.kind == Justification::Kind::MP) {
        copy.just.major += offset;
        copy.just.minor += offset;
      }
      lines.push_back(std::move(copy));
    }
    return static_cast<int>(lines.size());
  }
  HilbertProof take() { return {std::move(hyps), std::move(lines)}; }
};

// h -> h in five lines (A1, A2, MP, A1, MP).
int emit_identity(Builder& b, const FormulaPtr& h) {
  FormulaPtr hh = f_impl(h, h);
  int l1 = b.add_axiom(SchemeId::A1, {{"A", h}, {"B", hh}});
  int l2 = b.add_axiom(SchemeId::A2, {{"A", h}, {"B", hh}, {"C", h}});
  int l3 = b.add_mp(l2, l1);
  int l4 = b.add_axiom(SchemeId::A1, {{"A", h}, {"B", h}});
  return b.add_mp(l3, l4);
}

HilbertProof identity_proof(const FormulaPtr& f) {
  Builder b;
  emit_identity(b, f);
  return b.take();
}

// Core of the deduction theorem; discharged indices must all carry the same
// formula. Assumes the input checks.
HilbertProof dt_core(const HilbertProof& p, const std::vector<int>& idxs) {
  if (idxs.empty())
    throw HilbertError(HilbertErrorCode::BadDischarge, 0,
                       "no hypothesis occurrence to discharge");
  for (int i : idxs)
    if (i < 1 || i > static_cast<int>(p.hypotheses.size()))
      throw HilbertError(HilbertErrorCode::BadDischarge, 0,
                         "hypothesis index out of range");
  FormulaPtr h = p.hypotheses[idxs[0] - 1];
  for (int i : idxs)
    if (!formula_eq(p.hypotheses[i - 1], h))
      throw HilbertError(HilbertErrorCode::BadDischarge, 0,
                         "discharged occurrences disagree");

  auto discharged = [&](int idx) {
    return std::find(idxs.begin(), idxs.end(), idx) != idxs.end();
  };

  Builder b;
  std::vector<int> remap(p.hypotheses.size() + 1, 0);
  for (size_t i = 1; i <= p.hypotheses.size(); ++i) {
    if (discharged(static_cast<int>(i))) continue;
    b.hyps.push_back(p.hypotheses[i - 1]);
    remap[i] = static_cast<int>(b.hyps.size());
  }

  int identity_line = 0;  // lazily shared h -> h
  std::vector<int> line_for(p.lines.size());  // proves h -> B_i
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& line = p.lines[i];
    const FormulaPtr& bi = line.formula;
    switch (line.just.kind) {
      case Justification::Kind::Hyp:
        if (discharged(line.just.hyp_index)) {
          if (!identity_line) identity_line = emit_identity(b, h);
          line_for[i] = identity_line;
          break;
        }
        [[fallthrough]];
      case Justification::Kind::Axiom: {
        int base = line.just.kind == Justification::Kind::Hyp
                       ? b.add_hyp_line(remap[line.just.hyp_index])
                       : b.add_axiom(line.just.scheme, line.just.inst);
        int pad = b.add_axiom(SchemeId::A1, {{"A", bi}, {"B", h}});
        line_for[i] = b.add_mp(pad, base);
        break;
      }
      case Justification::Kind::MP: {
        const FormulaPtr& bk = p.lines[line.just.minor - 1].formula;
        int a2 = b.add_axiom(SchemeId::A2, {{"A", h}, {"B", bk}, {"C", bi}});
        int s = b.add_mp(a2, line_for[line.just.major - 1]);
        line_for[i] = b.add_mp(s, line_for[line.just.minor - 1]);
        break;
      }
    }
  }
  return b.take();
}

}  // namespace

HilbertProof deduction_theorem_at(const HilbertProof& p,
                                  const std::vector<int>& hyp_indices) {
  check_hilbert(p);
  return dt_core(p, hyp_indices);
}

HilbertProof deduction_theorem(const HilbertProof& p, const FormulaPtr& h) {
  check_hilbert(p);
  std::vector<int> idxs;
  for (size_t i = 0; i < p.hypotheses.size(); ++i)
    if (formula_eq(p.hypotheses[i], h)) idxs.push_back(static_cast<int>(i) + 1);
  if (idxs.empty())
    throw HilbertError(HilbertErrorCode::BadDischarge, 0,
                       print_formula(h) + " is not among the hypotheses");
  return dt_core(p, idxs);
}

HilbertProof necessitation(const HilbertProof& p) {
  FormulaPtr concl = check_hilbert(p);
  if (!p.hypotheses.empty())
    throw HilbertError(HilbertErrorCode::NonEmptyHypotheses, 0,
                       "necessitation needs a hypothesis-free proof");
  HilbertProof out = p;
  int n = static_cast<int>(out.lines.size());
  out.lines.push_back({f_impl(concl, f_box(concl)),
                       Justification::axiom(SchemeId::CR, {{"A", concl}})});
  out.lines.push_back({f_box(concl), Justification::mp(n + 1, n)});
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert -> natural deduction
// ---------------------------------------------------------------------------

namespace {

FormulaPtr inst_of(const Instantiation& inst, const char* mv) {
  return inst.at(mv);
}

TermPtr axiom_witness(SchemeId id, const Instantiation& inst) {
  switch (id) {
    case SchemeId::A1: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("a", A, t_lam("b", B, t_var("a")));
    }
    case SchemeId::A2: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B"),
                 C = inst_of(inst, "C");
      return t_lam(
          "f", f_impl(A, f_impl(B, C)),
          t_lam("g", f_impl(A, B),
                t_lam("a", A,
                      t_app(t_app(t_var("f"), t_var("a")),
                            t_app(t_var("g"), t_var("a"))))));
    }
    case SchemeId::A3: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("w", f_conj(A, B), t_proj1(t_var("w")));
    }
    case SchemeId::A4: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("w", f_conj(A, B), t_proj2(t_var("w")));
    }
    case SchemeId::A5: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("a", A,
                   t_lam("b", B, t_pair(t_var("a"), t_var("b"))));
    }
    case SchemeId::A6: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("a", A, t_inj1(f_disj(A, B), t_var("a")));
    }
    case SchemeId::A7: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam("b", B, t_inj2(f_disj(A, B), t_var("b")));
    }
    case SchemeId::A8: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B"),
                 C = inst_of(inst, "C");
      return t_lam(
          "f", f_impl(A, C),
          t_lam("g", f_impl(B, C),
                t_lam("s", f_disj(A, B),
                      t_case(t_var("s"), "x", t_app(t_var("f"), t_var("x")),
                             "y", t_app(t_var("g"), t_var("y"))))));
    }
    case SchemeId::A9: {
      FormulaPtr A = inst_of(inst, "A");
      return t_lam("z", f_bot(), t_exfalso(A, t_var("z")));
    }
    case SchemeId::A10:
      return t_triv(t_lam("z", f_bot(), t_var("z")));
    case SchemeId::K: {
      FormulaPtr A = inst_of(inst, "A"), B = inst_of(inst, "B");
      return t_lam(
          "f", f_box(f_impl(A, B)),
          t_lam("a", f_box(A),
                t_box({{"g", f_impl(A, B), t_var("f")},
                       {"x", A, t_var("a")}},
                      t_app(t_var("g"), t_var("x")))));
    }
    case SchemeId::CR: {
      FormulaPtr A = inst_of(inst, "A");
      return t_lam("x", A, t_box({}, t_var("x")));
    }
  }
  throw std::logic_error("axiom_witness: unreachable");
}

}  // namespace

TermPtr hilbert_to_nd(const HilbertProof& p, Context* ctx_out) {
  check_hilbert(p);
  Context ctx;
  for (size_t i = 0; i < p.hypotheses.size(); ++i)
    ctx.push("h" + std::to_string(i + 1), p.hypotheses[i]);
  std::vector<TermPtr> terms(p.lines.size());
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& line = p.lines[i];
    switch (line.just.kind) {
      case Justification::Kind::Hyp:
        terms[i] = t_var("h" + std::to_string(line.just.hyp_index));
        break;
      case Justification::Kind::Axiom:
        terms[i] = axiom_witness(line.just.scheme, line.just.inst);
        break;
      case Justification::Kind::MP:
        terms[i] =
            t_app(terms[line.just.major - 1], terms[line.just.minor - 1]);
        break;
    }
  }
  if (ctx_out) *ctx_out = ctx;
  return terms.back();
}

// ---------------------------------------------------------------------------
// Natural deduction -> Hilbert
// ---------------------------------------------------------------------------

FormulaPtr conj_fold(const std::vector<FormulaPtr>& formulas) {
  if (formulas.empty()) return f_top();
  FormulaPtr acc = formulas[0];
  for (size_t i = 1; i < formulas.size(); ++i) acc = f_conj(acc, formulas[i]);
  return acc;
}

namespace {

// Closed proof of box X -> (box Y -> box (X /\ Y)): A5 boxed via CR, then two
// K distributions, assembled under temporary hypotheses and discharged.
HilbertProof bin_box_conj(const FormulaPtr& X, const FormulaPtr& Y) {
  Builder b;
  b.hyps = {f_box(X), f_box(Y)};
  int h1 = b.add_hyp_line(1);
  int h2 = b.add_hyp_line(2);
  int a5 = b.add_axiom(SchemeId::A5, {{"A", X}, {"B", Y}});
  FormulaPtr a5f = b.lines[a5 - 1].formula;
  int cr = b.add_axiom(SchemeId::CR, {{"A", a5f}});
  int boxed = b.add_mp(cr, a5);
  int k1 = b.add_axiom(SchemeId::K,
                       {{"A", X}, {"B", f_impl(Y, f_conj(X, Y))}});
  int step1 = b.add_mp(k1, boxed);
  int inner = b.add_mp(step1, h1);
  int k2 = b.add_axiom(SchemeId::K, {{"A", Y}, {"B", f_conj(X, Y)}});
  int step2 = b.add_mp(k2, inner);
  b.add_mp(step2, h2);
  HilbertProof p = b.take();
  p = dt_core(p, {2});
  return dt_core(p, {1});
}

struct NdTranslator {
  std::vector<FormulaPtr> hyps;
  std::vector<std::pair<std::string, int>> scope;  // name -> 1-based index

  int lookup(const std::string& x) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == x) return it->second;
    throw std::logic_error("nd_to_hilbert: unbound '" + x + "'");
  }

  Builder fresh_builder() const {
    Builder b;
    b.hyps = hyps;
    return b;
  }

  HilbertProof with_hypothesis(const std::string& var, const FormulaPtr& f,
                               const TermPtr& body) {
    hyps.push_back(f);
    scope.push_back({var, static_cast<int>(hyps.size())});
    HilbertProof p = translate(body);
    scope.pop_back();
    hyps.pop_back();
    return dt_core(p, {static_cast<int>(hyps.size()) + 1});
  }

  HilbertProof translate(const TermPtr& t) {
    switch (t->kind) {
      case TKind::Var: {
        Builder b = fresh_builder();
        b.add_hyp_line(lookup(t->var));
        return b.take();
      }
      case TKind::Lam:
        return with_hypothesis(t->var, t->annot, t->a);
      case TKind::App: {
        Builder b = fresh_builder();
        int cf = b.append(translate(t->a));
        int ca = b.append(translate(t->b));
        b.add_mp(cf, ca);
        return b.take();
      }
      case TKind::Pair: {
        Builder b = fresh_builder();
        int ca = b.append(translate(t->a));
        FormulaPtr A = b.lines[ca - 1].formula;
        int cb = b.append(translate(t->b));
        FormulaPtr B = b.lines[cb - 1].formula;
        int a5 = b.add_axiom(SchemeId::A5, {{"A", A}, {"B", B}});
        int s = b.add_mp(a5, ca);
        b.add_mp(s, cb);
        return b.take();
      }
      case TKind::Proj1:
      case TKind::Proj2: {
        Builder b = fresh_builder();
        int ca = b.append(translate(t->a));
        FormulaPtr conj = b.lines[ca - 1].formula;
        int ax = b.add_axiom(
            t->kind == TKind::Proj1 ? SchemeId::A3 : SchemeId::A4,
            {{"A", conj->lhs}, {"B", conj->rhs}});
        b.add_mp(ax, ca);
        return b.take();
      }
      case TKind::Inj1:
      case TKind::Inj2: {
        Builder b = fresh_builder();
        int ca = b.append(translate(t->a));
        int ax = b.add_axiom(
            t->kind == TKind::Inj1 ? SchemeId::A6 : SchemeId::A7,
            {{"A", t->annot->lhs}, {"B", t->annot->rhs}});
        b.add_mp(ax, ca);
        return b.take();
      }
      case TKind::Case: {
        Builder b = fresh_builder();
        int cs = b.append(translate(t->a));
        FormulaPtr disj = b.lines[cs - 1].formula;
        HilbertProof left = with_hypothesis(t->var, disj->lhs, t->b);
        FormulaPtr C = left.lines.back().formula->rhs;
        HilbertProof right = with_hypothesis(t->var2, disj->rhs, t->c);
        int cl = b.append(left);
        int cr = b.append(right);
        int a8 = b.add_axiom(SchemeId::A8,
                             {{"A", disj->lhs}, {"B", disj->rhs}, {"C", C}});
        int s1 = b.add_mp(a8, cl);
        int s2 = b.add_mp(s1, cr);
        b.add_mp(s2, cs);
        return b.take();
      }
      case TKind::Exfalso: {
        Builder b = fresh_builder();
        int ca = b.append(translate(t->a));
        int a9 = b.add_axiom(SchemeId::A9, {{"A", t->annot}});
        b.add_mp(a9, ca);
        return b.take();
      }
      case TKind::Triv: {
        // Only the conclusion matters: Top holds outright.
        Builder b = fresh_builder();
        b.add_axiom(SchemeId::A10, {});
        return b.take();
      }
      case TKind::BoxIntro:
        return translate_box(t);
    }
    throw std::logic_error("nd_to_hilbert: unreachable");
  }

  HilbertProof translate_box(const TermPtr& t) {
    const size_t n = t->bindings.size();
    std::vector<FormulaPtr> parts;
    for (const auto& bind : t->bindings) parts.push_back(bind.annot);
    FormulaPtr conj = conj_fold(parts);

    // Body proof, binders discharged innermost-first: A1 -> ... -> An -> B.
    HilbertProof curried;
    {
      size_t base = hyps.size();
      for (size_t i = 0; i < n; ++i) {
        hyps.push_back(t->bindings[i].annot);
        scope.push_back({t->bindings[i].name, static_cast<int>(hyps.size())});
      }
      curried = translate(t->body);
      for (size_t i = n; i-- > 0;) {
        scope.pop_back();
        hyps.pop_back();
        curried = dt_core(curried, {static_cast<int>(base + i) + 1});
      }
    }

    Builder b = fresh_builder();
    FormulaPtr body_formula;  // B
    int c_imp;                // proves conj -> B
    if (n == 0) {
      int cb = b.append(curried);
      body_formula = b.lines[cb - 1].formula;
      int a1 = b.add_axiom(SchemeId::A1, {{"A", body_formula}, {"B", f_top()}});
      c_imp = b.add_mp(a1, cb);
    } else if (n == 1) {
      c_imp = b.append(curried);
      body_formula = b.lines[c_imp - 1].formula->rhs;
    } else {
      // Uncurry under a temporary conjunction hypothesis.
      Builder sub = fresh_builder();
      sub.hyps.push_back(conj);
      int c_curry = sub.append(curried);
      int h_and = sub.add_hyp_line(static_cast<int>(sub.hyps.size()));
      // Left-nested prefixes: prefix[j] proves A1 /\ ... /\ Aj.
      std::vector<FormulaPtr> pref(n + 1);
      pref[1] = parts[0];
      for (size_t j = 2; j <= n; ++j) pref[j] = f_conj(pref[j - 1], parts[j - 1]);
      std::vector<int> extracted(n + 1, 0);
      int prefix_line = h_and;
      for (size_t j = n; j >= 2; --j) {
        int a4 = sub.add_axiom(SchemeId::A4,
                               {{"A", pref[j - 1]}, {"B", parts[j - 1]}});
        extracted[j] = sub.add_mp(a4, prefix_line);
        int a3 = sub.add_axiom(SchemeId::A3,
                               {{"A", pref[j - 1]}, {"B", parts[j - 1]}});
        prefix_line = sub.add_mp(a3, prefix_line);
      }
      extracted[1] = prefix_line;
      int cur = c_curry;
      for (size_t i = 1; i <= n; ++i) cur = sub.add_mp(cur, extracted[i]);
      body_formula = sub.lines[cur - 1].formula;
      HilbertProof unc =
          dt_core(sub.take(), {static_cast<int>(hyps.size()) + 1});
      c_imp = b.append(unc);
    }

    // Modal lift: box (conj -> B), then K gives box conj -> box B.
    FormulaPtr imp = f_impl(conj, body_formula);
    int cr = b.add_axiom(SchemeId::CR, {{"A", imp}});
    int boxed_imp = b.add_mp(cr, c_imp);
    int k = b.add_axiom(SchemeId::K, {{"A", conj}, {"B", body_formula}});
    int lift = b.add_mp(k, boxed_imp);

    // box conj, from the translated arguments.
    int box_and;
    if (n == 0) {
      int top = b.add_axiom(SchemeId::A10, {});
      int cr2 = b.add_axiom(SchemeId::CR, {{"A", f_top()}});
      box_and = b.add_mp(cr2, top);
    } else {
      int chain = b.append(box_conj(parts));
      for (size_t i = 0; i < n; ++i) {
        int carg = b.append(translate(t->bindings[i].arg));
        chain = b.add_mp(chain, carg);
      }
      box_and = chain;
    }
    b.add_mp(lift, box_and);
    return b.take();
  }
};

}  // namespace

HilbertProof box_conj(const std::vector<FormulaPtr>& formulas) {
  if (formulas.empty())
    throw std::invalid_argument("box_conj needs at least one formula");
  if (formulas.size() == 1) return identity_proof(f_box(formulas[0]));
  Builder b;
  for (const FormulaPtr& f : formulas) b.hyps.push_back(f_box(f));
  std::vector<int> hyp_lines;
  for (size_t i = 1; i <= formulas.size(); ++i)
    hyp_lines.push_back(b.add_hyp_line(static_cast<int>(i)));
  FormulaPtr cur_f = formulas[0];
  int cur = hyp_lines[0];
  for (size_t i = 1; i < formulas.size(); ++i) {
    int bin = b.append(bin_box_conj(cur_f, formulas[i]));
    int s1 = b.add_mp(bin, cur);
    cur = b.add_mp(s1, hyp_lines[i]);
    cur_f = f_conj(cur_f, formulas[i]);
  }
  HilbertProof p = b.take();
  for (size_t i = formulas.size(); i-- > 0;)
    p = dt_core(p, {static_cast<int>(i) + 1});
  return p;
}

HilbertProof nd_to_hilbert(const TermPtr& t, const Context& ctx) {
  infer(ctx, t);  // propagate type errors before translating
  NdTranslator tr;
  for (const auto& [name, f] : ctx.entries()) {
    tr.hyps.push_back(f);
    tr.scope.push_back({name, static_cast<int>(tr.hyps.size())});
  }
  return tr.translate(t);
}

}  // namespace ielc
