#pragma once

#include <map>
#include <string>
#include <vector>

#include "ielc/errors.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

// ---------------------------------------------------------------------------
// The axiomatic calculus: A1-A10 for the intuitionistic base, K and CR for
// the epistemic box, modus ponens as the only inference rule.
// ---------------------------------------------------------------------------

enum class SchemeId { A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, K, CR };

const std::vector<SchemeId>& all_schemes();
std::string scheme_name(SchemeId id);
bool scheme_from_name(const std::string& name, SchemeId& out);

/// Shape of the scheme with metavariables represented as uppercase atoms
/// ("A", "B", "C"); user formulas never contain uppercase atoms.
FormulaPtr scheme_shape(SchemeId id);
std::vector<std::string> scheme_metavars(SchemeId id);

using Instantiation = std::map<std::string, FormulaPtr>;

/// Throws std::invalid_argument when the map does not cover the scheme's
/// metavariables exactly.
FormulaPtr instantiate_scheme(SchemeId id, const Instantiation& inst);

struct Justification {
  enum class Kind { Hyp, Axiom, MP } kind;
  int hyp_index = 0;  // 1-based into hypotheses
  SchemeId scheme = SchemeId::A1;
  Instantiation inst;
  int major = 0, minor = 0;  // 1-based line references

  static Justification hyp(int index);
  static Justification axiom(SchemeId id, Instantiation inst);
  static Justification mp(int major, int minor);
};

struct ProofLine {
  FormulaPtr formula;
  Justification just;
};

struct HilbertProof {
  std::vector<FormulaPtr> hypotheses;
  std::vector<ProofLine> lines;
};

enum class HilbertErrorCode {
  BadAxiomInstance,
  BadMP,
  BadHypIndex,
  NonEmptyHypotheses,
  EmptyProof,
  BadDischarge
};

struct HilbertError : Error {
  HilbertErrorCode code;
  int line;  // 1-based; 0 when not line-specific
  HilbertError(HilbertErrorCode c, int l, const std::string& msg)
      : Error(msg), code(c), line(l) {}
};

/// Validates every line and returns the conclusion (the final formula).
FormulaPtr check_hilbert(const HilbertProof& p);

/// Discharges every hypothesis occurrence structurally equal to h, turning a
/// proof of B under hypotheses including h into a proof of h -> B. The
/// transformation is the textbook one (A1 padding, A2 for MP, the shared
/// five-line identity for uses of h), so output length is at most 3n+2.
HilbertProof deduction_theorem(const HilbertProof& p, const FormulaPtr& h);

/// Internal variant discharging exactly the given 1-based hypothesis indices
/// (all of which must carry the same formula). Exposed for the translators.
HilbertProof deduction_theorem_at(const HilbertProof& p,
                                  const std::vector<int>& hyp_indices);

/// From a hypothesis-free proof of A, derives box A by co-reflection + MP.
HilbertProof necessitation(const HilbertProof& p);

/// Forward direction of the equivalence: a checking proof becomes a proof
/// term over the context h1:H1, ..., hk:Hk. The term typechecks at the
/// proof's conclusion.
TermPtr hilbert_to_nd(const HilbertProof& p, Context* ctx_out = nullptr);

/// Converse direction: a well-typed term becomes a checking axiomatic proof
/// with the context formulas as hypotheses.
HilbertProof nd_to_hilbert(const TermPtr& t, const Context& ctx);

/// Closed proof of box A1 -> (box A2 -> ... -> box(A1 /\ ... /\ An)) with the
/// conjunction associated to the left; the modal half of the box-intro
/// translation. Requires n >= 1.
HilbertProof box_conj(const std::vector<FormulaPtr>& formulas);

/// Left-associated conjunction; the empty case is Top.
FormulaPtr conj_fold(const std::vector<FormulaPtr>& formulas);

}  // namespace ielc
