#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ielc {

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class FKind { Atom, Top, Bot, Impl, Conj, Disj, Box };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable propositional formula with the epistemic box.
/// Negation is not a constructor: ~A is notation for A -> Bot.
struct Formula {
  FKind kind;
  std::string atom;     // Atom only
  FormulaPtr lhs, rhs;  // binary connectives; Box stores its body in lhs
};

FormulaPtr f_atom(std::string name);
FormulaPtr f_top();
FormulaPtr f_bot();
FormulaPtr f_impl(FormulaPtr a, FormulaPtr b);
FormulaPtr f_conj(FormulaPtr a, FormulaPtr b);
FormulaPtr f_disj(FormulaPtr a, FormulaPtr b);
FormulaPtr f_box(FormulaPtr a);
/// ~A, i.e. A -> Bot.
FormulaPtr f_neg(FormulaPtr a);

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
int formula_depth(const FormulaPtr& f);
int formula_size(const FormulaPtr& f);
void collect_atoms(const FormulaPtr& f, std::set<std::string>& out);
/// Replaces atoms by formulas; used for axiom-scheme instantiation.
FormulaPtr substitute_atoms(
    const FormulaPtr& f,
    const std::vector<std::pair<std::string, FormulaPtr>>& map);

// ---------------------------------------------------------------------------
// Proof terms
// ---------------------------------------------------------------------------

enum class TKind {
  Var,
  Lam,
  App,
  Pair,
  Proj1,
  Proj2,
  Inj1,
  Inj2,
  Case,
  Exfalso,
  Triv,
  BoxIntro
};

struct ProofTerm;
using TermPtr = std::shared_ptr<const ProofTerm>;

/// One binding of a box introduction: binder name, its formula, and the
/// boxed argument deduction. The binder scopes over the box body only.
struct BoxBinding {
  std::string name;
  FormulaPtr annot;
  TermPtr arg;
};

/// Immutable modal lambda term. Field usage per kind:
///   Var       var
///   Lam       var, annot, a (body)
///   App       a (function), b (argument)
///   Pair      a, b
///   Proj1/2   a
///   Inj1/2    annot (the full sum formula), a
///   Case      a (scrutinee), var/b (left), var2/c (right)
///   Exfalso   annot (result formula), a
///   Triv      a
///   BoxIntro  bindings, body
struct ProofTerm {
  TKind kind;
  std::string var, var2;
  FormulaPtr annot;
  TermPtr a, b, c;
  std::vector<BoxBinding> bindings;
  TermPtr body;
};

TermPtr t_var(std::string x);
TermPtr t_lam(std::string x, FormulaPtr annot, TermPtr body);
TermPtr t_app(TermPtr f, TermPtr arg);
TermPtr t_pair(TermPtr a, TermPtr b);
TermPtr t_proj1(TermPtr t);
TermPtr t_proj2(TermPtr t);
TermPtr t_inj1(FormulaPtr sum, TermPtr t);  // sum must be a Disj
TermPtr t_inj2(FormulaPtr sum, TermPtr t);
TermPtr t_case(TermPtr scrut, std::string x, TermPtr left, std::string y,
               TermPtr right);
TermPtr t_exfalso(FormulaPtr annot, TermPtr t);
TermPtr t_triv(TermPtr t);
TermPtr t_box(std::vector<BoxBinding> bindings, TermPtr body);

std::set<std::string> free_vars(const TermPtr& t);

/// Capture-avoiding substitution of s for the free occurrences of x in t.
/// Binders are freshened (primed) exactly when they would capture.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s);

/// Every box binder name occurring anywhere in t.
std::set<std::string> bound_box_names(const TermPtr& t);

/// Substitution for the rewrite rules: additionally renames any binder of t
/// crossed on the way to x that matches a box binder of s (splicing s there
/// would otherwise make that box binder shadow), and keeps every fresh name
/// away from the ambient scope names.
TermPtr substitute_guarded(const TermPtr& t, const std::string& x,
                           const TermPtr& s,
                           const std::set<std::string>& ambient);

/// Identity up to consistent renaming of bound variables. Annotations must
/// match exactly; box binding lists must match position by position.
bool alpha_eq(const TermPtr& t, const TermPtr& u);

int term_size(const TermPtr& t);

/// First of base, base', base'', ... not in avoid.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid);

/// Alpha-invariant canonical string (binders numbered in traversal order);
/// equal keys iff alpha-equal terms.
std::string canonical_key(const TermPtr& t);

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

/// Ordered typing context with pairwise distinct variable names.
class Context {
 public:
  Context() = default;

  /// Throws std::invalid_argument on a duplicate name.
  void push(std::string name, FormulaPtr formula);
  const FormulaPtr* lookup(const std::string& name) const;
  bool contains(const std::string& name) const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::vector<std::pair<std::string, FormulaPtr>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, FormulaPtr>> entries_;
};

}  // namespace ielc
