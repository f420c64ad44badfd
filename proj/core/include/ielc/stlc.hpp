#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ielc/errors.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/syntax.hpp"
#include "ielc/typecheck.hpp"

namespace ielc {

// ---------------------------------------------------------------------------
// Simply typed lambda calculus with products, sums, empty and unit types:
// the erasure target and the independent strong-normalization oracle.
// ---------------------------------------------------------------------------

enum class SKind { Unit, Empty, Atom, Q, Arrow, Product, Sum };

struct StlcType;
using StlcTypePtr = std::shared_ptr<const StlcType>;

struct StlcType {
  SKind kind;
  std::string atom;       // Atom only; Q is the reserved answer atom
  StlcTypePtr lhs, rhs;
};

StlcTypePtr s_unit();
StlcTypePtr s_empty();
StlcTypePtr s_atom(std::string name);
StlcTypePtr s_q();
StlcTypePtr s_arrow(StlcTypePtr a, StlcTypePtr b);
StlcTypePtr s_product(StlcTypePtr a, StlcTypePtr b);
StlcTypePtr s_sum(StlcTypePtr a, StlcTypePtr b);
bool stlc_type_eq(const StlcTypePtr& a, const StlcTypePtr& b);
std::string print_stlc_type(const StlcTypePtr& t);

enum class STKind {
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
  Triv
};

struct StlcTerm;
using StlcTermPtr = std::shared_ptr<const StlcTerm>;

/// Mirrors ProofTerm minus the box. Annotations carry erased types so the
/// target typechecker stays syntax-directed.
struct StlcTerm {
  STKind kind;
  std::string var, var2;
  StlcTypePtr annot;
  StlcTermPtr a, b, c;
};

StlcTermPtr st_var(std::string x);
StlcTermPtr st_lam(std::string x, StlcTypePtr annot, StlcTermPtr body);
StlcTermPtr st_app(StlcTermPtr f, StlcTermPtr a);
StlcTermPtr st_pair(StlcTermPtr a, StlcTermPtr b);
StlcTermPtr st_proj1(StlcTermPtr t);
StlcTermPtr st_proj2(StlcTermPtr t);
StlcTermPtr st_inj1(StlcTypePtr sum, StlcTermPtr t);
StlcTermPtr st_inj2(StlcTypePtr sum, StlcTermPtr t);
StlcTermPtr st_case(StlcTermPtr s, std::string x, StlcTermPtr l, std::string y,
                    StlcTermPtr r);
StlcTermPtr st_exfalso(StlcTypePtr annot, StlcTermPtr t);
StlcTermPtr st_triv(StlcTermPtr t);

std::set<std::string> stlc_free_vars(const StlcTermPtr& t);
StlcTermPtr stlc_substitute(const StlcTermPtr& t, const std::string& x,
                            const StlcTermPtr& s);
bool stlc_alpha_eq(const StlcTermPtr& t, const StlcTermPtr& u);
std::string stlc_canonical_key(const StlcTermPtr& t);
std::string print_stlc_term(const StlcTermPtr& t);
int stlc_term_size(const StlcTermPtr& t);

struct StlcTypeError : Error {
  using Error::Error;
};

using StlcEnv = std::vector<std::pair<std::string, StlcTypePtr>>;
StlcTypePtr stlc_infer(StlcEnv env, const StlcTermPtr& t);

// ---------------------------------------------------------------------------
// Erasure |-|: homomorphic on the intuitionistic fragment, box A becomes
// (|A| -> q) -> q and box terms become continuation nests.
// ---------------------------------------------------------------------------

StlcTypePtr erase_formula(const FormulaPtr& f);

/// Requires t well-typed under ctx (box bodies need their inferred formula).
StlcTermPtr erase_term(const Context& ctx, const TermPtr& t);
StlcTermPtr erase_term(const TermPtr& t);  // closed terms

// ---------------------------------------------------------------------------
// The >> relation: beta, eta, and the commuting conversions for case/abort.
// ---------------------------------------------------------------------------

/// Every single >>-step from t (unrestricted eta; used by the simulation
/// search, where reachability is what matters).
std::vector<StlcTermPtr> stlc_all_steps(const StlcTermPtr& t);

/// One strategy-chosen step with eta restricted away from case/abort-headed
/// bodies; the restriction keeps the oracle's normal forms
/// strategy-independent. Empty when normal.
std::optional<StlcTermPtr> stlc_step(
    const StlcTermPtr& t, Strategy strat = Strategy::LeftmostOutermost);

StlcTermPtr stlc_normalize(const StlcTermPtr& t, int budget = 10000,
                           Strategy strat = Strategy::LeftmostOutermost);

/// Whether the erasure of t2 is reachable from the erasure of t in at least
/// one >>-step (breadth-first, alpha matching). Precondition: t steps to t2
/// in one modal-calculus step.
SearchVerdict simulates(const Context& ctx, const TermPtr& t,
                        const TermPtr& t2, int budget = 200);
SearchVerdict simulates(const TermPtr& t, const TermPtr& t2, int budget = 200);

}  // namespace ielc
