#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ielc/errors.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

enum class TypeErrorCode {
  TypeMismatch,
  UnboundVariable,
  ShadowingInBox,
  NonBoxArgument
};

struct TypeError : Error {
  TypeErrorCode code;
  std::vector<int> path;  // child indices from the root to the offending node
  FormulaPtr expected, found;
  TypeError(TypeErrorCode c, std::vector<int> p, FormulaPtr exp, FormulaPtr fnd,
            const std::string& msg)
      : Error(msg),
        code(c),
        path(std::move(p)),
        expected(std::move(exp)),
        found(std::move(fnd)) {}
};

struct Judgment {
  Context ctx;
  TermPtr term;
  FormulaPtr formula;
};

/// Syntax-directed inference for the natural deduction calculus: the NJ
/// propositional rules plus box introduction. Lambda and case binders may
/// shadow (inner wins); box binders colliding with anything in scope are a
/// ShadowingInBox error.
FormulaPtr infer(const Context& ctx, const TermPtr& t);

/// Scoped-environment variant used internally and by the erasure; later
/// entries shadow earlier ones.
FormulaPtr infer_with_env(
    std::vector<std::pair<std::string, FormulaPtr>> env, const TermPtr& t);

/// True iff t is closed and infers to a at the empty context. On failure the
/// underlying infer diagnostic is written to *diag when given.
bool check_closed_theorem(const TermPtr& t, const FormulaPtr& a,
                          std::string* diag = nullptr);

}  // namespace ielc
