#pragma once

#include <utility>

#include "ielc/errors.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

/// Violated precondition of a metatheoretic extraction (wrong shape or type).
struct PreconditionError : Error {
  using Error::Error;
};

struct TermClass {
  enum class Kind { IntroHeaded, Neutral, NotNormal } kind;
  Path redex;  // NotNormal only: a witnessing redex position
};

/// NotNormal if any redex fires; otherwise Neutral for variable- or
/// elimination-headed terms, IntroHeaded for the rest.
TermClass classify(const TermPtr& t);

/// For a closed normal well-typed t : a, whether the head constructor is the
/// introduction for a's outer connective. False on closed normal theorem
/// terms would be a kernel bug.
bool canonicity_check(const TermPtr& t, const FormulaPtr& a);

/// From a closed proof of box A extracts a closed proof of A (the reflection
/// rule as structural recursion on the normal form).
TermPtr reflection_extract(const TermPtr& t);

enum class Side { Left, Right };

/// From a closed proof of A \/ B, the side taken and its witness.
std::pair<Side, TermPtr> disjunction_split(const TermPtr& t);

/// From a closed proof of box (A \/ B), a side and a closed proof of the
/// boxed disjunct: reflection, then split, then re-box.
std::pair<Side, TermPtr> weak_dp(const TermPtr& t);

}  // namespace ielc
