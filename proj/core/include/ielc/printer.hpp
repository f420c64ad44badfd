#pragma once

#include <string>

#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

// Deterministic minimal-parenthesization printers; parse(print(v)) gives back
// v (up to alpha for terms).
std::string print_formula(const FormulaPtr& f);
std::string print_term(const TermPtr& t);
std::string print_hilbert(const HilbertProof& p);
std::string print_model(const KripkeModel& m);
std::string print_context(const Context& ctx);

}  // namespace ielc
