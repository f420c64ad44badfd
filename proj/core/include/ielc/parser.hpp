#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ielc/errors.hpp"
#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

/// Byte offsets into the input; start <= end.
struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
};

struct ParseError : Error {
  SourceSpan span;
  std::vector<std::string> expected;
  ParseError(SourceSpan s, std::vector<std::string> exp, const std::string& msg)
      : Error(msg), span(s), expected(std::move(exp)) {}
};

// Surface syntax is ASCII: atoms are lowercase identifiers, `[]` is the box,
// `~A` sugars A -> Bot, `--` comments to end of line. The whole input must be
// consumed; trailing tokens are an error.
FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);
HilbertProof parse_hilbert(std::string_view text);
KripkeModel parse_model(std::string_view text);

/// "x:F, y:G"; empty input gives the empty context.
Context parse_context(std::string_view text);

}  // namespace ielc
