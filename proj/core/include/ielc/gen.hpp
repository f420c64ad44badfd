#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

/// Deterministic splitmix64 stream; identical across platforms, unlike the
/// standard distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  /// Uniform in [0, n); n > 0.
  uint64_t below(uint64_t n);
  bool chance(int percent);

 private:
  uint64_t state_;
};

struct GenOptions {
  int max_term_size = 30;
  int max_formula_depth = 3;
  std::vector<std::string> atoms{"p", "q"};
};

FormulaPtr gen_formula(Rng& rng, int max_depth,
                       const std::vector<std::string>& atoms);

/// Unconstrained syntax tree (not necessarily typable); parser round-trips.
TermPtr gen_raw_term(Rng& rng, int max_size,
                     const std::vector<std::string>& atoms);

/// Closed well-typed term, biased toward containing redexes (beta, iota,
/// delta) so reduction-minded suites have something to chew on.
TermPtr gen_typed_term(Rng& rng, const GenOptions& opts = {});

std::vector<TermPtr> gen_corpus(uint64_t seed, int count,
                                const GenOptions& opts = {});

/// Checking axiomatic proof grown by applying axiom schemes to existing
/// lines; closed when with_hypotheses is false.
HilbertProof gen_hilbert_proof(Rng& rng, bool with_hypotheses, int moves);

/// Valid model under the default frame condition.
KripkeModel gen_model(Rng& rng, int max_worlds,
                      const std::vector<std::string>& atoms);

}  // namespace ielc
