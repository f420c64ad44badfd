#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ielc/errors.hpp"
#include "ielc/syntax.hpp"

namespace ielc {

/// Reduction rules. The default relation is the five beta rules plus the two
/// modal rules iota and delta; Perm* fire only in permutation mode and Eta*
/// only in eta mode.
enum class RuleTag {
  BetaArrow,
  BetaPair1,
  BetaPair2,
  BetaCase1,
  BetaCase2,
  Iota,
  Delta,
  PermCase,
  PermAbort,
  EtaArrow,
  EtaPair,
  EtaSum
};

std::string rule_tag_name(RuleTag tag);

enum class RewriteMode { Default, Perm, Eta };
enum class Strategy { LeftmostOutermost, RightmostInnermost };

/// Child indices from the root; the child order is the constructor order
/// (box bindings before the body).
using Path = std::vector<int>;
std::string path_to_string(const Path& p);

int term_child_count(const TermPtr& t);
TermPtr term_child(const TermPtr& t, int k);
TermPtr term_with_child(const TermPtr& t, int k, TermPtr c);
TermPtr term_replace_at(const TermPtr& t, const Path& path, TermPtr sub);

struct StepResult {
  TermPtr term;
  RuleTag tag;
  Path path;
};

/// Contracts one redex chosen by the strategy (iota before delta on the same
/// box). Empty when t is normal for the mode. `ambient` names variables in
/// scope around t (a typing context, say); fresh names introduced by a
/// contraction stay clear of them so reducts keep checking in that scope.
/// The term's own free variables are always treated as ambient.
std::optional<StepResult> step(const TermPtr& t,
                               RewriteMode mode = RewriteMode::Default,
                               Strategy strat = Strategy::LeftmostOutermost,
                               const std::set<std::string>& ambient = {});

/// Every one-step reduct, at every position, for every applicable rule.
std::vector<StepResult> all_steps(const TermPtr& t,
                                  RewriteMode mode = RewriteMode::Default,
                                  const std::set<std::string>& ambient = {});

struct TraceStep {
  RuleTag tag;
  Path path;
  TermPtr term;
};

struct ReductionTrace {
  TermPtr initial;
  std::vector<TraceStep> steps;
  bool terminal = false;
};

/// One line per step: `#k <tag> @ <path> => <printed term>`.
std::string print_trace(const ReductionTrace& trace);

/// Iterates step to a normal form, recording the trace. Throws
/// StepBudgetExceeded past max_steps.
std::pair<TermPtr, ReductionTrace> normalize(
    const TermPtr& t, int max_steps = 10000,
    RewriteMode mode = RewriteMode::Default,
    Strategy strat = Strategy::LeftmostOutermost,
    const std::set<std::string>& ambient = {});

/// Proof identity of the term model: normalize both sides and compare up to
/// alpha. Both terms must be well-typed at the same context and formula.
bool eq_mod_box(const TermPtr& t, const TermPtr& u, int max_steps = 10000);

enum class SearchVerdict { Yes, No, OutOfBudget };

/// Whether a common reduct is reachable from both terms, exploring all
/// single-step successors breadth-first. Budget counts node expansions.
SearchVerdict joinable(const TermPtr& t, const TermPtr& u, int budget);

}  // namespace ielc
