#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ielc/syntax.hpp"

namespace ielc {

/// Which inclusion links the knowledge relation E to the intuitionistic
/// order. Default requires E within <=, which refutes []p -> p; PaperLiteral
/// requires <= within E, which makes E reflexive and validates []p -> p.
/// Both modes additionally require the composition condition
/// (x <= y and y E z imply x E z).
enum class FrameMode { Default, PaperLiteral };

struct KripkeModel {
  std::vector<std::string> worlds;
  std::set<std::pair<int, int>> le;  // generators; closure computed on demand
  std::set<std::pair<int, int>> E;
  std::map<std::string, std::set<int>> val;

  int world_index(const std::string& name) const;  // -1 when unknown
  /// Reflexive-transitive closure of the le generators.
  std::vector<std::vector<bool>> le_closure() const;
};

struct Violation {
  enum class Kind { FrameCondition, Composition, Monotonicity } kind;
  int w1 = 0, w2 = 0, w3 = 0;
  std::string atom;
  std::string describe(const KripkeModel& m) const;
};

/// Closes le, then reports every violated frame or valuation condition.
/// An empty result means the model is valid for the given mode.
std::vector<Violation> validate_model(const KripkeModel& m,
                                      FrameMode mode = FrameMode::Default);

/// Memoized forcing over one model; the model must be valid.
class ForcingTable {
 public:
  explicit ForcingTable(const KripkeModel& m);
  bool forces(int world, const FormulaPtr& f);

 private:
  const KripkeModel& model_;
  std::vector<std::vector<bool>> le_;
  std::map<std::pair<int, const Formula*>, bool> memo_;
};

bool forces(const KripkeModel& m, int world, const FormulaPtr& f);
bool forces(const KripkeModel& m, const std::string& world,
            const FormulaPtr& f);
bool valid_in_model(const KripkeModel& m, const FormulaPtr& f);

/// Enumerates every valid model (labeled; no isomorphism pruning) over the
/// given atoms with 1..max_worlds worlds, in a fixed deterministic order.
/// The callback returns false to stop early.
void enumerate_valid_models(const std::vector<std::string>& atoms,
                            int max_worlds, FrameMode mode,
                            const std::function<bool(const KripkeModel&)>& cb);

/// First (model, world) refuting f, if any, over f's atoms. An empty result
/// means f holds on all frames of that size; it is not a theoremhood proof.
std::optional<std::pair<KripkeModel, int>> countermodel_search(
    const FormulaPtr& f, int max_worlds, FrameMode mode = FrameMode::Default);

}  // namespace ielc
