#include "ielc/kripke.hpp"

#include <algorithm>

#include "ielc/errors.hpp"

namespace ielc {

int KripkeModel::world_index(const std::string& name) const {
  for (size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<bool>> KripkeModel::le_closure() const {
  size_t n = worlds.size();
  std::vector<std::vector<bool>> cl(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) cl[i][i] = true;
  for (const auto& [a, b] : le) cl[a][b] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (cl[i][k])
        for (size_t j = 0; j < n; ++j)
          if (cl[k][j]) cl[i][j] = true;
  return cl;
}

std::string Violation::describe(const KripkeModel& m) const {
  switch (kind) {
    case Kind::FrameCondition:
      return "frame condition violated between " + m.worlds[w1] + " and " +
             m.worlds[w2];
    case Kind::Composition:
      return "composition violated: " + m.worlds[w1] + " <= " + m.worlds[w2] +
             " and " + m.worlds[w2] + " E " + m.worlds[w3] + " but not " +
             m.worlds[w1] + " E " + m.worlds[w3];
    case Kind::Monotonicity:
      return "monotonicity violated for " + atom + ": true at " +
             m.worlds[w1] + ", false at " + m.worlds[w2] + " above it";
  }
  return "?";
}

std::vector<Violation> validate_model(const KripkeModel& m, FrameMode mode) {
  std::vector<Violation> out;
  int n = static_cast<int>(m.worlds.size());
  auto cl = m.le_closure();
  auto has_e = [&](int a, int b) { return m.E.count({a, b}) > 0; };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (mode == FrameMode::Default) {
        if (has_e(x, y) && !cl[x][y])
          out.push_back({Violation::Kind::FrameCondition, x, y, 0, ""});
      } else {
        if (cl[x][y] && !has_e(x, y))
          out.push_back({Violation::Kind::FrameCondition, x, y, 0, ""});
      }
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (cl[x][y])
        for (int z = 0; z < n; ++z)
          if (has_e(y, z) && !has_e(x, z))
            out.push_back({Violation::Kind::Composition, x, y, z, ""});
  for (const auto& [atom, worlds] : m.val)
    for (int w : worlds)
      for (int v = 0; v < n; ++v)
        if (cl[w][v] && !worlds.count(v))
          out.push_back({Violation::Kind::Monotonicity, w, v, 0, atom});
  return out;
}

ForcingTable::ForcingTable(const KripkeModel& m)
    : model_(m), le_(m.le_closure()) {}

bool ForcingTable::forces(int world, const FormulaPtr& f) {
  if (world < 0 || world >= static_cast<int>(model_.worlds.size()))
    throw Error("unknown world index " + std::to_string(world));
  auto key = std::make_pair(world, f.get());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool result = false;
  int n = static_cast<int>(model_.worlds.size());
  switch (f->kind) {
    case FKind::Atom: {
      auto vt = model_.val.find(f->atom);
      result = vt != model_.val.end() && vt->second.count(world) > 0;
      break;
    }
    case FKind::Top:
      result = true;
      break;
    case FKind::Bot:
      result = false;
      break;
    case FKind::Conj:
      result = forces(world, f->lhs) && forces(world, f->rhs);
      break;
    case FKind::Disj:
      result = forces(world, f->lhs) || forces(world, f->rhs);
      break;
    case FKind::Impl: {
      result = true;
      for (int v = 0; v < n; ++v)
        if (le_[world][v] && forces(v, f->lhs) && !forces(v, f->rhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::Box: {
      result = true;
      for (int v = 0; v < n; ++v)
        if (model_.E.count({world, v}) && !forces(v, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
  }
  memo_[key] = result;
  return result;
}

bool forces(const KripkeModel& m, int world, const FormulaPtr& f) {
  ForcingTable table(m);
  return table.forces(world, f);
}

bool forces(const KripkeModel& m, const std::string& world,
            const FormulaPtr& f) {
  int w = m.world_index(world);
  if (w < 0) throw Error("unknown world '" + world + "'");
  return forces(m, w, f);
}

bool valid_in_model(const KripkeModel& m, const FormulaPtr& f) {
  ForcingTable table(m);
  for (size_t w = 0; w < m.worlds.size(); ++w)
    if (!table.forces(static_cast<int>(w), f)) return false;
  return true;
}

void enumerate_valid_models(const std::vector<std::string>& atoms,
                            int max_worlds, FrameMode mode,
                            const std::function<bool(const KripkeModel&)>& cb) {
  for (int n = 1; n <= max_worlds; ++n) {
    std::vector<std::pair<int, int>> offdiag;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) offdiag.push_back({i, j});
    const int dbits = static_cast<int>(offdiag.size());

    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));

    for (unsigned long lemask = 0; lemask < (1ul << dbits); ++lemask) {
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i) rel[i][i] = true;
      for (int b = 0; b < dbits; ++b)
        if (lemask & (1ul << b)) rel[offdiag[b].first][offdiag[b].second] = true;
      // Keep only relations that are their own transitive closure, so every
      // preorder appears exactly once.
      bool closed = true;
      for (int i = 0; i < n && closed; ++i)
        for (int k = 0; k < n && closed; ++k)
          if (rel[i][k])
            for (int j = 0; j < n; ++j)
              if (rel[k][j] && !rel[i][j]) {
                closed = false;
                break;
              }
      if (!closed) continue;

      std::vector<std::pair<int, int>> all_pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) all_pairs.push_back({i, j});

      // Upward-closed valuations for this order.
      std::vector<unsigned> upsets;
      for (unsigned vmask = 0; vmask < (1u << n); ++vmask) {
        bool up = true;
        for (int i = 0; i < n && up; ++i)
          if (vmask & (1u << i))
            for (int j = 0; j < n; ++j)
              if (rel[i][j] && !(vmask & (1u << j))) {
                up = false;
                break;
              }
        if (up) upsets.push_back(vmask);
      }

      for (unsigned long emask = 0; emask < (1ul << all_pairs.size());
           ++emask) {
        auto has_e = [&](int a, int b) {
          return (emask >> (a * n + b)) & 1ul;
        };
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j) {
            if (mode == FrameMode::Default && has_e(i, j) && !rel[i][j])
              ok = false;
            if (mode == FrameMode::PaperLiteral && rel[i][j] && !has_e(i, j))
              ok = false;
          }
        for (int x = 0; x < n && ok; ++x)
          for (int y = 0; y < n && ok; ++y)
            if (rel[x][y])
              for (int z = 0; z < n; ++z)
                if (has_e(y, z) && !has_e(x, z)) {
                  ok = false;
                  break;
                }
        if (!ok) continue;

        // Odometer over per-atom upset choices.
        std::vector<size_t> choice(atoms.size(), 0);
        while (true) {
          KripkeModel m;
          m.worlds = names;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              if (rel[i][j] && i != j) m.le.insert({i, j});
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              if (has_e(i, j)) m.E.insert({i, j});
          for (size_t a = 0; a < atoms.size(); ++a) {
            std::set<int>& vs = m.val[atoms[a]];
            unsigned vmask = upsets[choice[a]];
            for (int i = 0; i < n; ++i)
              if (vmask & (1u << i)) vs.insert(i);
          }
          if (!cb(m)) return;

          size_t d = 0;
          while (d < atoms.size()) {
            if (++choice[d] < upsets.size()) break;
            choice[d] = 0;
            ++d;
          }
          if (d == atoms.size()) break;
        }
      }
    }
  }
}

std::optional<std::pair<KripkeModel, int>> countermodel_search(
    const FormulaPtr& f, int max_worlds, FrameMode mode) {
  std::set<std::string> atom_set;
  collect_atoms(f, atom_set);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::optional<std::pair<KripkeModel, int>> found;
  enumerate_valid_models(atoms, max_worlds, mode,
                         [&](const KripkeModel& m) -> bool {
                           ForcingTable table(m);
                           for (size_t w = 0; w < m.worlds.size(); ++w) {
                             if (!table.forces(static_cast<int>(w), f)) {
                               found = {m, static_cast<int>(w)};
                               return false;
                             }
                           }
                           return true;
                         });
  return found;
}

}  // namespace ielc
