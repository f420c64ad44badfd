#include "ielc/rewrite.hpp"

#include <deque>
#include <map>

#include "ielc/printer.hpp"

namespace ielc {

std::string rule_tag_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::BetaArrow: return "BetaArrow";
    case RuleTag::BetaPair1: return "BetaPair1";
    case RuleTag::BetaPair2: return "BetaPair2";
    case RuleTag::BetaCase1: return "BetaCase1";
    case RuleTag::BetaCase2: return "BetaCase2";
    case RuleTag::Iota: return "Iota";
    case RuleTag::Delta: return "Delta";
    case RuleTag::PermCase: return "PermCase";
    case RuleTag::PermAbort: return "PermAbort";
    case RuleTag::EtaArrow: return "EtaArrow";
    case RuleTag::EtaPair: return "EtaPair";
    case RuleTag::EtaSum: return "EtaSum";
  }
  return "?";
}

std::string path_to_string(const Path& p) {
  if (p.empty()) return "root";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

namespace {

int child_count(const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var: return 0;
    case TKind::Lam:
    case TKind::Proj1:
    case TKind::Proj2:
    case TKind::Inj1:
    case TKind::Inj2:
    case TKind::Exfalso:
    case TKind::Triv: return 1;
    case TKind::App:
    case TKind::Pair: return 2;
    case TKind::Case: return 3;
    case TKind::BoxIntro: return static_cast<int>(t->bindings.size()) + 1;
  }
  return 0;
}

TermPtr get_child(const TermPtr& t, int k) {
  if (t->kind == TKind::BoxIntro) {
    if (k < static_cast<int>(t->bindings.size())) return t->bindings[k].arg;
    return t->body;
  }
  switch (k) {
    case 0: return t->a;
    case 1: return t->b;
    default: return t->c;
  }
}

TermPtr with_child(const TermPtr& t, int k, TermPtr c) {
  switch (t->kind) {
    case TKind::Var:
      break;
    case TKind::Lam:
      return t_lam(t->var, t->annot, std::move(c));
    case TKind::App:
      return k == 0 ? t_app(std::move(c), t->b) : t_app(t->a, std::move(c));
    case TKind::Pair:
      return k == 0 ? t_pair(std::move(c), t->b) : t_pair(t->a, std::move(c));
    case TKind::Proj1:
      return t_proj1(std::move(c));
    case TKind::Proj2:
      return t_proj2(std::move(c));
    case TKind::Inj1:
      return t_inj1(t->annot, std::move(c));
    case TKind::Inj2:
      return t_inj2(t->annot, std::move(c));
    case TKind::Exfalso:
      return t_exfalso(t->annot, std::move(c));
    case TKind::Triv:
      return t_triv(std::move(c));
    case TKind::Case:
      if (k == 0) return t_case(std::move(c), t->var, t->b, t->var2, t->c);
      if (k == 1) return t_case(t->a, t->var, std::move(c), t->var2, t->c);
      return t_case(t->a, t->var, t->b, t->var2, std::move(c));
    case TKind::BoxIntro: {
      std::vector<BoxBinding> binds = t->bindings;
      if (k < static_cast<int>(binds.size())) {
        binds[k].arg = std::move(c);
        return t_box(std::move(binds), t->body);
      }
      return t_box(std::move(binds), std::move(c));
    }
  }
  throw std::logic_error("with_child: bad position");
}

// Delta: the i-th argument is itself a box; its binders migrate outward,
// renamed when they would capture a free variable of the outer body, collide
// with the remaining outer binders, or land on a name already claimed by the
// ambient scope or a box deeper in the result.
TermPtr delta_contract(const TermPtr& t, size_t i,
                       const std::set<std::string>& ambient) {
  const BoxBinding& hole = t->bindings[i];
  const TermPtr& inner = hole.arg;
  TermPtr w = inner->body;

  std::set<std::string> inner_names;
  for (const auto& b : inner->bindings) inner_names.insert(b.name);

  std::set<std::string> conflicts = ambient;
  for (size_t j = 0; j < t->bindings.size(); ++j)
    if (j != i) conflicts.insert(t->bindings[j].name);
  std::set<std::string> fv_r = free_vars(t->body);
  fv_r.erase(hole.name);
  conflicts.insert(fv_r.begin(), fv_r.end());
  std::set<std::string> fv_w = free_vars(w);
  for (const auto& n : inner_names) fv_w.erase(n);
  conflicts.insert(fv_w.begin(), fv_w.end());
  // never adopt a name a nested box already binds
  auto deep_r = bound_box_names(t->body);
  conflicts.insert(deep_r.begin(), deep_r.end());
  auto deep_w = bound_box_names(w);
  conflicts.insert(deep_w.begin(), deep_w.end());

  std::vector<BoxBinding> migrated;
  std::set<std::string> pending = inner_names;
  for (const auto& yb : inner->bindings) {
    pending.erase(yb.name);
    std::string name = yb.name;
    if (conflicts.count(name)) {
      std::set<std::string> avoid = conflicts;
      avoid.insert(pending.begin(), pending.end());
      auto fvw_now = free_vars(w);
      avoid.insert(fvw_now.begin(), fvw_now.end());
      name = fresh_name(name, avoid);
      w = substitute(w, yb.name, t_var(name));
    }
    conflicts.insert(name);
    migrated.push_back({name, yb.annot, yb.arg});
  }

  std::vector<BoxBinding> binds;
  for (size_t j = 0; j < t->bindings.size(); ++j) {
    if (j == i)
      binds.insert(binds.end(), migrated.begin(), migrated.end());
    else
      binds.push_back(t->bindings[j]);
  }
  std::set<std::string> body_ambient = ambient;
  for (const auto& b : binds) body_ambient.insert(b.name);
  return t_box(std::move(binds),
               substitute_guarded(t->body, hole.name, w, body_ambient));
}

// Freshens one case binder before new material moves inside that branch.
// Renamed when it would capture a free variable of the incoming term or
// collide with one of its box binders; fresh names stay off the ambient
// scope and the branch's own nested box binders.
std::pair<std::string, TermPtr> guard_branch(
    const std::string& binder, const TermPtr& branch, const TermPtr& incoming,
    const std::set<std::string>& extra_fv,
    const std::set<std::string>& ambient) {
  std::set<std::string> trigger = free_vars(incoming);
  trigger.insert(extra_fv.begin(), extra_fv.end());
  auto in_boxes = bound_box_names(incoming);
  trigger.insert(in_boxes.begin(), in_boxes.end());
  if (!trigger.count(binder)) return {binder, branch};
  std::set<std::string> avoid = trigger;
  avoid.insert(ambient.begin(), ambient.end());
  auto fv = free_vars(branch);
  avoid.insert(fv.begin(), fv.end());
  auto boxes = bound_box_names(branch);
  avoid.insert(boxes.begin(), boxes.end());
  std::string fresh = fresh_name(binder, avoid);
  return {fresh, substitute(branch, binder, t_var(fresh))};
}

// All rule applications at the root, in priority order: beta, iota before
// delta, then the mode-gated rules.
void rules_at(const TermPtr& t, RewriteMode mode,
              const std::set<std::string>& ambient,
              std::vector<std::pair<TermPtr, RuleTag>>& out) {
  switch (t->kind) {
    case TKind::App:
      if (t->a->kind == TKind::Lam)
        out.push_back({substitute_guarded(t->a->a, t->a->var, t->b, ambient),
                       RuleTag::BetaArrow});
      break;
    case TKind::Proj1:
      if (t->a->kind == TKind::Pair)
        out.push_back({t->a->a, RuleTag::BetaPair1});
      break;
    case TKind::Proj2:
      if (t->a->kind == TKind::Pair)
        out.push_back({t->a->b, RuleTag::BetaPair2});
      break;
    case TKind::Case:
      if (t->a->kind == TKind::Inj1)
        out.push_back({substitute_guarded(t->b, t->var, t->a->a, ambient),
                       RuleTag::BetaCase1});
      else if (t->a->kind == TKind::Inj2)
        out.push_back({substitute_guarded(t->c, t->var2, t->a->a, ambient),
                       RuleTag::BetaCase2});
      break;
    case TKind::BoxIntro:
      if (t->bindings.size() == 1 && t->body->kind == TKind::Var &&
          t->body->var == t->bindings[0].name)
        out.push_back({t->bindings[0].arg, RuleTag::Iota});
      for (size_t i = 0; i < t->bindings.size(); ++i)
        if (t->bindings[i].arg->kind == TKind::BoxIntro)
          out.push_back({delta_contract(t, i, ambient), RuleTag::Delta});
      break;
    default:
      break;
  }

  if (mode == RewriteMode::Perm) {
    // Commuting conversions: an elimination whose major premise is a case
    // distributes into the branches; one whose major premise is an abort
    // collapses to an abort.
    const TermPtr& major = t->a;
    switch (t->kind) {
      case TKind::App:
        if (major && major->kind == TKind::Case) {
          auto [x, l] = guard_branch(major->var, major->b, t->b, {}, ambient);
          auto [y, r] = guard_branch(major->var2, major->c, t->b, {}, ambient);
          out.push_back(
              {t_case(major->a, x, t_app(l, t->b), y, t_app(r, t->b)),
               RuleTag::PermCase});
        }
        if (major && major->kind == TKind::Exfalso &&
            major->annot->kind == FKind::Impl)
          out.push_back({t_exfalso(major->annot->rhs, major->a),
                         RuleTag::PermAbort});
        break;
      case TKind::Proj1:
      case TKind::Proj2: {
        bool fst = t->kind == TKind::Proj1;
        if (major->kind == TKind::Case)
          out.push_back(
              {t_case(major->a, major->var,
                      fst ? t_proj1(major->b) : t_proj2(major->b),
                      major->var2,
                      fst ? t_proj1(major->c) : t_proj2(major->c)),
               RuleTag::PermCase});
        if (major->kind == TKind::Exfalso &&
            major->annot->kind == FKind::Conj)
          out.push_back({t_exfalso(fst ? major->annot->lhs : major->annot->rhs,
                                   major->a),
                         RuleTag::PermAbort});
        break;
      }
      case TKind::Case:
        if (major->kind == TKind::Case) {
          std::set<std::string> fv = free_vars(t->b);
          fv.erase(t->var);
          std::set<std::string> fv2 = free_vars(t->c);
          fv2.erase(t->var2);
          fv.insert(fv2.begin(), fv2.end());
          auto boxes_l = bound_box_names(t->b);
          fv.insert(boxes_l.begin(), boxes_l.end());
          auto boxes_r = bound_box_names(t->c);
          fv.insert(boxes_r.begin(), boxes_r.end());
          auto [x, l] = guard_branch(major->var, major->b, t->b, fv, ambient);
          auto [y, r] = guard_branch(major->var2, major->c, t->b, fv, ambient);
          out.push_back(
              {t_case(major->a, x, t_case(l, t->var, t->b, t->var2, t->c), y,
                      t_case(r, t->var, t->b, t->var2, t->c)),
               RuleTag::PermCase});
        }
        break;
      case TKind::Exfalso:
        if (major->kind == TKind::Case)
          out.push_back({t_case(major->a, major->var,
                                t_exfalso(t->annot, major->b), major->var2,
                                t_exfalso(t->annot, major->c)),
                         RuleTag::PermCase});
        if (major->kind == TKind::Exfalso &&
            major->annot->kind == FKind::Bot)
          out.push_back({t_exfalso(t->annot, major->a), RuleTag::PermAbort});
        break;
      default:
        break;
    }
  }

  if (mode == RewriteMode::Eta) {
    switch (t->kind) {
      case TKind::Lam:
        if (t->a->kind == TKind::App && t->a->b->kind == TKind::Var &&
            t->a->b->var == t->var && !free_vars(t->a->a).count(t->var))
          out.push_back({t->a->a, RuleTag::EtaArrow});
        break;
      case TKind::Pair:
        if (t->a->kind == TKind::Proj1 && t->b->kind == TKind::Proj2 &&
            alpha_eq(t->a->a, t->b->a))
          out.push_back({t->a->a, RuleTag::EtaPair});
        break;
      case TKind::Case:
        if (t->b->kind == TKind::Inj1 && t->b->a->kind == TKind::Var &&
            t->b->a->var == t->var && t->c->kind == TKind::Inj2 &&
            t->c->a->kind == TKind::Var && t->c->a->var == t->var2 &&
            formula_eq(t->b->annot, t->c->annot))
          out.push_back({t->a, RuleTag::EtaSum});
        break;
      default:
        break;
    }
  }
}

// Names in scope inside child k but not around t itself.
std::set<std::string> child_scope(const TermPtr& t, int k,
                                  const std::set<std::string>& ambient) {
  std::set<std::string> out = ambient;
  switch (t->kind) {
    case TKind::Lam:
      out.insert(t->var);
      break;
    case TKind::Case:
      if (k == 1) out.insert(t->var);
      if (k == 2) out.insert(t->var2);
      break;
    case TKind::BoxIntro:
      if (k == static_cast<int>(t->bindings.size()))
        for (const auto& b : t->bindings) out.insert(b.name);
      break;
    default:
      break;
  }
  return out;
}

std::optional<StepResult> step_lo(const TermPtr& t, RewriteMode mode,
                                  const std::set<std::string>& ambient) {
  std::vector<std::pair<TermPtr, RuleTag>> here;
  rules_at(t, mode, ambient, here);
  if (!here.empty()) return StepResult{here[0].first, here[0].second, {}};
  int n = child_count(t);
  for (int k = 0; k < n; ++k) {
    if (auto sub = step_lo(get_child(t, k), mode, child_scope(t, k, ambient))) {
      Path p{k};
      p.insert(p.end(), sub->path.begin(), sub->path.end());
      return StepResult{with_child(t, k, sub->term), sub->tag, std::move(p)};
    }
  }
  return std::nullopt;
}

std::optional<StepResult> step_ri(const TermPtr& t, RewriteMode mode,
                                  const std::set<std::string>& ambient) {
  int n = child_count(t);
  for (int k = n - 1; k >= 0; --k) {
    if (auto sub = step_ri(get_child(t, k), mode, child_scope(t, k, ambient))) {
      Path p{k};
      p.insert(p.end(), sub->path.begin(), sub->path.end());
      return StepResult{with_child(t, k, sub->term), sub->tag, std::move(p)};
    }
  }
  std::vector<std::pair<TermPtr, RuleTag>> here;
  rules_at(t, mode, ambient, here);
  if (!here.empty()) return StepResult{here[0].first, here[0].second, {}};
  return std::nullopt;
}

std::vector<StepResult> all_steps_rec(const TermPtr& t, RewriteMode mode,
                                      const std::set<std::string>& ambient) {
  std::vector<StepResult> out;
  std::vector<std::pair<TermPtr, RuleTag>> here;
  rules_at(t, mode, ambient, here);
  for (auto& [term, tag] : here) out.push_back({term, tag, {}});
  int n = child_count(t);
  for (int k = 0; k < n; ++k) {
    for (auto& sub :
         all_steps_rec(get_child(t, k), mode, child_scope(t, k, ambient))) {
      Path p{k};
      p.insert(p.end(), sub.path.begin(), sub.path.end());
      out.push_back({with_child(t, k, sub.term), sub.tag, std::move(p)});
    }
  }
  return out;
}

std::set<std::string> with_free_vars(const TermPtr& t,
                                     const std::set<std::string>& ambient) {
  std::set<std::string> out = ambient;
  auto fv = free_vars(t);
  out.insert(fv.begin(), fv.end());
  return out;
}

}  // namespace

int term_child_count(const TermPtr& t) { return child_count(t); }
TermPtr term_child(const TermPtr& t, int k) { return get_child(t, k); }
TermPtr term_with_child(const TermPtr& t, int k, TermPtr c) {
  return with_child(t, k, std::move(c));
}

TermPtr term_replace_at(const TermPtr& t, const Path& path, TermPtr sub) {
  if (path.empty()) return sub;
  Path rest(path.begin() + 1, path.end());
  return with_child(t, path[0],
                    term_replace_at(get_child(t, path[0]), rest, std::move(sub)));
}

std::optional<StepResult> step(const TermPtr& t, RewriteMode mode,
                               Strategy strat,
                               const std::set<std::string>& ambient) {
  std::set<std::string> scope = with_free_vars(t, ambient);
  return strat == Strategy::LeftmostOutermost ? step_lo(t, mode, scope)
                                              : step_ri(t, mode, scope);
}

std::vector<StepResult> all_steps(const TermPtr& t, RewriteMode mode,
                                  const std::set<std::string>& ambient) {
  return all_steps_rec(t, mode, with_free_vars(t, ambient));
}

std::pair<TermPtr, ReductionTrace> normalize(
    const TermPtr& t, int max_steps, RewriteMode mode, Strategy strat,
    const std::set<std::string>& ambient) {
  ReductionTrace trace;
  trace.initial = t;
  TermPtr cur = t;
  for (int i = 0; i < max_steps; ++i) {
    auto next = step(cur, mode, strat, ambient);
    if (!next) {
      trace.terminal = true;
      return {cur, trace};
    }
    cur = next->term;
    trace.steps.push_back({next->tag, next->path, cur});
  }
  if (!step(cur, mode, strat, ambient)) {
    trace.terminal = true;
    return {cur, trace};
  }
  throw StepBudgetExceeded(max_steps);
}

std::string print_trace(const ReductionTrace& trace) {
  std::string out;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out += "#" + std::to_string(i + 1) + " " + rule_tag_name(s.tag) + " @ " +
           path_to_string(s.path) + " ⇒ " + print_term(s.term) + "\n";
  }
  return out;
}

bool eq_mod_box(const TermPtr& t, const TermPtr& u, int max_steps) {
  TermPtr nt = normalize(t, max_steps).first;
  TermPtr nu = normalize(u, max_steps).first;
  return alpha_eq(nt, nu);
}

SearchVerdict joinable(const TermPtr& t, const TermPtr& u, int budget) {
  if (alpha_eq(t, u)) return SearchVerdict::Yes;
  std::map<std::string, int> seen;  // canonical key -> reachable-from bitmask
  std::deque<std::pair<TermPtr, int>> queue;
  seen[canonical_key(t)] = 1;
  seen[canonical_key(u)] = 2;
  queue.push_back({t, 1});
  queue.push_back({u, 2});
  int expansions = 0;
  while (!queue.empty()) {
    if (expansions >= budget) return SearchVerdict::OutOfBudget;
    auto [cur, side] = queue.front();
    queue.pop_front();
    ++expansions;
    for (auto& succ : all_steps(cur)) {
      std::string key = canonical_key(succ.term);
      int& mask = seen[key];
      int merged = mask | side;
      if (merged == 3) return SearchVerdict::Yes;
      if (merged != mask) {
        mask = merged;
        queue.push_back({succ.term, side});
      }
    }
  }
  return SearchVerdict::No;
}

}  // namespace ielc
