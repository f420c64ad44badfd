#include "ielc/printer.hpp"

#include <algorithm>

namespace ielc {

namespace {

// Formula precedence: -> is 1 (right), \/ 2, /\ 3, ~ and [] 4, atoms 5.
void print_formula_rec(const FormulaPtr& f, int min_prec, std::string& out) {
  switch (f->kind) {
    case FKind::Atom:
      out += f->atom;
      return;
    case FKind::Top:
      out += "Top";
      return;
    case FKind::Bot:
      out += "Bot";
      return;
    case FKind::Box: {
      bool paren = min_prec > 4;
      if (paren) out += '(';
      out += "[]";
      print_formula_rec(f->lhs, 4, out);
      if (paren) out += ')';
      return;
    }
    case FKind::Impl: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      print_formula_rec(f->lhs, 2, out);
      out += " -> ";
      print_formula_rec(f->rhs, 1, out);
      if (paren) out += ')';
      return;
    }
    case FKind::Disj: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      print_formula_rec(f->lhs, 2, out);
      out += " \\/ ";
      print_formula_rec(f->rhs, 3, out);
      if (paren) out += ')';
      return;
    }
    case FKind::Conj: {
      bool paren = min_prec > 3;
      if (paren) out += '(';
      print_formula_rec(f->lhs, 3, out);
      out += " /\\ ";
      print_formula_rec(f->rhs, 4, out);
      if (paren) out += ')';
      return;
    }
  }
}

// Term precedence: lambda/box/case 0, application 10 (left), the keyword
// prefixes 20, primaries 30.
void print_term_rec(const TermPtr& t, int min_prec, std::string& out) {
  switch (t->kind) {
    case TKind::Var:
      out += t->var;
      return;
    case TKind::Lam: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      out += '\\';
      out += t->var;
      out += ':';
      print_formula_rec(t->annot, 0, out);
      out += ". ";
      print_term_rec(t->a, 0, out);
      if (paren) out += ')';
      return;
    }
    case TKind::App: {
      bool paren = min_prec > 10;
      if (paren) out += '(';
      print_term_rec(t->a, 10, out);
      out += ' ';
      print_term_rec(t->b, 11, out);
      if (paren) out += ')';
      return;
    }
    case TKind::Pair:
      out += '<';
      print_term_rec(t->a, 0, out);
      out += ", ";
      print_term_rec(t->b, 0, out);
      out += '>';
      return;
    case TKind::Proj1:
    case TKind::Proj2: {
      bool paren = min_prec > 20;
      if (paren) out += '(';
      out += t->kind == TKind::Proj1 ? "fst " : "snd ";
      print_term_rec(t->a, 20, out);
      if (paren) out += ')';
      return;
    }
    case TKind::Inj1:
    case TKind::Inj2: {
      bool paren = min_prec > 20;
      if (paren) out += '(';
      out += t->kind == TKind::Inj1 ? "inl[" : "inr[";
      print_formula_rec(t->annot, 0, out);
      out += "] ";
      print_term_rec(t->a, 20, out);
      if (paren) out += ')';
      return;
    }
    case TKind::Exfalso: {
      bool paren = min_prec > 20;
      if (paren) out += '(';
      out += "abort[";
      print_formula_rec(t->annot, 0, out);
      out += "] ";
      print_term_rec(t->a, 20, out);
      if (paren) out += ')';
      return;
    }
    case TKind::Triv: {
      bool paren = min_prec > 20;
      if (paren) out += '(';
      out += "triv ";
      print_term_rec(t->a, 20, out);
      if (paren) out += ')';
      return;
    }
    case TKind::Case: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      out += "case ";
      print_term_rec(t->a, 1, out);
      out += " of { inl ";
      out += t->var;
      out += " -> ";
      print_term_rec(t->b, 0, out);
      out += " | inr ";
      out += t->var2;
      out += " -> ";
      print_term_rec(t->c, 0, out);
      out += " }";
      if (paren) out += ')';
      return;
    }
    case TKind::BoxIntro: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      out += "box [";
      for (size_t i = 0; i < t->bindings.size(); ++i) {
        if (i) out += ", ";
        out += t->bindings[i].name;
        out += ':';
        print_formula_rec(t->bindings[i].annot, 0, out);
        out += " = ";
        print_term_rec(t->bindings[i].arg, 0, out);
      }
      out += "] in ";
      print_term_rec(t->body, 0, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_formula_rec(f, 0, out);
  return out;
}

std::string print_term(const TermPtr& t) {
  std::string out;
  print_term_rec(t, 0, out);
  return out;
}

std::string print_hilbert(const HilbertProof& p) {
  std::string out;
  if (!p.hypotheses.empty()) {
    out += "hyps: ";
    for (size_t i = 0; i < p.hypotheses.size(); ++i) {
      if (i) out += "; ";
      out += print_formula(p.hypotheses[i]);
    }
    out += '\n';
  }
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& line = p.lines[i];
    out += std::to_string(i + 1);
    out += ". ";
    out += print_formula(line.formula);
    switch (line.just.kind) {
      case Justification::Kind::Hyp:
        out += " hyp " + std::to_string(line.just.hyp_index);
        break;
      case Justification::Kind::MP:
        out += " mp " + std::to_string(line.just.major) + " " +
               std::to_string(line.just.minor);
        break;
      case Justification::Kind::Axiom: {
        out += " ax " + scheme_name(line.just.scheme);
        if (!line.just.inst.empty()) {
          out += " {";
          bool first = true;
          for (const auto& [mv, f] : line.just.inst) {
            if (!first) out += ", ";
            first = false;
            out += mv + " := " + print_formula(f);
          }
          out += '}';
        }
        break;
      }
    }
    out += '\n';
  }
  return out;
}

std::string print_model(const KripkeModel& m) {
  std::string out = "worlds:";
  for (const auto& w : m.worlds) out += " " + w;
  out += "\nle:";
  bool first = true;
  for (const auto& [a, b] : m.le) {
    out += first ? " " : ", ";
    first = false;
    out += m.worlds[a] + " <= " + m.worlds[b];
  }
  out += "\nE:";
  first = true;
  for (const auto& [a, b] : m.E) {
    out += first ? " " : ", ";
    first = false;
    out += m.worlds[a] + " E " + m.worlds[b];
  }
  out += "\nval:";
  first = true;
  for (const auto& [atom, worlds] : m.val) {
    if (worlds.empty()) continue;
    out += first ? " " : ", ";
    first = false;
    out += atom + " @";
    for (int w : worlds) out += " " + m.worlds[w];
  }
  out += '\n';
  return out;
}

std::string print_context(const Context& ctx) {
  std::string out;
  for (size_t i = 0; i < ctx.entries().size(); ++i) {
    if (i) out += ", ";
    out += ctx.entries()[i].first + ":" + print_formula(ctx.entries()[i].second);
  }
  return out;
}

}  // namespace ielc
