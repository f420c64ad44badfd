#include "ielc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ielc {

namespace {

enum class Tok {
  End,
  Ident,
  UIdent,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  LAngle,
  RAngle,
  Comma,
  Dot,
  Colon,
  Semicolon,
  Pipe,
  Lambda,
  Arrow,
  And,
  Or,
  Tilde,
  Eq,
  Assign,
  LessEq,
  At
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* tok_desc(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::UIdent: return "name";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::Pipe: return "'|'";
    case Tok::Lambda: return "'\\'";
    case Tok::Arrow: return "'->'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Tilde: return "'~'";
    case Tok::Eq: return "'='";
    case Tok::Assign: return "':='";
    case Tok::LessEq: return "'<='";
    case Tok::At: return "'@'";
  }
  return "?";
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool uident_start(char c) { return c >= 'A' && c <= 'Z'; }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

[[noreturn]] void fail(SourceSpan span, std::vector<std::string> expected,
                       const std::string& found) {
  std::string msg = "syntax error at " + std::to_string(span.start) + ".." +
                    std::to_string(span.end) + ": expected ";
  for (size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  throw ParseError(span, std::move(expected), msg);
}

std::vector<Token> lex(std::string_view src, size_t offset) {
  std::vector<Token> out;
  size_t i = 0;
  auto span1 = [&](size_t at, size_t len) {
    return SourceSpan{offset + at, offset + at + len};
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    size_t start = i;
    if (ident_start(c)) {
      ++i;
      while (i < src.size() && ident_cont(src[i])) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)),
                     span1(start, i - start)});
      continue;
    }
    if (uident_start(c)) {
      ++i;
      while (i < src.size() && ident_cont(src[i])) ++i;
      out.push_back({Tok::UIdent, std::string(src.substr(start, i - start)),
                     span1(start, i - start)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
        ++i;
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)),
                     span1(start, i - start)});
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('-', '>')) {
      out.push_back({Tok::Arrow, "->", span1(i, 2)});
      i += 2;
      continue;
    }
    if (two('/', '\\')) {
      out.push_back({Tok::And, "/\\", span1(i, 2)});
      i += 2;
      continue;
    }
    if (two('\\', '/')) {
      out.push_back({Tok::Or, "\\/", span1(i, 2)});
      i += 2;
      continue;
    }
    if (two('<', '=')) {
      out.push_back({Tok::LessEq, "<=", span1(i, 2)});
      i += 2;
      continue;
    }
    if (two(':', '=')) {
      out.push_back({Tok::Assign, ":=", span1(i, 2)});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '<': kind = Tok::LAngle; break;
      case '>': kind = Tok::RAngle; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case ':': kind = Tok::Colon; break;
      case ';': kind = Tok::Semicolon; break;
      case '|': kind = Tok::Pipe; break;
      case '\\': kind = Tok::Lambda; break;
      case '~': kind = Tok::Tilde; break;
      case '=': kind = Tok::Eq; break;
      case '@': kind = Tok::At; break;
      default:
        fail(span1(i, 1), {"a token"},
             "'" + std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), span1(i, 1)});
    ++i;
  }
  out.push_back({Tok::End, "", span1(src.size(), 0)});
  return out;
}

const std::vector<std::string> kReservedWords = {
    "box", "in", "case", "of", "inl", "inr", "fst", "snd", "abort", "triv"};

bool reserved(const std::string& word) {
  return std::find(kReservedWords.begin(), kReservedWords.end(), word) !=
         kReservedWords.end();
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return at(Tok::Ident) && peek().text == w;
  }
  Token advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  Token expect(Tok k) {
    if (!at(k)) fail_here({tok_desc(k)});
    return advance();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail_here({std::string("'") + w + "'"});
    advance();
  }
  [[noreturn]] void fail_here(std::vector<std::string> expected) const {
    const Token& t = peek();
    fail(t.span, std::move(expected),
         t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }
  void expect_end() {
    if (!at(Tok::End)) fail_here({"end of input"});
  }

  // ---- formulas -----------------------------------------------------------

  FormulaPtr formula() {
    FormulaPtr left = formula_or();
    if (at(Tok::Arrow)) {
      advance();
      return f_impl(left, formula());  // right-associative
    }
    return left;
  }

  FormulaPtr formula_or() {
    FormulaPtr left = formula_and();
    while (at(Tok::Or)) {
      advance();
      left = f_disj(left, formula_and());
    }
    return left;
  }

  FormulaPtr formula_and() {
    FormulaPtr left = formula_unary();
    while (at(Tok::And)) {
      advance();
      left = f_conj(left, formula_unary());
    }
    return left;
  }

  FormulaPtr formula_unary() {
    if (at(Tok::Tilde)) {
      advance();
      return f_neg(formula_unary());
    }
    if (at(Tok::LBracket) && peek(1).kind == Tok::RBracket) {
      advance();
      advance();
      return f_box(formula_unary());
    }
    return formula_atom();
  }

  FormulaPtr formula_atom() {
    if (at(Tok::Ident)) {
      if (reserved(peek().text)) fail_here({"a formula"});
      return f_atom(advance().text);
    }
    if (at(Tok::UIdent)) {
      if (peek().text == "Top") {
        advance();
        return f_top();
      }
      if (peek().text == "Bot") {
        advance();
        return f_bot();
      }
      fail_here({"'Top'", "'Bot'", "an atom"});
    }
    if (at(Tok::LParen)) {
      advance();
      FormulaPtr f = formula();
      expect(Tok::RParen);
      return f;
    }
    fail_here({"an atom", "'Top'", "'Bot'", "'~'", "'[]'", "'('"});
  }

  // ---- terms --------------------------------------------------------------

  TermPtr term() {
    if (at(Tok::Lambda)) {
      advance();
      std::string x = var_name();
      expect(Tok::Colon);
      FormulaPtr annot = formula();
      expect(Tok::Dot);
      return t_lam(x, annot, term());  // body extends maximally right
    }
    if (at_word("box")) return box_term();
    if (at_word("case")) return case_term();
    return app_term();
  }

  TermPtr box_term() {
    expect_word("box");
    expect(Tok::LBracket);
    std::vector<BoxBinding> binds;
    if (!at(Tok::RBracket)) {
      while (true) {
        Token name = peek();
        std::string x = var_name();
        expect(Tok::Colon);
        FormulaPtr annot = formula();
        expect(Tok::Eq);
        TermPtr arg = term();
        for (const auto& b : binds)
          if (b.name == x)
            fail(name.span, {"a distinct binder name"}, "'" + x + "'");
        binds.push_back({x, annot, arg});
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
    }
    expect(Tok::RBracket);
    expect_word("in");
    return t_box(std::move(binds), term());
  }

  TermPtr case_term() {
    expect_word("case");
    TermPtr scrut = term();
    expect_word("of");
    expect(Tok::LBrace);
    expect_word("inl");
    std::string x = var_name();
    expect(Tok::Arrow);
    TermPtr left = term();
    expect(Tok::Pipe);
    expect_word("inr");
    std::string y = var_name();
    expect(Tok::Arrow);
    TermPtr right = term();
    expect(Tok::RBrace);
    return t_case(scrut, x, left, y, right);
  }

  bool starts_unary() const {
    if (at(Tok::LParen) || at(Tok::LAngle)) return true;
    if (!at(Tok::Ident)) return false;
    const std::string& w = peek().text;
    if (w == "fst" || w == "snd" || w == "inl" || w == "inr" || w == "abort" ||
        w == "triv")
      return true;
    return !reserved(w);
  }

  TermPtr app_term() {
    TermPtr t = unary_term();
    while (starts_unary()) t = t_app(t, unary_term());
    return t;
  }

  TermPtr unary_term() {
    if (at_word("fst")) {
      advance();
      return t_proj1(unary_term());
    }
    if (at_word("snd")) {
      advance();
      return t_proj2(unary_term());
    }
    if (at_word("inl") || at_word("inr")) {
      bool left = peek().text == "inl";
      Token kw = advance();
      expect(Tok::LBracket);
      FormulaPtr sum = formula();
      expect(Tok::RBracket);
      if (sum->kind != FKind::Disj)
        fail(kw.span, {"a disjunction annotation"},
             "a non-disjunction formula");
      TermPtr arg = unary_term();
      return left ? t_inj1(sum, arg) : t_inj2(sum, arg);
    }
    if (at_word("abort")) {
      advance();
      expect(Tok::LBracket);
      FormulaPtr annot = formula();
      expect(Tok::RBracket);
      return t_exfalso(annot, unary_term());
    }
    if (at_word("triv")) {
      advance();
      return t_triv(unary_term());
    }
    return prim_term();
  }

  TermPtr prim_term() {
    if (at(Tok::Ident)) {
      if (reserved(peek().text)) fail_here({"a term"});
      return t_var(advance().text);
    }
    if (at(Tok::LParen)) {
      advance();
      TermPtr t = term();
      expect(Tok::RParen);
      return t;
    }
    if (at(Tok::LAngle)) {
      advance();
      TermPtr a = term();
      expect(Tok::Comma);
      TermPtr b = term();
      expect(Tok::RAngle);
      return t_pair(a, b);
    }
    fail_here({"a variable", "'('", "'<'", "'\\'", "'box'", "'case'", "'fst'",
               "'snd'", "'inl'", "'inr'", "'abort'", "'triv'"});
  }

  std::string var_name() {
    if (!at(Tok::Ident)) fail_here({"a variable name"});
    if (reserved(peek().text)) fail_here({"a non-reserved variable name"});
    return advance().text;
  }

  // ---- shared small pieces ------------------------------------------------

  int number() {
    Token t = expect(Tok::Number);
    return std::stoi(t.text);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Splits into logical lines, remembering each line's byte offset.
std::vector<std::pair<std::string, size_t>> split_lines(std::string_view text) {
  std::vector<std::pair<std::string, size_t>> lines;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string line(text.substr(start, i - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back({line, start});
      start = i + 1;
    }
  }
  return lines;
}

bool blank_line(const std::string& line) {
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '-') return true;
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p(lex(text, 0));
  FormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

TermPtr parse_term(std::string_view text) {
  Parser p(lex(text, 0));
  TermPtr t = p.term();
  p.expect_end();
  return t;
}

Context parse_context(std::string_view text) {
  Context ctx;
  Parser p(lex(text, 0));
  if (p.at(Tok::End)) return ctx;
  while (true) {
    std::string x = p.var_name();
    p.expect(Tok::Colon);
    FormulaPtr f = p.formula();
    if (ctx.contains(x))
      fail(SourceSpan{0, text.size()}, {"distinct context variables"},
           "'" + x + "'");
    ctx.push(x, f);
    if (p.at(Tok::Comma)) {
      p.advance();
      continue;
    }
    break;
  }
  p.expect_end();
  return ctx;
}

HilbertProof parse_hilbert(std::string_view text) {
  HilbertProof proof;
  bool saw_line = false;
  for (auto& [line, offset] : split_lines(text)) {
    if (blank_line(line)) continue;
    Parser p(lex(line, offset));
    if (!saw_line && proof.hypotheses.empty() && p.at_word("hyps")) {
      p.advance();
      p.expect(Tok::Colon);
      while (true) {
        proof.hypotheses.push_back(p.formula());
        if (p.at(Tok::Semicolon)) {
          p.advance();
          continue;
        }
        break;
      }
      p.expect_end();
      continue;
    }
    int index = p.number();
    p.expect(Tok::Dot);
    if (index != static_cast<int>(proof.lines.size()) + 1)
      fail(SourceSpan{offset, offset + line.size()},
           {"line number " + std::to_string(proof.lines.size() + 1)},
           std::to_string(index));
    FormulaPtr f = p.formula();
    Justification just = Justification::hyp(0);
    if (p.at_word("ax")) {
      p.advance();
      Token name = p.expect(Tok::UIdent);
      SchemeId id;
      if (!scheme_from_name(name.text, id))
        fail(name.span, {"an axiom scheme id (A1..A10, K, CR)"},
             "'" + name.text + "'");
      Instantiation inst;
      if (p.at(Tok::LBrace)) {
        p.advance();
        if (!p.at(Tok::RBrace)) {
          while (true) {
            Token mv = p.expect(Tok::UIdent);
            p.expect(Tok::Assign);
            inst[mv.text] = p.formula();
            if (p.at(Tok::Comma)) {
              p.advance();
              continue;
            }
            break;
          }
        }
        p.expect(Tok::RBrace);
      }
      just = Justification::axiom(id, std::move(inst));
    } else if (p.at_word("mp")) {
      p.advance();
      int major = p.number();
      int minor = p.number();
      just = Justification::mp(major, minor);
    } else if (p.at_word("hyp")) {
      p.advance();
      just = Justification::hyp(p.number());
    } else {
      p.fail_here({"'ax'", "'mp'", "'hyp'"});
    }
    p.expect_end();
    proof.lines.push_back({f, std::move(just)});
    saw_line = true;
  }
  if (proof.lines.empty())
    throw ParseError(SourceSpan{0, text.size()}, {"at least one proof line"},
                     "empty proof");
  return proof;
}

KripkeModel parse_model(std::string_view text) {
  KripkeModel m;
  auto world_of = [&](const Token& t) {
    int w = m.world_index(t.text);
    if (w < 0) fail(t.span, {"a declared world"}, "'" + t.text + "'");
    return w;
  };
  for (auto& [line, offset] : split_lines(text)) {
    if (blank_line(line)) continue;
    Parser p(lex(line, offset));
    if (p.at_word("worlds")) {
      p.advance();
      p.expect(Tok::Colon);
      while (p.at(Tok::Ident)) {
        Token t = p.advance();
        if (m.world_index(t.text) >= 0)
          fail(t.span, {"a fresh world name"}, "'" + t.text + "'");
        m.worlds.push_back(t.text);
      }
      p.expect_end();
      continue;
    }
    if (p.at_word("le")) {
      p.advance();
      p.expect(Tok::Colon);
      if (!p.at(Tok::End)) {
        while (true) {
          int a = world_of(p.expect(Tok::Ident));
          p.expect(Tok::LessEq);
          int b = world_of(p.expect(Tok::Ident));
          m.le.insert({a, b});
          if (p.at(Tok::Comma)) {
            p.advance();
            continue;
          }
          break;
        }
      }
      p.expect_end();
      continue;
    }
    if (p.at(Tok::UIdent) && p.peek().text == "E") {
      p.advance();
      p.expect(Tok::Colon);
      if (!p.at(Tok::End)) {
        while (true) {
          int a = world_of(p.expect(Tok::Ident));
          Token e = p.expect(Tok::UIdent);
          if (e.text != "E") fail(e.span, {"'E'"}, "'" + e.text + "'");
          int b = world_of(p.expect(Tok::Ident));
          m.E.insert({a, b});
          if (p.at(Tok::Comma)) {
            p.advance();
            continue;
          }
          break;
        }
      }
      p.expect_end();
      continue;
    }
    if (p.at_word("val")) {
      p.advance();
      p.expect(Tok::Colon);
      if (!p.at(Tok::End)) {
        while (true) {
          Token atom = p.expect(Tok::Ident);
          p.expect(Tok::At);
          auto& worlds = m.val[atom.text];
          if (!p.at(Tok::Ident)) p.fail_here({"a world name"});
          while (p.at(Tok::Ident)) worlds.insert(world_of(p.advance()));
          if (p.at(Tok::Comma)) {
            p.advance();
            continue;
          }
          break;
        }
      }
      p.expect_end();
      continue;
    }
    p.fail_here({"'worlds:'", "'le:'", "'E:'", "'val:'"});
  }
  if (m.worlds.empty())
    throw ParseError(SourceSpan{0, text.size()}, {"a worlds declaration"},
                     "no worlds");
  return m;
}

}  // namespace ielc
