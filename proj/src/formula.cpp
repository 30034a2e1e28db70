#include "latlog/formula.hpp"

#include <algorithm>
#include <cctype>

namespace latlog {

namespace {
Formula node(FKind k, std::string name, Formula l, Formula r) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->name = std::move(name);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}
}  // namespace

Formula fprop(std::string name) { return node(FKind::Prop, std::move(name), nullptr, nullptr); }
Formula ftop() { return node(FKind::Top, "", nullptr, nullptr); }
Formula fbot() { return node(FKind::Bot, "", nullptr, nullptr); }
Formula fand(Formula l, Formula r) { return node(FKind::And, "", std::move(l), std::move(r)); }
Formula forr(Formula l, Formula r) { return node(FKind::Or, "", std::move(l), std::move(r)); }
Formula fbox(Formula f) { return node(FKind::Box, "", std::move(f), nullptr); }
Formula fdia(Formula f) { return node(FKind::Dia, "", std::move(f), nullptr); }

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

bool modality_free(const Formula& f) {
  if (!f) return true;
  if (f->kind == FKind::Box || f->kind == FKind::Dia) return false;
  return modality_free(f->left) && modality_free(f->right);
}

static void collect_letters(const Formula& f, std::vector<std::string>& out) {
  if (!f) return;
  if (f->kind == FKind::Prop) out.push_back(f->name);
  collect_letters(f->left, out);
  collect_letters(f->right, out);
}

std::vector<std::string> letters(const Formula& f) {
  std::vector<std::string> out;
  collect_letters(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> letters(const ConsequencePair& pair) {
  std::vector<std::string> out;
  collect_letters(pair.lhs, out);
  collect_letters(pair.rhs, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Kind { Ident, KwTop, KwBot, KwBox, KwDia, Amp, Bar, LParen, RParen, Leq, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

struct Lexer {
  std::string_view src;
  std::size_t i = 0;
  Token cur;

  explicit Lexer(std::string_view s) : src(s) { advance(); }

  void advance() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    std::size_t start = i;
    if (i >= src.size()) {
      cur = {Token::End, "", start};
      return;
    }
    char c = src[i];
    if (c == '&') { cur = {Token::Amp, "&", start}; ++i; return; }
    if (c == '|') { cur = {Token::Bar, "|", start}; ++i; return; }
    if (c == '(') { cur = {Token::LParen, "(", start}; ++i; return; }
    if (c == ')') { cur = {Token::RParen, ")", start}; ++i; return; }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '=') {
      cur = {Token::Leq, "<=", start};
      i += 2;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      i = j;
      if (word == "top") cur = {Token::KwTop, word, start};
      else if (word == "bot") cur = {Token::KwBot, word, start};
      else if (word == "box") cur = {Token::KwBox, word, start};
      else if (word == "dia") cur = {Token::KwDia, word, start};
      else cur = {Token::Ident, word, start};
      return;
    }
    throw SyntaxError(start, "a token");
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(std::string_view s) : lex(s) {}

  Formula or_expr() {
    Formula f = and_expr();
    while (lex.cur.kind == Token::Bar) {
      lex.advance();
      f = forr(f, and_expr());
    }
    return f;
  }

  Formula and_expr() {
    Formula f = unary();
    while (lex.cur.kind == Token::Amp) {
      lex.advance();
      f = fand(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (lex.cur.kind == Token::KwBox) {
      lex.advance();
      return fbox(unary());
    }
    if (lex.cur.kind == Token::KwDia) {
      lex.advance();
      return fdia(unary());
    }
    return atom();
  }

  Formula atom() {
    switch (lex.cur.kind) {
      case Token::KwTop: lex.advance(); return ftop();
      case Token::KwBot: lex.advance(); return fbot();
      case Token::Ident: {
        std::string name = lex.cur.text;
        lex.advance();
        return fprop(std::move(name));
      }
      case Token::LParen: {
        lex.advance();
        Formula f = or_expr();
        if (lex.cur.kind != Token::RParen) throw SyntaxError(lex.cur.pos, "')'");
        lex.advance();
        return f;
      }
      default:
        throw SyntaxError(lex.cur.pos, "a formula");
    }
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.or_expr();
  if (p.lex.cur.kind != Token::End) throw SyntaxError(p.lex.cur.pos, "end of input");
  return f;
}

ConsequencePair parse_pair(std::string_view text) {
  Parser p(text);
  Formula lhs = p.or_expr();
  if (p.lex.cur.kind != Token::Leq) throw SyntaxError(p.lex.cur.pos, "'<='");
  p.lex.advance();
  Formula rhs = p.or_expr();
  if (p.lex.cur.kind != Token::End) throw SyntaxError(p.lex.cur.pos, "end of input");
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int prec(const Formula& f) {
  switch (f->kind) {
    case FKind::Or: return 1;
    case FKind::And: return 2;
    case FKind::Box:
    case FKind::Dia: return 3;
    default: return 4;
  }
}

void render_to(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FKind::Prop: out += f->name; return;
    case FKind::Top: out += "top"; return;
    case FKind::Bot: out += "bot"; return;
    case FKind::Box:
    case FKind::Dia: {
      out += f->kind == FKind::Box ? "box " : "dia ";
      bool parens = prec(f->left) < 3;
      if (parens) out += "(";
      render_to(f->left, out);
      if (parens) out += ")";
      return;
    }
    case FKind::And:
    case FKind::Or: {
      int me = prec(f);
      bool lp = prec(f->left) < me;
      bool rp = prec(f->right) <= me;
      if (lp) out += "(";
      render_to(f->left, out);
      if (lp) out += ")";
      out += f->kind == FKind::And ? " & " : " | ";
      if (rp) out += "(";
      render_to(f->right, out);
      if (rp) out += ")";
      return;
    }
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

std::string render(const ConsequencePair& pair) {
  return render(pair.lhs) + " <= " + render(pair.rhs);
}

std::string sexp(const Formula& f) {
  switch (f->kind) {
    case FKind::Prop: return f->name;
    case FKind::Top: return "top";
    case FKind::Bot: return "bot";
    case FKind::And: return "(and " + sexp(f->left) + " " + sexp(f->right) + ")";
    case FKind::Or: return "(or " + sexp(f->left) + " " + sexp(f->right) + ")";
    case FKind::Box: return "(box " + sexp(f->left) + ")";
    case FKind::Dia: return "(dia " + sexp(f->left) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Antecedent classification

namespace {

// Matches box^n p; returns depth or -1.
int boxed_atom_depth(const Formula& f) {
  int depth = 0;
  const FormulaNode* cur = f.get();
  while (cur->kind == FKind::Box) {
    ++depth;
    cur = cur->left.get();
  }
  return cur->kind == FKind::Prop ? depth : -1;
}

const FormulaNode* boxed_atom_core(const Formula& f) {
  const FormulaNode* cur = f.get();
  while (cur->kind == FKind::Box) cur = cur->left.get();
  return cur;
}

bool match_sahlqvist(const Formula& f, std::vector<std::pair<std::string, int>>& atoms) {
  switch (f->kind) {
    case FKind::Top:
    case FKind::Bot:
      return true;
    case FKind::Prop:
      atoms.emplace_back(f->name, 0);
      return true;
    case FKind::Box: {
      int d = boxed_atom_depth(f);
      if (d < 0) return false;
      atoms.emplace_back(boxed_atom_core(f)->name, d);
      return true;
    }
    case FKind::And:
    case FKind::Or:
      return match_sahlqvist(f->left, atoms) && match_sahlqvist(f->right, atoms);
    case FKind::Dia:
      return match_sahlqvist(f->left, atoms);
  }
  return false;
}

}  // namespace

AntecedentClass classify_antecedent(const Formula& f) {
  AntecedentClass cls;
  if (modality_free(f)) {
    cls.tag = AntecedentTag::PositiveAny;
    match_sahlqvist(f, cls.boxed_atoms);
    return cls;
  }
  std::vector<std::pair<std::string, int>> atoms;
  if (match_sahlqvist(f, atoms)) {
    cls.tag = AntecedentTag::SahlqvistAntecedent;
    cls.boxed_atoms = std::move(atoms);
  } else {
    cls.tag = AntecedentTag::NotSahlqvist;
  }
  return cls;
}

}  // namespace latlog
