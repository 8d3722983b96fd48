#include "bang/syntax.hpp"

#include <cctype>
#include <vector>

namespace bang {

namespace {

enum class Tok { Ident, Lambda, Backslash, Dot, Bang, Der, LParen, RParen, LBrack, RBrack, Assign, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_rest(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_rest(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      out.push_back({word == "der" ? Tok::Der : Tok::Ident, std::move(word), start});
      continue;
    }
    if (s.substr(i, 2) == "\xCE\xBB") {
      out.push_back({Tok::Lambda, "λ", start});
      i += 2;
      continue;
    }
    if (s.substr(i, 2) == ":=") {
      out.push_back({Tok::Assign, ":=", start});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '\\': k = Tok::Backslash; break;
      case '.': k = Tok::Dot; break;
      case '!': k = Tok::Bang; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      default: throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term parse_all() {
    Term t = term();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().offset, msg); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return advance().text;
  }

  static bool starts_atom(Tok k) {
    return k == Tok::Ident || k == Tok::Bang || k == Tok::Der || k == Tok::LParen;
  }

  Term term() {
    if (peek().kind == Tok::Backslash || peek().kind == Tok::Lambda) {
      ++pos_;
      std::string x = ident();
      expect(Tok::Dot, "'.'");
      return Term::abs(std::move(x), term());
    }
    Term t = post();
    while (starts_atom(peek().kind)) t = Term::app(std::move(t), post());
    return t;
  }

  Term post() {
    Term t = atom();
    while (peek().kind == Tok::LBrack) {
      ++pos_;
      std::string x = ident();
      if (peek().kind != Tok::Backslash && peek().kind != Tok::Assign) fail("expected '\\' or ':='");
      ++pos_;
      Term u = term();
      expect(Tok::RBrack, "']'");
      t = Term::sub(std::move(t), std::move(x), std::move(u));
    }
    return t;
  }

  Term atom() {
    switch (peek().kind) {
      case Tok::Ident: return Term::var(advance().text);
      case Tok::Bang: ++pos_; return Term::bang(atom());
      case Tok::Der: ++pos_; return Term::der(atom());
      case Tok::LParen: {
        ++pos_;
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum Level { kTop = 0, kFun = 1, kPost = 2, kAtom = 3 };

void print(const Term& t, int level, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); return;
    case Term::Kind::Abs: {
      bool paren = level > kTop;
      if (paren) out += '(';
      out += '\\';
      out += t.name();
      out += ". ";
      print(t.body(), kTop, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::App: {
      bool paren = level > kFun;
      if (paren) out += '(';
      print(t.fun(), kFun, out);
      out += ' ';
      print(t.arg(), kPost, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Sub: {
      bool paren = level > kPost;
      if (paren) out += '(';
      print(t.body(), kPost, out);
      out += '[';
      out += t.name();
      out += " \\ ";
      print(t.arg(), kTop, out);
      out += ']';
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Bang:
      out += '!';
      print(t.body(), kAtom, out);
      return;
    case Term::Kind::Der:
      out += "der(";
      print(t.body(), kTop, out);
      out += ')';
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text, ParseOptions options) {
  Term t = Parser(lex(text)).parse_all();
  if (options.strict) {
    auto fv = free_vars(t);
    if (!fv.empty()) throw ParseError(0, "unbound name '" + *fv.begin() + "' in strict mode");
  }
  return t;
}

std::string print_term(const Term& t) {
  std::string out;
  print(t, kTop, out);
  return out;
}

}  // namespace bang
