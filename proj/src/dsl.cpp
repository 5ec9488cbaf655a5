#include "statbench/dsl.hpp"

#include <cstring>

#include "statbench/errors.hpp"
#include "statbench/numfmt.hpp"

namespace statbench::dsl {

bool operator==(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  if (a.is<double>()) {
    const double x = a.as<double>(), y = b.as<double>();
    return std::memcmp(&x, &y, sizeof(double)) == 0;
  }
  if (a.is<CallPtr>()) return *a.as<CallPtr>() == *b.as<CallPtr>();
  return a.data == b.data;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

namespace {

void print_to(std::string& out, const Value& v);

void print_call(std::string& out, const Call& call) {
  out += call.name;
  out.push_back('(');
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i) out += ", ";
    if (call.args[i].keyword) {
      out += *call.args[i].keyword;
      out += " = ";
    }
    print_to(out, call.args[i].value);
  }
  out.push_back(')');
}

void print_to(std::string& out, const Value& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          out += format_number(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += quote(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, ColumnRef>) {
          out += "col(" + quote(x.name) + ")";
        } else if constexpr (std::is_same_v<T, List>) {
          out.push_back('[');
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ", ";
            print_to(out, x[i]);
          }
          out.push_back(']');
        } else {
          print_call(out, *x);
        }
      },
      v.data);
}

}  // namespace

std::string print(const Value& value) {
  std::string out;
  print_to(out, value);
  return out;
}

std::string print(const Call& call) {
  std::string out;
  print_call(out, call);
  return out;
}

std::string print(const ScriptAst& script) {
  std::string out;
  for (const auto& s : script.statements) {
    print_call(out, s);
    out.push_back('\n');
  }
  return out;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(text[0])) return false;
  for (char c : text) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

namespace {

enum class Tok { Ident, Number, String, LParen, RParen, LBracket, RBracket, Comma, Equals, Newline, End };

struct Token {
  Tok kind;
  std::string text;  // source text, or the decoded string for String tokens
  double number = 0;
  Position pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blanks();
      Position pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::End, "", 0, pos});
        return out;
      }
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (c == '\n') {
        advance();
        out.push_back({Tok::Newline, "\\n", 0, pos});
        continue;
      }
      if (is_ident_start(c)) {
        std::string s;
        while (!at_end() && is_ident_char(peek())) s.push_back(advance());
        out.push_back({Tok::Ident, s, 0, pos});
        continue;
      }
      if (is_digit(c) || c == '.' || ((c == '-' || c == '+') && starts_number(1))) {
        out.push_back(lex_number(pos));
        continue;
      }
      if (c == '"') {
        out.push_back(lex_string(pos));
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Equals; break;
        default:
          throw ParseError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                               ": unexpected character '" + std::string(1, c) + "'",
                           pos.line, pos.column);
      }
      advance();
      out.push_back({kind, std::string(1, c), 0, pos});
    }
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  bool starts_number(std::size_t k) const {
    return is_digit(peek(k)) || (peek(k) == '.' && is_digit(peek(k + 1)));
  }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;  // count code points, not bytes
    }
    return c;
  }

  void skip_blanks() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  [[noreturn]] void fail(const std::string& msg, Position pos) const {
    throw ParseError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg,
                     pos.line, pos.column);
  }

  Token lex_number(Position pos) {
    std::string s;
    if (peek() == '-' || peek() == '+') s.push_back(advance());
    while (is_digit(peek())) s.push_back(advance());
    if (peek() == '.') {
      s.push_back(advance());
      while (is_digit(peek())) s.push_back(advance());
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '-' || peek(1) == '+') && is_digit(peek(2))))) {
      s.push_back(advance());
      if (peek() == '-' || peek() == '+') s.push_back(advance());
      while (is_digit(peek())) s.push_back(advance());
    }
    auto v = parse_number(s);
    if (!v || s == "." || s == "-." || s == "+.") fail("malformed number '" + s + "'", pos);
    return {Tok::Number, s, *v, pos};
  }

  Token lex_string(Position pos) {
    advance();
    std::string s;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string", pos);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        Position esc{line_, col_ - 1};
        if (at_end()) fail("unterminated string", pos);
        char e = advance();
        switch (e) {
          case '"': s.push_back('"'); break;
          case '\\': s.push_back('\\'); break;
          case 'n': s.push_back('\n'); break;
          default: fail("invalid escape '\\" + std::string(1, e) + "'", esc);
        }
        continue;
      }
      s.push_back(c);
    }
    return {Tok::String, s, 0, pos};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ScriptAst script() {
    ScriptAst ast;
    for (;;) {
      while (cur().kind == Tok::Newline) ++i_;
      if (cur().kind == Tok::End) return ast;
      ast.statements.push_back(statement());
      if (cur().kind != Tok::Newline && cur().kind != Tok::End) {
        unexpected("expected end of line after statement");
      }
    }
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& next() const { return toks_[std::min(i_ + 1, toks_.size() - 1)]; }

  [[noreturn]] void unexpected(const std::string& expectation) const {
    const Token& t = cur();
    std::string what;
    switch (t.kind) {
      case Tok::End: what = "unexpected end of input"; break;
      case Tok::Newline: what = "unexpected end of line"; break;
      case Tok::String: what = "unexpected token " + quote(t.text); break;
      default: what = "unexpected token '" + t.text + "'";
    }
    if (!expectation.empty()) what += " (" + expectation + ")";
    throw ParseError("line " + std::to_string(t.pos.line) + ", column " + std::to_string(t.pos.column) + ": " + what,
                     t.pos.line, t.pos.column);
  }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) unexpected(std::string("expected ") + what);
    ++i_;
  }

  Call statement() {
    if (cur().kind != Tok::Ident || next().kind != Tok::LParen) unexpected("expected a command call");
    return call();
  }

  Call call() {
    Call c;
    c.name = cur().text;
    c.pos = cur().pos;
    ++i_;
    expect(Tok::LParen, "'('");
    if (cur().kind != Tok::RParen) {
      for (;;) {
        Arg arg;
        if (cur().kind == Tok::Ident && next().kind == Tok::Equals) {
          arg.keyword = cur().text;
          i_ += 2;
        }
        arg.value = value();
        c.args.push_back(std::move(arg));
        if (cur().kind == Tok::Comma) {
          ++i_;
          continue;
        }
        break;
      }
    }
    expect(Tok::RParen, "')' or ','");
    return c;
  }

  Value value() {
    const Token& t = cur();
    Position pos = t.pos;
    Value v;
    switch (t.kind) {
      case Tok::Number:
        v = Value(t.number);
        ++i_;
        break;
      case Tok::String:
        v = Value(t.text);
        ++i_;
        break;
      case Tok::LBracket: {
        ++i_;
        List items;
        if (cur().kind != Tok::RBracket) {
          for (;;) {
            items.push_back(value());
            if (cur().kind == Tok::Comma) {
              ++i_;
              continue;
            }
            break;
          }
        }
        expect(Tok::RBracket, "']' or ','");
        v = Value(std::move(items));
        break;
      }
      case Tok::Ident:
        if (next().kind == Tok::LParen) {
          Call c = call();
          if (c.name == "col" && c.args.size() == 1 && !c.args[0].keyword && c.args[0].value.is<std::string>()) {
            v = Value(ColumnRef{c.args[0].value.as<std::string>()});
          } else {
            v = Value(std::move(c));
          }
        } else if (t.text == "true" || t.text == "false") {
          v = Value(t.text == "true");
          ++i_;
        } else {
          unexpected("expected a value");
        }
        break;
      default:
        unexpected("expected a value");
    }
    v.pos = pos;
    return v;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ScriptAst parse_script(std::string_view text) { return Parser(Lexer(text).run()).script(); }

Call parse_statement(std::string_view text) {
  auto ast = parse_script(text);
  if (ast.statements.size() != 1) {
    throw ParseError("expected exactly one statement, found " + std::to_string(ast.statements.size()), 1, 1);
  }
  return std::move(ast.statements.front());
}

}  // namespace statbench::dsl
