#pragma once

// The analysis script language.
//
//   script    := { line }
//   line      := (statement | comment | blank) NEWLINE
//   statement := IDENT "(" [ arg { "," arg } ] ")"
//   arg       := [ IDENT "=" ] value
//   value     := NUMBER | STRING | "true" | "false" | list | statement
//   list      := "[" [ value { "," value } ] "]"
//   comment   := "#" any-text
//
// Column references use the call form col("name").

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace statbench::dsl {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct ColumnRef {
  std::string name;
  bool operator==(const ColumnRef&) const = default;
};

struct Call;
struct Value;
using List = std::vector<Value>;
using CallPtr = std::shared_ptr<const Call>;

struct Value {
  using Storage = std::variant<double, std::string, bool, ColumnRef, List, CallPtr>;

  Storage data;
  Position pos;

  Value() : data(0.0) {}
  Value(double v) : data(v) {}
  Value(int v) : data(static_cast<double>(v)) {}
  Value(std::string v) : data(std::move(v)) {}
  Value(const char* v) : data(std::string(v)) {}
  Value(bool v) : data(v) {}
  Value(ColumnRef v) : data(std::move(v)) {}
  Value(List v) : data(std::move(v)) {}
  Value(Call v);

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(data);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(data);
  }

  /// Structural equality; positions are ignored and numbers compare bitwise.
  friend bool operator==(const Value& a, const Value& b);
};

struct Arg {
  std::optional<std::string> keyword;
  Value value;
  friend bool operator==(const Arg& a, const Arg& b) { return a.keyword == b.keyword && a.value == b.value; }
};

struct Call {
  std::string name;
  std::vector<Arg> args;
  Position pos;
  friend bool operator==(const Call& a, const Call& b) { return a.name == b.name && a.args == b.args; }
};

inline Value::Value(Call v) : data(std::make_shared<const Call>(std::move(v))) {}

struct ScriptAst {
  std::vector<Call> statements;
  friend bool operator==(const ScriptAst&, const ScriptAst&) = default;
};

/// Renders a value in canonical form: strings double-quoted with \" \\ \n escapes,
/// shortest round-trip numbers, true/false, col("name"), bracketed lists.
std::string print(const Value& value);
std::string print(const Call& call);
/// One statement per line, each followed by a newline.
std::string print(const ScriptAst& script);

std::string quote(std::string_view text);

/// Throws ParseError with line, column, and the offending token in the message.
ScriptAst parse_script(std::string_view text);
/// Parses text that must contain exactly one statement.
Call parse_statement(std::string_view text);

bool is_identifier(std::string_view text);

}  // namespace statbench::dsl
