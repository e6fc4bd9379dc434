// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsched/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "qsched/error.hpp"

namespace qsched {
namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string position(const Token& t) {
  return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column);
}

[[noreturn]] void syntax_error(const Token& at, const std::string& message) {
  throw Error(ErrorCode::Syntax, message + " at " + position(at), position(at));
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Tok::Ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          t.text.push_back(advance());
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.type = Tok::Number;
        lex_number(t);
      } else if (c == '"') {
        t.type = Tok::String;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
          t.text.push_back(advance());
        }
        if (pos_ >= text_.size() || text_[pos_] != '"') syntax_error(t, "unterminated string");
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        t.type = Tok::Symbol;
        t.text = "->";
        advance();
        advance();
      } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
        t.type = Tok::Symbol;
        t.text.push_back(advance());
      } else {
        syntax_error(t, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        t.text.push_back(advance());
      }
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      t.text.push_back(advance());
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      t.text.push_back(advance());
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        t.text.push_back(advance());
      }
      digits();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

constexpr std::size_t kMaxRegisterSize = 1u << 16;

struct Register {
  std::string name;
  std::size_t size = 0;
};

// An operand is either one element of a register or the whole register.
struct Operand {
  std::optional<std::size_t> index;
  Token at;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string name) : toks_(std::move(tokens)) {
    circuit_.name = std::move(name);
  }

  Circuit run() {
    if (peek_ident("OPENQASM")) {
      next();
      const Token v = expect(Tok::Number, "version number");
      if (v.text != "2.0" && v.text != "2") syntax_error(v, "only OpenQASM 2.0 is supported");
      expect_symbol(";");
    }
    while (peek().type != Tok::End) statement();
    if (!qreg_) syntax_error(peek(), "missing qreg declaration");
    // Width limits belong to the scheduler, which reports TooWide.
    validate(circuit_, std::numeric_limits<std::size_t>::max());
    return std::move(circuit_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool peek_ident(std::string_view word) const {
    return peek().type == Tok::Ident && peek().text == word;
  }
  bool peek_symbol(std::string_view s) const {
    return peek().type == Tok::Symbol && peek().text == s;
  }

  Token expect(Tok type, const std::string& what) {
    if (peek().type != type) syntax_error(peek(), "expected " + what);
    return next();
  }
  void expect_symbol(std::string_view s) {
    if (!peek_symbol(s)) syntax_error(peek(), "expected '" + std::string(s) + "'");
    next();
  }

  std::size_t integer() {
    const Token t = expect(Tok::Number, "integer");
    std::size_t value = 0;
    const auto* end = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(t.text.data(), end, value);
    if (ec != std::errc() || p != end) syntax_error(t, "expected integer, got '" + t.text + "'");
    return value;
  }

  void statement() {
    const Token head = peek();
    if (head.type != Tok::Ident) syntax_error(head, "expected statement");
    if (head.text == "include") {
      next();
      const Token file = expect(Tok::String, "include file name");
      if (file.text != "qelib1.inc") syntax_error(file, "only qelib1.inc may be included");
      expect_symbol(";");
    } else if (head.text == "qreg" || head.text == "creg") {
      declaration(head.text == "qreg");
    } else if (head.text == "measure") {
      next();
      measure();
    } else if (head.text == "barrier") {
      next();
      barrier();
    } else if (head.text == "gate" || head.text == "opaque" || head.text == "if" ||
               head.text == "reset") {
      throw Error(ErrorCode::UnsupportedGate,
                  "'" + head.text + "' is not supported at " + position(head), position(head));
    } else {
      next();
      gate(head);
    }
  }

  void declaration(bool quantum) {
    const Token kw = next();
    const Token id = expect(Tok::Ident, "register name");
    expect_symbol("[");
    const std::size_t size = integer();
    expect_symbol("]");
    expect_symbol(";");
    auto& slot = quantum ? qreg_ : creg_;
    if (slot) syntax_error(kw, "only one " + kw.text + " declaration is supported");
    if (quantum && size == 0) syntax_error(id, "qreg must have at least one qubit");
    if (size > kMaxRegisterSize) syntax_error(id, "register too large");
    if ((quantum && creg_ && creg_->name == id.text) ||
        (!quantum && qreg_ && qreg_->name == id.text)) {
      syntax_error(id, "register name '" + id.text + "' already declared");
    }
    slot = Register{id.text, size};
    (quantum ? circuit_.num_qubits : circuit_.num_clbits) = size;
  }

  Operand operand(bool quantum) {
    const Token id = expect(Tok::Ident, quantum ? "qubit operand" : "classical bit operand");
    const auto& reg = quantum ? qreg_ : creg_;
    if (!reg || reg->name != id.text) {
      syntax_error(id, "unknown " + std::string(quantum ? "quantum" : "classical") +
                           " register '" + id.text + "'");
    }
    Operand op{std::nullopt, id};
    if (peek_symbol("[")) {
      next();
      const Token at = peek();
      const std::size_t index = integer();
      expect_symbol("]");
      if (index >= reg->size) {
        throw Error(ErrorCode::Index,
                    id.text + "[" + std::to_string(index) + "] out of range (size " +
                        std::to_string(reg->size) + ") at " + position(at),
                    position(at));
      }
      op.index = index;
    }
    return op;
  }

  void gate(const Token& head) {
    const auto kind = gate_from_name(head.text == "CX" ? "cx" : head.text);
    if (!kind || *kind == GateKind::MEASURE || *kind == GateKind::BARRIER) {
      throw Error(ErrorCode::UnsupportedGate,
                  "unsupported gate '" + head.text + "' at " + position(head), position(head));
    }
    std::vector<double> params;
    if (peek_symbol("(")) {
      next();
      if (!peek_symbol(")")) {
        params.push_back(expression());
        while (peek_symbol(",")) {
          next();
          params.push_back(expression());
        }
      }
      expect_symbol(")");
    }
    if (params.size() != gate_param_count(*kind)) {
      syntax_error(head, "gate '" + head.text + "' takes " +
                             std::to_string(gate_param_count(*kind)) + " parameter(s)");
    }
    std::vector<Operand> ops{operand(true)};
    while (peek_symbol(",")) {
      next();
      ops.push_back(operand(true));
    }
    expect_symbol(";");
    if (ops.size() != gate_arity(*kind)) {
      syntax_error(head, "gate '" + head.text + "' takes " +
                             std::to_string(gate_arity(*kind)) + " qubit operand(s)");
    }
    if (ops.size() == 1 && !ops[0].index) {
      for (std::size_t q = 0; q < qreg_->size; ++q) {
        circuit_.instructions.push_back({*kind, {q}, params, std::nullopt});
      }
      return;
    }
    Instruction ins{*kind, {}, params, std::nullopt};
    for (const Operand& op : ops) {
      if (!op.index) syntax_error(op.at, "register broadcast only supported for one-qubit gates");
      ins.qubits.push_back(*op.index);
    }
    circuit_.instructions.push_back(std::move(ins));
  }

  void measure() {
    const Operand q = operand(true);
    expect_symbol("->");
    const Operand c = operand(false);
    expect_symbol(";");
    if (q.index.has_value() != c.index.has_value()) {
      syntax_error(q.at, "measure operands must both be indexed or both be registers");
    }
    if (q.index) {
      circuit_.instructions.push_back({GateKind::MEASURE, {*q.index}, {}, *c.index});
      return;
    }
    if (qreg_->size != creg_->size) syntax_error(q.at, "measure register sizes differ");
    for (std::size_t i = 0; i < qreg_->size; ++i) {
      circuit_.instructions.push_back({GateKind::MEASURE, {i}, {}, i});
    }
  }

  void barrier() {
    Instruction ins{GateKind::BARRIER, {}, {}, std::nullopt};
    do {
      if (!ins.qubits.empty() || peek_symbol(",")) expect_symbol(",");
      const Operand op = operand(true);
      if (op.index) {
        ins.qubits.push_back(*op.index);
      } else {
        for (std::size_t q = 0; q < qreg_->size; ++q) ins.qubits.push_back(q);
      }
    } while (peek_symbol(","));
    expect_symbol(";");
    circuit_.instructions.push_back(std::move(ins));
  }

  // expr := term {('+'|'-') term}; term := unary {('*'|'/') unary};
  // unary := '-' unary | '+' unary | primary; primary := number | pi | '(' expr ')'
  double expression() {
    double v = term();
    while (peek_symbol("+") || peek_symbol("-")) {
      const bool plus = next().text == "+";
      const double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = unary();
    while (peek_symbol("*") || peek_symbol("/")) {
      const Token op = next();
      const double rhs = unary();
      if (op.text == "/" && rhs == 0.0) syntax_error(op, "division by zero");
      v = op.text == "*" ? v * rhs : v / rhs;
    }
    return v;
  }

  double unary() {
    if (peek_symbol("-")) {
      next();
      return -unary();
    }
    if (peek_symbol("+")) {
      next();
      return unary();
    }
    return primary();
  }

  double primary() {
    const Token t = next();
    if (t.type == Tok::Number) {
      double v = 0.0;
      const auto* end = t.text.data() + t.text.size();
      auto [p, ec] = std::from_chars(t.text.data(), end, v);
      if (ec != std::errc() || p != end) syntax_error(t, "malformed number '" + t.text + "'");
      return v;
    }
    if (t.type == Tok::Ident && t.text == "pi") return std::numbers::pi;
    if (t.type == Tok::Symbol && t.text == "(") {
      const double v = expression();
      expect_symbol(")");
      return v;
    }
    syntax_error(t, "expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Circuit circuit_;
  std::optional<Register> qreg_;
  std::optional<Register> creg_;
};

std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text, std::string name) {
  return Parser(Lexer(text).run(), std::move(name)).run();
}

std::string serialize_qasm(const Circuit& circuit) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";
  if (circuit.num_clbits > 0) out += "creg c[" + std::to_string(circuit.num_clbits) + "];\n";
  for (const Instruction& ins : circuit.instructions) {
    if (ins.kind == GateKind::MEASURE) {
      out += "measure q[" + std::to_string(ins.qubits[0]) + "] -> c[" +
             std::to_string(*ins.clbit) + "];\n";
      continue;
    }
    out += gate_name(ins.kind);
    if (!ins.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < ins.params.size(); ++i) {
        if (i) out += ',';
        out += format_angle(ins.params[i]);
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < ins.qubits.size(); ++i) {
      if (i) out += ',';
      out += "q[" + std::to_string(ins.qubits[i]) + "]";
    }
    out += ";\n";
  }
  return out;
}

}  // namespace qsched
