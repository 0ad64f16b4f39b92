#pragma once

// Exact integer-valued expressions in p (and the curve counts E, V):
// the class-count polynomials, automorphism orders and descendant counts.
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' (int | '{' int '}'))?
//   primary := int | ident | '(' expr ')'
// Identifiers are single letters bound at evaluation time. Division must be
// exact at every '/' node.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace porc {

using BigInt = boost::multiprecision::cpp_int;

class FormulaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisibilityError : public FormulaError {
public:
  using FormulaError::FormulaError;
};

using Bindings = std::map<char, BigInt>;

inline BigInt big_pow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

/// |GL(k, p)| = prod_{i<k} (p^k - p^i).
inline BigInt gl_order(unsigned k, unsigned p) {
  BigInt r = 1;
  const BigInt pk = big_pow(p, k);
  for (unsigned i = 0; i < k; ++i) r *= pk - big_pow(p, i);
  return r;
}

class Formula {
public:
  Formula() = default;

  static Formula parse(std::string_view text) {
    Parser ps{text, 0};
    auto node = ps.expr();
    ps.skip_ws();
    if (ps.pos != text.size())
      throw FormulaError("unexpected '" + std::string(1, text[ps.pos]) + "' at position " +
                         std::to_string(ps.pos) + " in formula '" + std::string(text) + "'");
    Formula f;
    f.root_ = std::move(node);
    f.text_ = std::string(text);
    return f;
  }

  BigInt eval(const Bindings& env) const {
    if (!root_) throw FormulaError("empty formula");
    return root_->eval(env);
  }

  BigInt eval_at(unsigned p) const { return eval({{'p', BigInt(p)}}); }

  const std::string& text() const noexcept { return text_; }
  bool empty() const noexcept { return !root_; }

private:
  struct Node {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow } kind;
    BigInt value;
    char var = 0;
    unsigned exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;

    BigInt eval(const Bindings& env) const {
      switch (kind) {
        case Kind::Const: return value;
        case Kind::Var: {
          auto it = env.find(var);
          if (it == env.end()) throw FormulaError(std::string("unbound variable '") + var + "'");
          return it->second;
        }
        case Kind::Add: return lhs->eval(env) + rhs->eval(env);
        case Kind::Sub: return lhs->eval(env) - rhs->eval(env);
        case Kind::Mul: return lhs->eval(env) * rhs->eval(env);
        case Kind::Neg: return -lhs->eval(env);
        case Kind::Pow: return big_pow(lhs->eval(env), exponent);
        case Kind::Div: {
          const BigInt n = lhs->eval(env), d = rhs->eval(env);
          if (d == 0) throw DivisibilityError("division by zero");
          if (n % d != 0)
            throw DivisibilityError("inexact division " + n.str() + " / " + d.str());
          return n / d;
        }
      }
      throw FormulaError("corrupt formula node");
    }
  };
  using NodePtr = std::shared_ptr<const Node>;

  static NodePtr make(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    char peek() {
      skip_ws();
      return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
      throw FormulaError(what + " at position " + std::to_string(pos) + " in formula '" +
                         std::string(s) + "'");
    }
    bool starts_factor(char c) {
      return (c >= '0' && c <= '9') || c == '(' || (c >= 'a' && c <= 'z') ||
             (c >= 'A' && c <= 'Z');
    }

    NodePtr expr() {
      NodePtr lhs = term();
      for (;;) {
        const char c = peek();
        if (c == '+') {
          ++pos;
          lhs = make(Node::Kind::Add, lhs, term());
        } else if (c == '-') {
          ++pos;
          lhs = make(Node::Kind::Sub, lhs, term());
        } else {
          return lhs;
        }
      }
    }

    NodePtr term() {
      NodePtr lhs = unary();
      for (;;) {
        const char c = peek();
        if (c == '*') {
          ++pos;
          lhs = make(Node::Kind::Mul, lhs, unary());
        } else if (c == '/') {
          ++pos;
          lhs = make(Node::Kind::Div, lhs, unary());
        } else if (starts_factor(c)) {
          lhs = make(Node::Kind::Mul, lhs, unary());
        } else {
          return lhs;
        }
      }
    }

    NodePtr unary() {
      if (peek() == '-') {
        ++pos;
        return make(Node::Kind::Neg, unary());
      }
      return power();
    }

    unsigned integer() {
      skip_ws();
      const std::size_t start = pos;
      unsigned v = 0;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') v = v * 10 + (s[pos++] - '0');
      if (pos == start) fail("expected integer");
      return v;
    }

    NodePtr power() {
      NodePtr base = primary();
      if (peek() == '^') {
        ++pos;
        unsigned e;
        if (peek() == '{') {
          ++pos;
          e = integer();
          if (peek() != '}') fail("expected '}'");
          ++pos;
        } else {
          e = integer();
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Pow;
        n->lhs = base;
        n->exponent = e;
        return n;
      }
      return base;
    }

    NodePtr primary() {
      const char c = peek();
      if (c == '(') {
        ++pos;
        NodePtr e = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos;
        return e;
      }
      if (c >= '0' && c <= '9') {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Const;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        n->value = BigInt(std::string(s.substr(start, pos - start)));
        return n;
      }
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
        ++pos;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Var;
        n->var = c;
        return n;
      }
      fail(c ? std::string("unexpected '") + c + "'" : std::string("unexpected end"));
    }
  };

  NodePtr root_;
  std::string text_;
};

/// Guard on a prime: p mod 12 and, optionally, whether V_p vanishes.
struct CaseGuard {
  unsigned residue_mod12 = 0;
  enum class VCondition { Any, Zero, Positive } v = VCondition::Any;

  bool matches(unsigned p, std::uint64_t v_p) const {
    if (p % 12 != residue_mod12) return false;
    switch (v) {
      case VCondition::Any: return true;
      case VCondition::Zero: return v_p == 0;
      case VCondition::Positive: return v_p > 0;
    }
    return false;
  }
};

class CaseNotCovered : public FormulaError {
public:
  using FormulaError::FormulaError;
};

/// Piecewise formula selected by a congruence guard on p.
struct CaseFormula {
  std::vector<std::pair<CaseGuard, Formula>> cases;

  bool empty() const noexcept { return cases.empty(); }

  /// Index of the matching case; throws CaseNotCovered when none applies.
  std::size_t select(unsigned p, std::uint64_t v_p) const {
    for (std::size_t i = 0; i < cases.size(); ++i)
      if (cases[i].first.matches(p, v_p)) return i;
    throw CaseNotCovered("no case covers p = " + std::to_string(p));
  }

  BigInt eval(unsigned p, std::uint64_t v_p) const {
    return cases[select(p, v_p)].second.eval({{'p', BigInt(p)}, {'V', BigInt(v_p)}});
  }
};

}  // namespace porc
