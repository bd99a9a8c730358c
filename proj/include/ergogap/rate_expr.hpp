#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace ergogap {

/**
 * @brief A small arithmetic expression over the integer index variable `i`.
 *
 * Grammar: + - * / ^ (right-associative), unary minus, integer and decimal
 * literals, sqrt(x), min(x,y), max(x,y), and the constants pi and e.
 * Used to describe birth/death rate sequences in closed form, e.g.
 * "2*i+4+sqrt(2)".
 *
 * Parsing is deterministic with standard precedence; parse errors carry the
 * byte offset of the offending token. An expression is a pure function of
 * the index and may be evaluated from any thread.
 */
class RateExpr {
 public:
  /// Parses `text`; throws SpecError with a byte offset on syntax errors or
  /// unknown identifiers.
  static RateExpr parse(std::string_view text);

  /// Evaluates at index i. Non-finite results throw SpecError.
  double operator()(std::int64_t i) const;

  /// Reparseable text form. parse(str()) reproduces the same tree.
  std::string str() const;

  bool operator==(const RateExpr& other) const;

  struct Node;

 private:
  explicit RateExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace ergogap
