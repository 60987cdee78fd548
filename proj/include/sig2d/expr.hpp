// sig2d - scalar field expressions over (t,x)

#ifndef SIG2D_EXPR_HPP_
#define SIG2D_EXPR_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sig2d {

// Parse failure with the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position(position) {}
  std::size_t position;
};

// Evaluation outside the real domain (log of a nonpositive value, division
// by zero, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable expression tree over {t, x, constants, pi, + - * / ^,
// sin, cos, tan, exp, log, abs, sqrt}. "^" is right-associative,
// "log" is the natural logarithm.
class ScalarField {
 public:
  ScalarField() = default;  // empty; eval throws

  static ScalarField parse(std::string_view src);
  static ScalarField constant(double c);
  // Preset f = t^2 + x^2.
  static ScalarField sum_of_squares();

  double operator()(double t, double x) const;
  bool empty() const { return root_ == nullptr; }

  // Fully parenthesized form; parse(str()) evaluates identically and
  // str() is a fixed point of parse-then-print.
  std::string str() const;

  struct Node;

 private:
  explicit ScalarField(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace sig2d

#endif
