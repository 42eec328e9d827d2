#ifndef LOCCOH_EXPR_HPP
#define LOCCOH_EXPR_HPP

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loccoh/element.hpp"

// Element expression grammar (whitespace is insignificant):
//
//   expr        := ['+' | '-'] term { ('+' | '-') term }
//   term        := coefficient { ['*'] factor } | factor { ['*'] factor }
//   factor      := variable ['^' signed-integer]
//   coefficient := integer ['/' positive-integer]
//
// Each factor's exponent must respect its variable's role, so "X^-1*X" is
// rejected for an inverse variable X even though the product is 1.

namespace loccoh {

using VariableNames = std::vector<std::string>;

/// X1, ..., Xn.
inline VariableNames default_names(std::size_t n) {
  VariableNames names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("X" + std::to_string(j + 1));
  return names;
}

/// X, Y for the two-variable setting.
inline VariableNames xy_names() { return {"X", "Y"}; }

namespace detail {

class ExpressionParser {
public:
  ExpressionParser(std::string_view text, const VariableNames& names, Element& out)
      : text_(text), names_(names), out_(out) {}

  void parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      parse_term(negative);
      first = false;
      skip_ws();
    }
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t signed_exponent() {
    skip_ws();
    bool negative = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      negative = peek() == '-';
      ++pos_;
      skip_ws();
    }
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.size() > 18) throw ParseError("exponent out of range", start);
    const std::int64_t v = std::stoll(d);
    return negative ? -v : v;
  }

  bool starts_variable() const {
    return !at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_');
  }

  std::size_t variable() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t j = 0; j < names_.size(); ++j) {
      if (names_[j] == name) return j;
    }
    if (names_.size() == 2 && (name == "X" || name == "Y")) return name == "X" ? 0 : 1;
    throw ParseError("unknown variable '" + std::string(name) + "'", start);
  }

  void parse_term(bool negative) {
    const Field& field = out_.field();
    Scalar coefficient = Scalar::one(field);
    bool has_content = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t start = pos_;
      const BigInt num(digits());
      skip_ws();
      BigInt den = 1;
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t den_pos = pos_;
        den = BigInt(digits());
        if (den == 0) throw ParseError("zero denominator", den_pos);
      }
      try {
        coefficient = Scalar::from_fraction(field, num, den);
      } catch (const PreconditionError& e) {
        throw ParseError(e.what(), start);
      }
      has_content = true;
      skip_ws();
    }
    ExponentVector exponent(out_.num_vars(), 0);
    while (!at_end()) {
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!starts_variable()) throw ParseError("expected a variable after '*'", pos_);
      } else if (!starts_variable()) {
        break;
      }
      const std::size_t var_pos = pos_;
      const std::size_t j = variable();
      skip_ws();
      std::int64_t e = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        e = signed_exponent();
      }
      if (!out_.shape().sign_ok(j, e)) {
        throw RoleViolation("exponent " + std::to_string(e) + " on " + to_string(out_.shape().role(j)) +
                            " variable " + names_[j] + " at position " + std::to_string(var_pos));
      }
      exponent[j] += e;
      has_content = true;
      skip_ws();
    }
    if (!has_content) throw ParseError("expected a coefficient or a variable", pos_);
    out_.add_term(exponent, negative ? -coefficient : coefficient);
  }

  std::string_view text_;
  const VariableNames& names_;
  Element& out_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an expression into the module (field, shape, box). Like terms are
/// combined; role and box constraints are enforced while parsing.
inline Element parse_element(std::string_view text, const Field& field, const ModuleShape& shape,
                             const TruncationBox& box, const VariableNames& names) {
  if (names.size() != shape.size()) throw ShapeMismatch("variable name list does not match the shape");
  Element out(field, shape, box);
  detail::ExpressionParser(text, names, out).parse();
  return out;
}

inline Element parse_element(std::string_view text, const Field& field, const ModuleShape& shape,
                             const TruncationBox& box) {
  return parse_element(text, field, shape, box, default_names(shape.size()));
}

/// Canonical text: terms in lexicographic exponent order, inverse variables
/// before series variables inside a term, "^e" omitted only for e = 1, unit
/// coefficients omitted, reduced fractions.
inline std::string serialize_element(const Element& e, const VariableNames& names) {
  if (names.size() != e.num_vars()) throw ShapeMismatch("variable name list does not match the shape");
  if (e.is_zero()) return "0";
  std::vector<std::size_t> order;
  for (Role pass : {Role::inverse, Role::series}) {
    for (std::size_t j = 0; j < e.num_vars(); ++j) {
      if (e.shape().role(j) == pass) order.push_back(j);
    }
  }
  const Scalar one = Scalar::one(e.field());
  std::string out;
  bool first = true;
  for (const auto& [exp, c] : e.terms()) {
    const bool negative = c.is_negative();
    const Scalar magnitude = negative ? -c : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string monomial;
    for (std::size_t j : order) {
      if (exp[j] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += names[j];
      if (exp[j] != 1) monomial += "^" + std::to_string(exp[j]);
    }
    if (monomial.empty()) {
      out += magnitude.to_string();
    } else if (magnitude == one) {
      out += monomial;
    } else {
      out += magnitude.to_string() + "*" + monomial;
    }
  }
  return out;
}

inline std::string serialize_element(const Element& e) { return serialize_element(e, default_names(e.num_vars())); }

} // namespace loccoh

#endif
