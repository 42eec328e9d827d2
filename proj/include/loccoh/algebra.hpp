#ifndef LOCCOH_ALGEBRA_HPP
#define LOCCOH_ALGEBRA_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loccoh/element.hpp"

namespace loccoh {

using WeightedElement = std::pair<Scalar, Element>;

/// Exact k-linear combination sum c_k * e_k. All elements must live in the
/// same module; the result is exact iff every input is.
inline Element linear_combine(std::span<const WeightedElement> pairs) {
  if (pairs.empty()) throw PreconditionError("linear_combine needs at least one element");
  Element out = pairs.front().second.empty_like();
  bool exact = true;
  for (const auto& [c, e] : pairs) {
    if (!e.same_module(out)) throw ShapeMismatch("linear_combine over different modules");
    exact = exact && e.exact();
    if (c.is_zero()) continue;
    for (const auto& [exp, coef] : e.terms()) out.add_term(exp, c * coef);
  }
  out.set_exact(exact);
  return out;
}

inline Element linear_combine(std::initializer_list<WeightedElement> pairs) {
  return linear_combine(std::span<const WeightedElement>(pairs.begin(), pairs.size()));
}

inline Element operator+(const Element& a, const Element& b) {
  const Scalar one = Scalar::one(a.field());
  return linear_combine({{one, a}, {one, b}});
}

inline Element operator-(const Element& a, const Element& b) {
  const Scalar one = Scalar::one(a.field());
  return linear_combine({{one, a}, {-one, b}});
}

inline Element operator*(const Scalar& c, const Element& e) { return linear_combine({{c, e}}); }

/// Action of a power-series element r on a shaped module element m.
///
/// Monomials multiply by adding exponents. A term whose inverse-role
/// coordinate becomes positive is zero in the module (kill rule). A term whose
/// series-role coordinate leaves the box is discarded and clears the exact flag.
inline Element ring_act(const Element& r, const Element& m) {
  if (!r.shape().all(Role::series)) {
    throw RoleViolation("ring_act: multiplier is not an element of the power-series ring");
  }
  if (r.num_vars() != m.num_vars()) {
    throw ShapeMismatch("ring_act: multiplier has " + std::to_string(r.num_vars()) +
                        " variables, module element has " + std::to_string(m.num_vars()));
  }
  if (!(r.field() == m.field())) throw ShapeMismatch("ring_act: field mismatch");

  const ModuleShape& shape = m.shape();
  const std::size_t n = m.num_vars();
  Element out = m.empty_like();
  ExponentVector sum(n);
  for (const auto& [b, rc] : r.terms()) {
    for (const auto& [e, mc] : m.terms()) {
      bool killed = false;
      for (std::size_t j = 0; j < n; ++j) {
        sum[j] = b[j] + e[j];
        if (shape.role(j) == Role::inverse && sum[j] > 0) killed = true;
      }
      if (!killed) out.add_or_truncate(sum, rc * mc);
    }
  }
  out.set_exact(out.exact() && r.exact() && m.exact());
  return out;
}

/// Partial derivative with respect to variable j.
///
/// A series coordinate follows calculus: c*X^e maps to (c*e)*X^{e-1}, and
/// constants vanish. An inverse coordinate with label e <= 0 stands for the
/// Cech class X^{e-1}, so it maps to (c*(e-1))*X^{e-1}; this is the convention
/// under which the Leibniz rule and [d_j, X_j] = 1 hold against the kill rule.
/// Inverse exponents pushed below -T_j are discarded and clear the exact flag.
inline Element derivation_act(std::size_t j, const Element& m) {
  if (j >= m.num_vars()) {
    throw PreconditionError("derivation_act: variable index " + std::to_string(j) + " out of range");
  }
  const bool inverse = m.shape().role(j) == Role::inverse;
  Element out = m.empty_like();
  for (const auto& [e, c] : m.terms()) {
    const std::int64_t factor = inverse ? e[j] - 1 : e[j];
    if (factor == 0) continue;
    ExponentVector shifted = e;
    shifted[j] -= 1;
    out.add_or_truncate(shifted, c * Scalar::from_integer(m.field(), factor));
  }
  out.set_exact(out.exact() && m.exact());
  return out;
}

/// Class of m in M / X_j M: keeps the terms with e_j = 0 and removes
/// coordinate j. Variable j must have series role.
inline Element quotient_by_series_var(std::size_t j, const Element& m) {
  if (j >= m.num_vars()) {
    throw PreconditionError("quotient_by_series_var: variable index " + std::to_string(j) +
                            " out of range");
  }
  if (m.shape().role(j) != Role::series) {
    throw RoleViolation("quotient_by_series_var: variable " + std::to_string(j + 1) +
                        " has inverse role");
  }
  Element out(m.field(), m.shape().without(j), m.box().without(j));
  for (const auto& [e, c] : m.terms()) {
    if (e[j] != 0) continue;
    ExponentVector rest = e;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    out.add_term(rest, c);
  }
  out.set_exact(m.exact());
  return out;
}

/// Copy of e in another box of the same shape; every term must fit.
inline Element rebox(const Element& e, const TruncationBox& box) {
  Element out(e.field(), e.shape(), box);
  for (const auto& [exp, c] : e.terms()) out.add_term(exp, c);
  out.set_exact(e.exact());
  return out;
}

/// X_j^power as an element of the power-series ring in n variables.
inline Element ring_variable(const Field& field, const TruncationBox& box, std::size_t j,
                             std::int64_t power = 1) {
  ExponentVector e(box.size(), 0);
  e.at(j) = power;
  return Element::monomial(field, ModuleShape::ring(box.size()), box, e);
}

inline Element ring_constant(const Field& field, const TruncationBox& box, const Scalar& c) {
  Element e(field, ModuleShape::ring(box.size()), box);
  e.add_term(ExponentVector(box.size(), 0), c);
  return e;
}

} // namespace loccoh

#endif
