#ifndef LOCCOH_ELEMENT_HPP
#define LOCCOH_ELEMENT_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loccoh/error.hpp"
#include "loccoh/scalar.hpp"
#include "loccoh/shape.hpp"

namespace loccoh {

/// A finite sparse sum of shaped monomials with exact coefficients.
///
/// Every stored exponent respects its variable's role and lies in the box;
/// zero coefficients are never stored. `exact()` is false once some
/// operation discarded a term that fell outside the box, so the element is
/// then only known up to the window.
class Element {
public:
  using TermMap = std::map<ExponentVector, Scalar>;

  Element(Field field, ModuleShape shape, TruncationBox box)
      : field_(std::move(field)), shape_(std::move(shape)), box_(std::move(box)) {
    if (shape_.size() != box_.size()) {
      throw ShapeMismatch("shape has " + std::to_string(shape_.size()) + " variables but box has " +
                          std::to_string(box_.size()));
    }
  }

  static Element monomial(const Field& field, const ModuleShape& shape, const TruncationBox& box,
                          const ExponentVector& exponent, const Scalar& coefficient) {
    Element e(field, shape, box);
    e.add_term(exponent, coefficient);
    return e;
  }

  static Element monomial(const Field& field, const ModuleShape& shape, const TruncationBox& box,
                          const ExponentVector& exponent) {
    return monomial(field, shape, box, exponent, Scalar::one(field));
  }

  /// Adds c * X^exponent, combining with an existing term.
  void add_term(const ExponentVector& exponent, const Scalar& coefficient) {
    check_exponent(exponent);
    if (!(coefficient.field() == field_)) {
      throw ShapeMismatch("coefficient field " + coefficient.field().descriptor() +
                          " does not match element field " + field_.descriptor());
    }
    accumulate(exponent, coefficient);
  }

  /// Adds the term if it lies in the box, otherwise drops it and clears the
  /// exact flag. The exponent must already respect the roles.
  void add_or_truncate(const ExponentVector& exponent, const Scalar& coefficient) {
    for (std::size_t j = 0; j < exponent.size(); ++j) {
      if (!box_.within(j, exponent[j])) {
        if (!coefficient.is_zero()) exact_ = false;
        return;
      }
    }
    accumulate(exponent, coefficient);
  }

  const Field& field() const noexcept { return field_; }
  const ModuleShape& shape() const noexcept { return shape_; }
  const TruncationBox& box() const noexcept { return box_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_vars() const noexcept { return shape_.size(); }
  bool exact() const noexcept { return exact_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void set_exact(bool exact) noexcept { exact_ = exact; }

  Scalar coefficient(const ExponentVector& exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  /// Zero element of the same module.
  Element empty_like() const { return Element(field_, shape_, box_); }

  bool same_module(const Element& other) const {
    return field_ == other.field_ && shape_ == other.shape_ && box_ == other.box_;
  }

  /// Equality of modules and term sets; the exact flag is not compared.
  friend bool operator==(const Element& a, const Element& b) {
    return a.same_module(b) && a.terms_ == b.terms_;
  }

private:
  void check_exponent(const ExponentVector& exponent) const {
    if (exponent.size() != shape_.size()) {
      throw ShapeMismatch("exponent has " + std::to_string(exponent.size()) + " entries, expected " +
                          std::to_string(shape_.size()));
    }
    for (std::size_t j = 0; j < exponent.size(); ++j) {
      if (!shape_.sign_ok(j, exponent[j])) {
        throw RoleViolation("exponent " + std::to_string(exponent[j]) + " of variable " +
                            std::to_string(j + 1) + " violates its " + to_string(shape_.role(j)) +
                            " role");
      }
      if (!box_.within(j, exponent[j])) {
        throw OutOfBox("exponent " + std::to_string(exponent[j]) + " of variable " +
                       std::to_string(j + 1) + " exceeds truncation bound " +
                       std::to_string(box_.bound(j)));
      }
    }
  }

  void accumulate(const ExponentVector& exponent, const Scalar& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
    if (inserted) return;
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Field field_;
  ModuleShape shape_;
  TruncationBox box_;
  TermMap terms_;
  bool exact_ = true;
};

} // namespace loccoh

#endif
