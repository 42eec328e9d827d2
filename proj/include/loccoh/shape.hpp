#ifndef LOCCOH_SHAPE_HPP
#define LOCCOH_SHAPE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "loccoh/error.hpp"

namespace loccoh {

/// One exponent per variable. Ordered lexicographically.
using ExponentVector = std::vector<std::int64_t>;

/// A series direction carries exponents >= 0, an inverse direction exponents <= 0.
enum class Role { series, inverse };

inline Role flip(Role r) { return r == Role::series ? Role::inverse : Role::series; }

inline const char* to_string(Role r) { return r == Role::series ? "series" : "inverse"; }

/// Per-variable roles of a product-type module. The four realizations used
/// throughout are
///   R          = k[[X1..Xn]]                         all series
///   E          = k[X1^-1..Xn^-1]                     all inverse
///   H^i_I(R)   = k[[X_{i+1}..Xn]][X1^-1..Xi^-1]      first i inverse
///   D(H^i_I R) = k[X_{i+1}^-1..Xn^-1][[X1..Xi]]      first i series
class ModuleShape {
public:
  ModuleShape() = default;
  explicit ModuleShape(std::vector<Role> roles) : roles_(std::move(roles)) {}

  static ModuleShape ring(std::size_t n) { return ModuleShape(std::vector<Role>(n, Role::series)); }
  static ModuleShape injective_hull(std::size_t n) {
    return ModuleShape(std::vector<Role>(n, Role::inverse));
  }
  static ModuleShape local_cohomology(std::size_t n, std::size_t i) {
    check_index(n, i);
    std::vector<Role> roles(n, Role::series);
    std::fill_n(roles.begin(), i, Role::inverse);
    return ModuleShape(std::move(roles));
  }
  static ModuleShape dual_local_cohomology(std::size_t n, std::size_t i) {
    return local_cohomology(n, i).dual();
  }

  std::size_t size() const noexcept { return roles_.size(); }
  Role role(std::size_t j) const { return roles_.at(j); }
  const std::vector<Role>& roles() const noexcept { return roles_; }

  bool all(Role r) const {
    return std::all_of(roles_.begin(), roles_.end(), [r](Role x) { return x == r; });
  }

  ModuleShape dual() const {
    std::vector<Role> flipped(roles_.size());
    std::transform(roles_.begin(), roles_.end(), flipped.begin(), flip);
    return ModuleShape(std::move(flipped));
  }

  ModuleShape without(std::size_t j) const {
    std::vector<Role> rest = roles_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    return ModuleShape(std::move(rest));
  }

  bool sign_ok(std::size_t j, std::int64_t e) const {
    return roles_[j] == Role::series ? e >= 0 : e <= 0;
  }

  /// Compact form such as "IS" (inverse, series).
  std::string code() const {
    std::string s;
    for (Role r : roles_) s += r == Role::series ? 'S' : 'I';
    return s;
  }

  friend bool operator==(const ModuleShape&, const ModuleShape&) = default;

private:
  static void check_index(std::size_t n, std::size_t i) {
    if (i > n) {
      throw PreconditionError("cohomological index " + std::to_string(i) + " exceeds variable count " +
                              std::to_string(n));
    }
  }

  std::vector<Role> roles_;
};

/// Finite window onto an infinite module: variable j ranges over [0, T_j]
/// in a series role and over [-T_j, 0] in an inverse role.
class TruncationBox {
public:
  TruncationBox() = default;
  explicit TruncationBox(std::vector<std::int64_t> bounds) : bounds_(std::move(bounds)) {
    if (std::any_of(bounds_.begin(), bounds_.end(), [](std::int64_t b) { return b < 0; })) {
      throw PreconditionError("truncation bounds must be nonnegative");
    }
  }

  static TruncationBox uniform(std::size_t n, std::int64_t bound) {
    return TruncationBox(std::vector<std::int64_t>(n, bound));
  }

  std::size_t size() const noexcept { return bounds_.size(); }
  std::int64_t bound(std::size_t j) const { return bounds_.at(j); }
  const std::vector<std::int64_t>& bounds() const noexcept { return bounds_; }

  std::int64_t max_bound() const {
    return bounds_.empty() ? 0 : *std::max_element(bounds_.begin(), bounds_.end());
  }

  /// Magnitude check only; role signs are checked by ModuleShape::sign_ok.
  bool within(std::size_t j, std::int64_t e) const { return e <= bounds_[j] && -e <= bounds_[j]; }

  TruncationBox without(std::size_t j) const {
    std::vector<std::int64_t> rest = bounds_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    return TruncationBox(std::move(rest));
  }

  friend bool operator==(const TruncationBox&, const TruncationBox&) = default;

private:
  std::vector<std::int64_t> bounds_;
};

/// All exponent vectors of `shape` inside `box`, in lexicographic order.
inline std::vector<ExponentVector> enumerate_box(const ModuleShape& shape, const TruncationBox& box) {
  const std::size_t n = shape.size();
  std::vector<ExponentVector> out;
  ExponentVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = shape.role(j) == Role::series ? 0 : -box.bound(j);
    hi[j] = shape.role(j) == Role::series ? box.bound(j) : 0;
  }
  ExponentVector e = lo;
  while (true) {
    out.push_back(e);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (e[j] < hi[j]) {
        ++e[j];
        break;
      }
      e[j] = lo[j];
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

} // namespace loccoh

#endif
