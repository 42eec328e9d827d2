#ifndef LOCCOH_SAMPLING_HPP
#define LOCCOH_SAMPLING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "loccoh/element.hpp"

namespace loccoh {

/// Seeded generator with platform-independent output. mt19937_64 is fully
/// specified; draws use plain modular reduction instead of the
/// implementation-defined std distributions.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin() { return (engine_() & 1U) != 0; }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(engine_() % size); }

  Scalar scalar(const Field& field, std::int64_t lo = -2, std::int64_t hi = 2) {
    return Scalar::from_integer(field, uniform(lo, hi));
  }

  /// Nonzero scalar, occasionally a proper fraction over the rationals.
  Scalar nonzero_scalar(const Field& field) {
    while (true) {
      const std::int64_t num = uniform(-5, 5);
      const std::int64_t den = field.is_rational() ? uniform(1, 4) : 1;
      Scalar s = Scalar::from_fraction(field, num, den);
      if (!s.is_zero()) return s;
    }
  }

  ModuleShape shape(std::size_t n) {
    std::vector<Role> roles(n);
    for (auto& r : roles) r = coin() ? Role::series : Role::inverse;
    return ModuleShape(std::move(roles));
  }

  /// Up to max_terms terms with |e_j| <= reach (and within the box).
  Element element(const Field& field, const ModuleShape& shape, const TruncationBox& box, std::size_t max_terms,
                  std::int64_t reach) {
    Element e(field, shape, box);
    const auto count = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < count; ++t) {
      ExponentVector exp(shape.size());
      for (std::size_t j = 0; j < shape.size(); ++j) {
        const std::int64_t magnitude = uniform(0, std::min(reach, box.bound(j)));
        exp[j] = shape.role(j) == Role::series ? magnitude : -magnitude;
      }
      e.add_term(exp, nonzero_scalar(field));
    }
    return e;
  }

  /// Power-series element with every monomial of total degree <= degree
  /// receiving a coefficient drawn from [lo, hi].
  Element ring_element(const Field& field, const TruncationBox& box, std::int64_t degree, std::int64_t lo = -2,
                       std::int64_t hi = 2) {
    const std::size_t n = box.size();
    Element r(field, ModuleShape::ring(n), box);
    ExponentVector exp(n, 0);
    auto rec = [&](auto&& self, std::size_t j, std::int64_t left) -> void {
      if (j == n) {
        r.add_term(exp, scalar(field, lo, hi));
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        exp[j] = x;
        self(self, j + 1, left - x);
      }
      exp[j] = 0;
    };
    rec(rec, 0, degree);
    return r;
  }

  /// Sparse power-series element: up to max_terms monomials of total degree <= degree.
  Element sparse_ring_element(const Field& field, const TruncationBox& box, std::int64_t degree,
                              std::size_t max_terms) {
    const std::size_t n = box.size();
    Element r(field, ModuleShape::ring(n), box);
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < count; ++t) {
      ExponentVector exp(n, 0);
      std::int64_t left = uniform(0, degree);
      for (std::size_t j = 0; j < n && left > 0; ++j) {
        exp[j] = j + 1 == n ? left : uniform(0, left);
        left -= exp[j];
      }
      r.add_term(exp, nonzero_scalar(field));
    }
    return r;
  }

  /// Coefficient list (r_1, .., r_m) in k[[X, Y]] with m in [1, max_len],
  /// dense coefficients in [-2, 2] up to total degree `degree`, not all zero.
  std::vector<Element> coefficient_list(const Field& field, std::size_t max_len = 3, std::int64_t degree = 3) {
    const TruncationBox box = TruncationBox::uniform(2, degree);
    while (true) {
      const auto len = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_len)));
      std::vector<Element> list;
      bool any = false;
      for (std::size_t j = 0; j < len; ++j) {
        list.push_back(ring_element(field, box, degree));
        any = any || !list.back().is_zero();
      }
      if (any) return list;
    }
  }

private:
  std::mt19937_64 engine_;
};

} // namespace loccoh

#endif
