#ifndef LOCCOH_LINEAR_ALGEBRA_HPP
#define LOCCOH_LINEAR_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "loccoh/element.hpp"
#include "loccoh/scalar.hpp"

namespace loccoh {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

/// Rank by fraction-free (Bareiss) row echelon reduction. Every intermediate
/// entry is a minor of the input, so integer inputs stay integral.
template <class Int>
std::size_t bareiss_rank(DenseMatrix<Int> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  Int prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Basis of {x : A x = 0} over the rationals, via reduced row echelon form.
inline DenseMatrix<Rational> rational_nullspace(DenseMatrix<Rational> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    const Rational lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  DenseMatrix<Rational> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Dimension of the k-span of a family of elements, by sparse elimination on
/// their term maps. Elements may come from different modules of the same
/// variable count; only exponents and coefficients matter.
inline std::size_t span_dimension(std::span<const Element> family) {
  // pivot exponent -> reduced row whose smallest exponent is the pivot
  std::map<ExponentVector, Element::TermMap> pivots;
  for (const Element& e : family) {
    Element::TermMap row = e.terms();
    while (!row.empty()) {
      const auto lead = row.begin();
      const auto hit = pivots.find(lead->first);
      if (hit == pivots.end()) {
        pivots.emplace(lead->first, std::move(row));
        break;
      }
      const Scalar factor = lead->second / hit->second.begin()->second;
      for (const auto& [exp, c] : hit->second) {
        auto [it, inserted] = row.try_emplace(exp, -(factor * c));
        if (!inserted) {
          it->second += -(factor * c);
          if (it->second.is_zero()) row.erase(it);
        }
      }
    }
  }
  return pivots.size();
}

} // namespace loccoh

#endif
