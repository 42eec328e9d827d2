#ifndef LOCCOH_CECH_HPP
#define LOCCOH_CECH_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loccoh/element.hpp"
#include "loccoh/linear_algebra.hpp"

namespace loccoh {

/// Subset of {0, ..., i-1}, bit t set iff t is in the subset.
using Subset = std::uint32_t;

/// The degree-a slice of the Cech complex of R = k[[X1..Xn]] on X1..Xi.
///
/// Position l is the sum over |S| = l of the degree-a part of R_{X_S}, which
/// is k (spanned by X^a) when a_j >= 0 for every j outside S and 0 otherwise.
struct CechDegreePiece {
  ExponentVector degree;
  std::size_t i = 0;
  /// Subsets with a nonzero piece, per position, in lexicographic order.
  std::vector<std::vector<Subset>> pieces;
  /// boundaries[l] : position l -> position l+1, as a dim(l+1) x dim(l) matrix.
  std::vector<DenseMatrix<std::int64_t>> boundaries;

  std::size_t dim(std::size_t l) const { return pieces.at(l).size(); }

  std::size_t boundary_rank(std::size_t l) const {
    if (l >= boundaries.size() || dim(l) == 0 || dim(l + 1) == 0) return 0;
    return bareiss_rank(boundaries[l]);
  }

  /// dim H^l for l = 0..i.
  std::vector<std::size_t> cohomology_dims() const {
    std::vector<std::size_t> h(i + 1);
    for (std::size_t l = 0; l <= i; ++l) {
      const std::size_t outgoing = l < i ? boundary_rank(l) : 0;
      const std::size_t incoming = l > 0 ? boundary_rank(l - 1) : 0;
      h[l] = dim(l) - outgoing - incoming;
    }
    return h;
  }

  bool composes_to_zero() const {
    for (std::size_t l = 0; l + 2 <= i; ++l) {
      const auto& first = boundaries[l];
      const auto& second = boundaries[l + 1];
      for (std::size_t r = 0; r < dim(l + 2); ++r) {
        for (std::size_t c = 0; c < dim(l); ++c) {
          std::int64_t acc = 0;
          for (std::size_t k = 0; k < dim(l + 1); ++k) acc += second[r][k] * first[k][c];
          if (acc != 0) return false;
        }
      }
    }
    return true;
  }
};

namespace detail {

inline void check_cech_indices(std::size_t n, std::size_t i, const ExponentVector& a) {
  if (i < 1 || i > n) {
    throw PreconditionError("Cech complex needs 1 <= i <= n, got n=" + std::to_string(n) +
                            ", i=" + std::to_string(i));
  }
  if (a.size() != n) throw ShapeMismatch("multidegree has the wrong number of entries");
}

/// Subsets of {0..i-1} of size l, lexicographic on their sorted elements.
inline std::vector<Subset> subsets_of_size(std::size_t i, std::size_t l) {
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (current.size() == l) {
      tuples.push_back(current);
      return;
    }
    for (std::size_t t = start; t < i; ++t) {
      current.push_back(t);
      self(self, t + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<Subset> out;
  for (const auto& tuple : tuples) {
    Subset s = 0;
    for (auto t : tuple) s |= Subset{1} << t;
    out.push_back(s);
  }
  return out;
}

inline bool piece_present(std::size_t n, std::size_t i, const ExponentVector& a, Subset s) {
  for (std::size_t j = 0; j < n; ++j) {
    const bool inverted = j < i && (s >> j & 1U);
    if (!inverted && a[j] < 0) return false;
  }
  return true;
}

} // namespace detail

inline CechDegreePiece build_cech_piece(std::size_t n, std::size_t i, const ExponentVector& a) {
  detail::check_cech_indices(n, i, a);
  CechDegreePiece piece;
  piece.degree = a;
  piece.i = i;
  for (std::size_t l = 0; l <= i; ++l) {
    std::vector<Subset> present;
    for (Subset s : detail::subsets_of_size(i, l)) {
      if (detail::piece_present(n, i, a, s)) present.push_back(s);
    }
    piece.pieces.push_back(std::move(present));
  }
  for (std::size_t l = 0; l < i; ++l) {
    const auto& src = piece.pieces[l];
    const auto& dst = piece.pieces[l + 1];
    DenseMatrix<std::int64_t> d(dst.size(), std::vector<std::int64_t>(src.size(), 0));
    for (std::size_t c = 0; c < src.size(); ++c) {
      for (std::size_t r = 0; r < dst.size(); ++r) {
        const Subset extra = dst[r] & ~src[c];
        if ((dst[r] & src[c]) != src[c] || std::popcount(extra) != 1) continue;
        const auto t = static_cast<unsigned>(std::countr_zero(extra));
        const int below = std::popcount(src[c] & ((Subset{1} << t) - 1));
        d[r][c] = below % 2 == 0 ? 1 : -1;
      }
    }
    piece.boundaries.push_back(std::move(d));
  }
  return piece;
}

/// dim H^l of the degree-a slice, for l = 0..i.
inline std::vector<std::size_t> cech_dims_at_degree(std::size_t n, std::size_t i, const ExponentVector& a) {
  return build_cech_piece(n, i, a).cohomology_dims();
}

/// Rank of the map H^l(degree a) -> H^l(degree a + unit_j) induced by
/// multiplication with X_j on the Cech complex.
inline std::size_t cech_multiplication_rank(std::size_t n, std::size_t i, const ExponentVector& a,
                                            std::size_t j, std::size_t l) {
  if (j >= n) throw PreconditionError("variable index out of range");
  if (l > i) throw PreconditionError("cohomological position out of range");
  ExponentVector b = a;
  b[j] += 1;
  const CechDegreePiece src = build_cech_piece(n, i, a);
  const CechDegreePiece dst = build_cech_piece(n, i, b);
  const std::size_t src_dim = src.dim(l);
  const std::size_t dst_dim = dst.dim(l);
  if (src_dim == 0 || dst_dim == 0) return 0;

  // cycles at position l of the source
  DenseMatrix<Rational> cycles;
  if (l < i && src.dim(l + 1) > 0) {
    DenseMatrix<Rational> d(src.dim(l + 1), std::vector<Rational>(src_dim));
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t c = 0; c < src_dim; ++c) d[r][c] = src.boundaries[l][r][c];
    cycles = rational_nullspace(std::move(d), src_dim);
  } else {
    for (std::size_t c = 0; c < src_dim; ++c) {
      std::vector<Rational> v(src_dim, Rational(0));
      v[c] = 1;
      cycles.push_back(std::move(v));
    }
  }

  // boundaries at position l of the target, as row vectors
  DenseMatrix<Rational> rows;
  if (l > 0 && dst.dim(l - 1) > 0) {
    for (std::size_t c = 0; c < dst.dim(l - 1); ++c) {
      std::vector<Rational> v(dst_dim);
      for (std::size_t r = 0; r < dst_dim; ++r) v[r] = dst.boundaries[l - 1][r][c];
      rows.push_back(std::move(v));
    }
  }
  const std::size_t boundary_rank = bareiss_rank(rows);

  // multiplication by X_j sends the basis vector of subset S to that of S
  for (const auto& z : cycles) {
    std::vector<Rational> image(dst_dim, Rational(0));
    for (std::size_t c = 0; c < src_dim; ++c) {
      if (z[c] == 0) continue;
      const auto& targets = dst.pieces[l];
      const auto pos = std::find(targets.begin(), targets.end(), src.pieces[l][c]);
      image[static_cast<std::size_t>(pos - targets.begin())] += z[c];
    }
    rows.push_back(std::move(image));
  }
  return bareiss_rank(rows) - boundary_rank;
}

/// Multidegree -> (dim H^0, ..., dim H^i) over a window.
struct CohomologyTable {
  std::size_t n = 0;
  std::size_t i = 0;
  /// Multidegrees range over -window_j <= a_j <= window_j.
  TruncationBox window;
  std::map<ExponentVector, std::vector<std::size_t>> dims;

  std::size_t nonzero_top_degrees() const {
    return static_cast<std::size_t>(std::count_if(dims.begin(), dims.end(),
                                                  [&](const auto& kv) { return kv.second.at(i) != 0; }));
  }

  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

struct RealizationResult {
  CohomologyTable table;
  bool pass = false;
  /// First multidegree (lexicographic) where the expected pattern fails.
  std::optional<ExponentVector> first_failure;
};

/// Whether H^i_I(R) has a basis vector in Cech degree a: a_j <= -1 for j < i
/// and a_j >= 0 for j >= i.
inline bool realization_predicts_class(std::size_t i, const ExponentVector& a) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j < i ? a[j] > -1 : a[j] < 0) return false;
  }
  return true;
}

/// Computes cohomology over the whole window and checks it against the
/// realization H^i_I(R) = k[[X_{i+1}..Xn]][X1^-1..Xi^-1]: H^l vanishes for
/// l != i, and H^i is one-dimensional exactly on the predicted degrees.
inline RealizationResult verify_realization(std::size_t n, std::size_t i, const TruncationBox& window) {
  if (window.size() != n) throw ShapeMismatch("window has the wrong number of bounds");
  detail::check_cech_indices(n, i, ExponentVector(n, 0));
  RealizationResult result;
  result.table.n = n;
  result.table.i = i;
  result.table.window = window;
  result.pass = true;

  ExponentVector a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = -window.bound(j);
  while (true) {
    auto h = cech_dims_at_degree(n, i, a);
    bool ok = true;
    for (std::size_t l = 0; l < i; ++l) ok = ok && h[l] == 0;
    ok = ok && h[i] == (realization_predicts_class(i, a) ? 1U : 0U);
    if (!ok && result.pass) {
      result.pass = false;
      result.first_failure = a;
    }
    result.table.dims.emplace(a, std::move(h));

    std::size_t j = n;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (a[j] < window.bound(j)) {
        ++a[j];
        advanced = true;
        break;
      }
      a[j] = -window.bound(j);
    }
    if (!advanced) break;
  }
  return result;
}

/// The shaped monomial of H^i_I(R) corresponding to Cech degree a. Inverse
/// coordinates shift by one (nu_j = a_j + 1) so that the class of X^-1 is the
/// label 1 with exponent 0; series coordinates are unchanged.
inline Element identify_basis(std::size_t n, std::size_t i, const ExponentVector& a, const Field& field,
                              const TruncationBox& box) {
  detail::check_cech_indices(n, i, a);
  const auto h = cech_dims_at_degree(n, i, a);
  if (h[i] != 1) {
    throw PreconditionError("H^" + std::to_string(i) + " vanishes in the requested degree");
  }
  ExponentVector nu = a;
  for (std::size_t j = 0; j < i; ++j) nu[j] += 1;
  return Element::monomial(field, ModuleShape::local_cohomology(n, i), box, nu);
}

} // namespace loccoh

#endif
