#ifndef LOCCOH_INDEPENDENCE_HPP
#define LOCCOH_INDEPENDENCE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loccoh/algebra.hpp"

// Two-variable setting R = k[[X, Y]], I = XR, D = D(H^1_I(R)) = k[Y^-1][[X]].
// Index 0 is X (series in D), index 1 is Y (inverse in D).

namespace loccoh {

class DegenerateInput : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

inline ModuleShape dual_shape_xy() { return ModuleShape::dual_local_cohomology(2, 1); }

namespace detail {

inline std::int64_t checked_pow(std::int64_t base, std::size_t exp) {
  std::int64_t result = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw PreconditionError("exponent " + std::to_string(base) + "^" + std::to_string(exp) +
                              " overflows 64 bits");
    }
  }
  return result;
}

inline __int128 wide_pow(std::int64_t base, std::size_t exp) {
  __int128 result = 1;
  for (std::size_t k = 0; k < exp; ++k) result *= base;
  return result;
}

inline void require_xy_ring(const Element& r) {
  if (r.num_vars() != 2 || !r.shape().all(Role::series)) {
    throw ShapeMismatch("expected an element of k[[X, Y]]");
  }
}

} // namespace detail

/// d_n = sum_{l=0}^{Lmax} Y^{-l^n} X^l, exact. The default box is the
/// smallest one holding it; an explicit box must contain it.
inline Element make_d(const Field& field, std::size_t n, std::int64_t lmax,
                      std::optional<TruncationBox> box = std::nullopt) {
  if (n < 1) throw PreconditionError("d_n is defined for n >= 1");
  if (lmax < 0) throw PreconditionError("Lmax must be nonnegative");
  const std::int64_t depth = detail::checked_pow(lmax, n);
  if (!box) box = TruncationBox({lmax, depth});
  if (box->size() != 2 || box->bound(0) < lmax || box->bound(1) < depth) {
    throw OutOfBox("box too small for d_" + std::to_string(n) + " up to l=" + std::to_string(lmax));
  }
  Element d(field, dual_shape_xy(), *box);
  for (std::int64_t l = 0; l <= lmax; ++l) d.add_term({l, -detail::checked_pow(l, n)}, Scalar::one(field));
  return d;
}

/// Per X-degree l: the smallest Y-exponent of the coefficient f_l of X^l,
/// or nullopt when f_l = 0.
struct DeltaSequence {
  std::int64_t first = 0;
  std::vector<std::optional<std::int64_t>> entries;

  std::int64_t last() const { return first + static_cast<std::int64_t>(entries.size()) - 1; }
  bool covers(std::int64_t l) const { return l >= first && l <= last(); }
  const std::optional<std::int64_t>& at(std::int64_t l) const {
    return entries.at(static_cast<std::size_t>(l - first));
  }

  friend bool operator==(const DeltaSequence&, const DeltaSequence&) = default;
};

inline DeltaSequence delta(const Element& d, std::int64_t first, std::int64_t last) {
  if (!(d.shape() == dual_shape_xy())) throw ShapeMismatch("delta expects an element of k[Y^-1][[X]]");
  if (!d.exact()) {
    throw PreconditionError("delta: element is not exact, minimal Y-exponents may lie outside the box");
  }
  if (first < 0 || last < first) throw PreconditionError("delta: empty window");
  DeltaSequence seq;
  seq.first = first;
  seq.entries.assign(static_cast<std::size_t>(last - first + 1), std::nullopt);
  // terms are sorted by (x, y), so the first term seen for each x has the least y
  for (const auto& [e, c] : d.terms()) {
    if (e[0] < first || e[0] > last) continue;
    auto& slot = seq.entries[static_cast<std::size_t>(e[0] - first)];
    if (!slot) slot = e[1];
  }
  return seq;
}

/// r = X^{a+1} h + X^a g with g in k[[Y]] \ {0}; b is the Y-order of g.
struct Decomposition {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Element h;
  Element g;
};

inline Decomposition decompose_r(const Element& r) {
  detail::require_xy_ring(r);
  if (r.is_zero()) throw DegenerateInput("decompose_r: r must be nonzero");
  std::int64_t a = std::numeric_limits<std::int64_t>::max();
  for (const auto& [e, c] : r.terms()) a = std::min(a, e[0]);
  Decomposition out{a, std::numeric_limits<std::int64_t>::max(), r.empty_like(), r.empty_like()};
  for (const auto& [e, c] : r.terms()) {
    if (e[0] == a) {
      out.g.add_term({0, e[1]}, c);
      out.b = std::min(out.b, e[1]);
    } else {
      out.h.add_term({e[0] - a - 1, e[1]}, c);
    }
  }
  out.h.set_exact(r.exact());
  out.g.set_exact(r.exact());
  return out;
}

struct ShiftFit {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const ShiftFit&, const ShiftFit&) = default;
};

/// All (a, b) with a in [0, tail_start], b in [0, b_max] such that
/// seq(l) = -(l-a)^n + b on every window point l >= tail_start. For n >= 2 a
/// tail of three points pins (a, b) down; for n = 1 only a + b is determined
/// and every consistent split is returned.
inline std::vector<ShiftFit> fit_shift_form(const DeltaSequence& seq, std::size_t n, std::int64_t tail_start,
                                            std::int64_t b_max) {
  if (n < 1) throw PreconditionError("fit_shift_form: n must be positive");
  if (tail_start < seq.first || seq.last() - tail_start < 2) {
    throw PreconditionError("fit_shift_form: window must extend at least 3 points from the tail start");
  }
  for (std::int64_t l = tail_start; l <= seq.last(); ++l) {
    if (!seq.at(l)) return {};
  }
  std::vector<ShiftFit> fits;
  for (std::int64_t a = 0; a <= tail_start; ++a) {
    for (std::int64_t b = 0; b <= b_max; ++b) {
      bool ok = true;
      for (std::int64_t l = tail_start; l <= seq.last() && ok; ++l) {
        ok = static_cast<__int128>(*seq.at(l)) == -detail::wide_pow(l - a, n) + b;
      }
      if (ok) fits.push_back({a, b});
    }
  }
  return fits;
}

/// a_{N+l} = b_{M+l} + p for every compared l >= 1.
struct ShiftWitness {
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t p = 0;

  friend bool operator==(const ShiftWitness&, const ShiftWitness&) = default;
};

struct ShiftComparison {
  enum class Outcome { witness, none, inconclusive };
  Outcome outcome = Outcome::none;
  std::optional<ShiftWitness> witness;
};

inline const char* to_string(ShiftComparison::Outcome o) {
  switch (o) {
    case ShiftComparison::Outcome::witness: return "witness";
    case ShiftComparison::Outcome::none: return "none";
    case ShiftComparison::Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace detail {

struct Overlap {
  std::int64_t lo;
  std::int64_t hi;
  std::int64_t length() const { return hi >= lo ? hi - lo + 1 : 0; }
};

inline Overlap shift_overlap(const DeltaSequence& s1, const DeltaSequence& s2, std::int64_t N, std::int64_t M) {
  return {std::max({std::int64_t{1}, s1.first - N, s2.first - M}), std::min(s1.last() - N, s2.last() - M)};
}

/// The offset p aligning the two tails, if any. Zero-coefficient entries
/// must meet zero-coefficient entries.
inline std::optional<std::int64_t> aligning_offset(const DeltaSequence& s1, const DeltaSequence& s2,
                                                   std::int64_t N, std::int64_t M, Overlap ov) {
  std::optional<std::int64_t> p;
  for (std::int64_t l = ov.lo; l <= ov.hi; ++l) {
    const auto& x = s1.at(N + l);
    const auto& y = s2.at(M + l);
    if (x.has_value() != y.has_value()) return std::nullopt;
    if (!x) continue;
    const std::int64_t diff = *x - *y;
    if (p && *p != diff) return std::nullopt;
    p = diff;
  }
  return p.value_or(0);
}

} // namespace detail

/// Whether w aligns the window restrictions of s1 and s2 on at least 3 points.
inline bool verify_witness(const DeltaSequence& s1, const DeltaSequence& s2, const ShiftWitness& w) {
  if (w.N < 0 || w.M < 0) return false;
  const auto ov = detail::shift_overlap(s1, s2, w.N, w.M);
  if (ov.length() < 3) return false;
  const auto p = detail::aligning_offset(s1, s2, w.N, w.M, ov);
  return p && *p == w.p;
}

/// Searches N, M in [0, search_bound] for an exact alignment of the window
/// restrictions. Finding one is necessary, not sufficient, for s1 ~ s2 on
/// the full sequences. Candidates with fewer than 3 overlapping points are
/// not tested; if no candidate can be tested the result is inconclusive.
inline ShiftComparison shift_equiv_window(const DeltaSequence& s1, const DeltaSequence& s2,
                                          std::int64_t search_bound) {
  ShiftComparison result;
  bool tested = false;
  for (std::int64_t N = 0; N <= search_bound; ++N) {
    for (std::int64_t M = 0; M <= search_bound; ++M) {
      const auto ov = detail::shift_overlap(s1, s2, N, M);
      if (ov.length() < 3) continue;
      tested = true;
      if (const auto p = detail::aligning_offset(s1, s2, N, M, ov)) {
        result.outcome = ShiftComparison::Outcome::witness;
        result.witness = ShiftWitness{N, M, *p};
        return result;
      }
    }
  }
  result.outcome = tested ? ShiftComparison::Outcome::none : ShiftComparison::Outcome::inconclusive;
  return result;
}

/// Box in which sum_j r_j d_j up to X^Lmax is computed without loss.
inline TruncationBox auto_truncation(std::span<const Element> r_list, std::int64_t lmax) {
  std::size_t m0 = 0;
  std::int64_t max_x = 0, max_y = 0;
  for (std::size_t j = 0; j < r_list.size(); ++j) {
    detail::require_xy_ring(r_list[j]);
    if (r_list[j].is_zero()) continue;
    m0 = j + 1;
    for (const auto& [e, c] : r_list[j].terms()) {
      max_x = std::max(max_x, e[0]);
      max_y = std::max(max_y, e[1]);
    }
  }
  if (m0 == 0) return TruncationBox({0, 0});
  return TruncationBox({lmax + max_x, detail::checked_pow(lmax, m0) + max_y + 1});
}

struct IndependenceCertificate {
  enum class Status { certified, inconclusive, failed };

  Status status = Status::inconclusive;
  std::string reason;
  std::size_t m0 = 0;
  std::int64_t lmax = 0;
  TruncationBox box;
  /// Decomposition of r_{m0}.
  std::optional<Decomposition> decomposition;
  /// First index of the verified tail; the tail runs to lmax.
  std::int64_t tail_start = 0;
  /// Fitted (a, b) and every other fit consistent with the tail.
  std::optional<ShiftFit> fitted;
  std::size_t fit_count = 0;
  /// delta(sum r_j d_j) over [0, lmax].
  DeltaSequence delta;
  bool nonzero = false;
  /// Smallest Lmax that would reach the dominance regime, when known.
  std::optional<std::int64_t> required_lmax;

  bool certified() const { return status == Status::certified; }
};

inline const char* to_string(IndependenceCertificate::Status s) {
  switch (s) {
    case IndependenceCertificate::Status::certified: return "certified";
    case IndependenceCertificate::Status::inconclusive: return "inconclusive";
    case IndependenceCertificate::Status::failed: return "failed";
  }
  return "?";
}

namespace detail {

/// Whether Y^{b-(l-a)^{m0}} survives the kill rule and is the least exponent
/// in the X^l coefficient of sum_j r_j d_j, with a nonzero combined
/// coefficient: every contribution lies strictly above it or ties with it,
/// and the tied coefficients do not cancel.
inline bool leading_term_dominates(std::span<const Element> r_list, std::size_t m0, std::int64_t a,
                                   std::int64_t b, std::int64_t l) {
  if (l < a) return false;
  const __int128 lead = b - wide_pow(l - a, m0);
  if (lead > 0) return false;
  Scalar tied = Scalar::zero(r_list[m0 - 1].field());
  for (std::size_t j = 1; j <= m0; ++j) {
    for (const auto& [e, c] : r_list[j - 1].terms()) {
      if (e[0] > l) continue;
      const __int128 exponent = e[1] - wide_pow(l - e[0], j);
      if (exponent < lead) return false;
      if (exponent == lead) tied += c;
    }
  }
  return !tied.is_zero();
}

/// Whether the leading term dominates for all large l. Only m0 = 1 can fail:
/// for l past every X-degree, X^p Y^q of r_1 lands on Y^{p+q-l}, so a term
/// with p + q < a + b wins outright and terms with p + q = a + b tie; the
/// tied coefficients must not cancel.
inline bool dominates_eventually(const Element& r_top, std::size_t m0, std::int64_t a, std::int64_t b) {
  if (m0 >= 2) return true;
  Scalar tied = Scalar::zero(r_top.field());
  for (const auto& [e, c] : r_top.terms()) {
    if (e[0] + e[1] < a + b) return false;
    if (e[0] + e[1] == a + b) tied += c;
  }
  return !tied.is_zero();
}

} // namespace detail

/// Finite-window certificate that sum_j r_j d_j (r_j multiplying d_j,
/// j = 1..) is nonzero: with m0 the last nonzero index and (a, b) read off
/// r_{m0}, delta(sum) must follow -(l-a)^{m0} + b on the dominance tail.
inline IndependenceCertificate independence_certificate(std::span<const Element> r_list, std::int64_t lmax) {
  constexpr std::size_t max_family_index = 8;
  constexpr std::int64_t scan_cap = 4096;
  IndependenceCertificate cert;
  cert.lmax = lmax;
  if (lmax < 0) throw PreconditionError("Lmax must be nonnegative");
  for (std::size_t j = 0; j < r_list.size(); ++j) {
    detail::require_xy_ring(r_list[j]);
    if (!r_list[j].is_zero()) cert.m0 = j + 1;
  }
  if (cert.m0 == 0) throw DegenerateInput("all coefficients are zero");
  if (cert.m0 > max_family_index) {
    throw PreconditionError("independence certificates support d_1 .. d_" + std::to_string(max_family_index));
  }
  const Element& top = r_list[cert.m0 - 1];
  const Field& field = top.field();
  const Decomposition dec = decompose_r(top);
  cert.decomposition = dec;
  cert.box = auto_truncation(r_list, lmax);

  Element sum(field, dual_shape_xy(), cert.box);
  for (std::size_t j = 0; j < cert.m0; ++j) {
    if (r_list[j].is_zero()) continue;
    sum = sum + ring_act(r_list[j], make_d(field, j + 1, lmax, cert.box));
  }
  cert.nonzero = !sum.is_zero();
  cert.delta = delta(sum, 0, lmax);

  const auto dominates = [&](std::int64_t l) {
    return detail::leading_term_dominates(r_list, cert.m0, dec.a, dec.b, l);
  };
  if (!detail::dominates_eventually(top, cert.m0, dec.a, dec.b)) {
    cert.status = IndependenceCertificate::Status::inconclusive;
    cert.reason = "no dominance regime: a term of r_1 undercuts the leading term or the tied terms cancel";
    return cert;
  }
  std::int64_t tail = lmax + 1;
  while (tail > dec.a && dominates(tail - 1)) --tail;
  cert.tail_start = tail;
  if (lmax - tail < 2) {
    std::int64_t last_failure = dec.a - 1;
    for (std::int64_t l = dec.a; l <= scan_cap; ++l) {
      if (!dominates(l)) last_failure = l;
    }
    if (last_failure < scan_cap) cert.required_lmax = last_failure + 3;
    cert.status = IndependenceCertificate::Status::inconclusive;
    cert.reason = "window too short to reach the dominance regime";
    return cert;
  }

  std::int64_t b_max = 0;
  for (const auto& [e, c] : top.terms()) b_max = std::max(b_max, e[1]);
  const auto fits = fit_shift_form(cert.delta, cert.m0, tail, b_max);
  cert.fit_count = fits.size();
  const ShiftFit expected{dec.a, dec.b};
  if (std::find(fits.begin(), fits.end(), expected) != fits.end()) cert.fitted = expected;

  if (!cert.fitted || (cert.m0 >= 2 && fits.size() != 1)) {
    cert.status = IndependenceCertificate::Status::failed;
    cert.reason = "delta does not follow -(l-a)^m0 + b on the dominance tail";
  } else if (!cert.nonzero) {
    cert.status = IndependenceCertificate::Status::failed;
    cert.reason = "the combination evaluated to zero";
  } else {
    cert.status = IndependenceCertificate::Status::certified;
  }
  return cert;
}

} // namespace loccoh

#endif
