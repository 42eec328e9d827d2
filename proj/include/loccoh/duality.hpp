#ifndef LOCCOH_DUALITY_HPP
#define LOCCOH_DUALITY_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "loccoh/algebra.hpp"
#include "loccoh/linear_algebra.hpp"

namespace loccoh {

inline ModuleShape dual_shape(const ModuleShape& shape) { return shape.dual(); }

/// The pairing D(H^i_I(R)) x H^i_I(R) -> E, extended bilinearly from
/// X^u (x) X^v |-> X^{u+v} if every coordinate of u+v is <= 0, else 0.
///
/// The result lives in the E-shape; its bound for variable j is the bound of
/// whichever input has inverse role at j, which always holds the product.
inline Element matlis_pair(const Element& d, const Element& m) {
  if (d.num_vars() != m.num_vars() || !(d.shape() == m.shape().dual())) {
    throw ShapeMismatch("matlis_pair: shapes " + d.shape().code() + " and " + m.shape().code() +
                        " are not mutually dual");
  }
  if (!(d.field() == m.field())) throw ShapeMismatch("matlis_pair: field mismatch");
  const std::size_t n = d.num_vars();
  std::vector<std::int64_t> bounds(n);
  for (std::size_t j = 0; j < n; ++j) {
    bounds[j] = d.shape().role(j) == Role::inverse ? d.box().bound(j) : m.box().bound(j);
  }
  Element out(d.field(), ModuleShape::injective_hull(n), TruncationBox(std::move(bounds)));
  ExponentVector sum(n);
  for (const auto& [u, dc] : d.terms()) {
    for (const auto& [v, mc] : m.terms()) {
      bool kept = true;
      for (std::size_t j = 0; j < n; ++j) {
        sum[j] = u[j] + v[j];
        kept = kept && sum[j] <= 0;
      }
      if (kept) out.add_term(sum, dc * mc);
    }
  }
  out.set_exact(d.exact() && m.exact());
  return out;
}

/// Coefficient of the socle monomial 1 in matlis_pair(d, m).
inline Scalar socle_functional(const Element& d, const Element& m) {
  return matlis_pair(d, m).coefficient(ExponentVector(d.num_vars(), 0));
}

struct PairingEntry {
  ExponentVector dual;
  ExponentVector primal;
  ExponentVector product;
  Scalar coefficient;

  friend bool operator==(const PairingEntry&, const PairingEntry&) = default;
};

struct PairingReport {
  std::size_t n = 0;
  std::size_t i = 0;
  TruncationBox box;
  std::size_t dual_count = 0;
  std::size_t primal_count = 0;
  /// Every pair of basis monomials with a nonzero product in E.
  std::vector<PairingEntry> entries;
  /// permutation[a] = index of the unique primal partner of dual element a
  /// under the socle functional, or -1 if there is none.
  std::vector<std::int64_t> permutation;
  bool pass = false;

  friend bool operator==(const PairingReport&, const PairingReport&) = default;
};

namespace detail {

inline bool is_unit_monomial(const Element& e) {
  return e.terms().size() == 1 && e.terms().begin()->second == Scalar::one(e.field());
}

} // namespace detail

/// Checks that the socle functional is a perfect (permutation) pairing
/// between the given families. A pair must hit the socle with coefficient 1
/// exactly when both are unit monomials whose exponents sum to zero; zero
/// elements must pair to zero with everything and carry no partner.
inline PairingReport pairing_perfection_check(std::span<const Element> duals, std::span<const Element> primals) {
  PairingReport report;
  report.dual_count = duals.size();
  report.primal_count = primals.size();
  report.pass = true;
  report.permutation.assign(duals.size(), -1);
  std::vector<std::size_t> column_hits(primals.size(), 0);
  std::size_t nonzero_primals = 0;
  for (const auto& m : primals) nonzero_primals += m.is_zero() ? 0 : 1;

  for (std::size_t a = 0; a < duals.size(); ++a) {
    std::size_t row_hits = 0;
    for (std::size_t b = 0; b < primals.size(); ++b) {
      const Element product = matlis_pair(duals[a], primals[b]);
      for (const auto& [exp, c] : product.terms()) {
        report.entries.push_back({duals[a].is_zero() ? ExponentVector{} : duals[a].terms().begin()->first,
                                  primals[b].is_zero() ? ExponentVector{} : primals[b].terms().begin()->first,
                                  exp, c});
      }
      const Scalar s = product.coefficient(ExponentVector(duals[a].num_vars(), 0));
      bool expect_one = detail::is_unit_monomial(duals[a]) && detail::is_unit_monomial(primals[b]);
      if (expect_one) {
        const auto& u = duals[a].terms().begin()->first;
        const auto& v = primals[b].terms().begin()->first;
        for (std::size_t j = 0; j < u.size(); ++j) expect_one = expect_one && u[j] + v[j] == 0;
      }
      const Scalar expected = expect_one ? Scalar::one(s.field()) : Scalar::zero(s.field());
      if (!(s == expected)) report.pass = false;
      if (!s.is_zero()) {
        ++row_hits;
        ++column_hits[b];
        report.permutation[a] = static_cast<std::int64_t>(b);
      }
    }
    if (!duals[a].is_zero() && row_hits != 1) report.pass = false;
  }
  for (std::size_t b = 0; b < primals.size(); ++b) {
    if (!primals[b].is_zero() && column_hits[b] != 1) report.pass = false;
  }
  std::size_t nonzero_duals = 0;
  for (const auto& d : duals) nonzero_duals += d.is_zero() ? 0 : 1;
  if (nonzero_duals != nonzero_primals) report.pass = false;
  return report;
}

/// Monomial bases of D(H^i_I(R)) and H^i_I(R) over the box.
inline std::vector<Element> monomial_basis(const Field& field, const ModuleShape& shape, const TruncationBox& box) {
  std::vector<Element> basis;
  for (const auto& e : enumerate_box(shape, box)) basis.push_back(Element::monomial(field, shape, box, e));
  return basis;
}

inline PairingReport pairing_perfection_check(const Field& field, std::size_t n, std::size_t i,
                                              const TruncationBox& box) {
  const auto duals = monomial_basis(field, ModuleShape::dual_local_cohomology(n, i), box);
  const auto primals = monomial_basis(field, ModuleShape::local_cohomology(n, i), box);
  PairingReport report = pairing_perfection_check(duals, primals);
  report.n = n;
  report.i = i;
  report.box = box;
  return report;
}

struct SurjectivityWitness {
  Element primal;  ///< X1^-s1 ... Xi^-si in H^i_I(R), carrying the coefficient
  Element dual;    ///< X_{i+1}^-t_{i+1} ... Xn^-tn in D(H^i_I(R))
};

/// Decomposable preimage of an E-monomial under the pairing, taken from the
/// generating system {X1^-s1..Xi^-si (x) X_{i+1}^-t_{i+1}..Xn^-tn}.
inline SurjectivityWitness tensor_surjectivity_witness(const Element& target, std::size_t n, std::size_t i) {
  if (target.num_vars() != n || !target.shape().all(Role::inverse)) {
    throw RoleViolation("surjectivity witness: target is not an element of E");
  }
  if (i > n) throw PreconditionError("surjectivity witness: i exceeds n");
  if (target.terms().size() != 1) {
    throw PreconditionError("surjectivity witness: target must be a single monomial");
  }
  const auto& [nu, c] = *target.terms().begin();
  ExponentVector primal_exp(n, 0), dual_exp(n, 0);
  for (std::size_t j = 0; j < n; ++j) (j < i ? primal_exp : dual_exp)[j] = nu[j];
  SurjectivityWitness w{
      Element::monomial(target.field(), ModuleShape::local_cohomology(n, i), target.box(), primal_exp, c),
      Element::monomial(target.field(), ModuleShape::dual_local_cohomology(n, i), target.box(), dual_exp)};
  if (!(matlis_pair(w.dual, w.primal) == target)) {
    throw Error("surjectivity witness does not reproduce its target");
  }
  return w;
}

namespace detail {

inline void check_generators(std::size_t n, std::span<const std::size_t> gens) {
  if (gens.empty()) throw PreconditionError("generator set must be nonempty");
  for (auto g : gens) {
    if (g >= n) throw PreconditionError("generator index " + std::to_string(g) + " out of range");
  }
}

/// All exponent vectors supported on `gens` with total degree v.
inline std::vector<ExponentVector> monomials_of_degree(std::size_t n, std::span<const std::size_t> gens,
                                                       std::int64_t v) {
  std::vector<ExponentVector> out;
  ExponentVector e(n, 0);
  auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
    if (k + 1 == gens.size()) {
      e[gens[k]] = left;
      out.push_back(e);
      e[gens[k]] = 0;
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      e[gens[k]] = x;
      self(self, k + 1, left - x);
    }
    e[gens[k]] = 0;
  };
  rec(rec, 0, v);
  return out;
}

} // namespace detail

/// Smallest torsion exponent that always suffices for a shaped element:
/// sum of the bounds of the generator variables, plus one.
inline std::int64_t default_torsion_bound(const Element& e, std::span<const std::size_t> gens) {
  std::int64_t total = 1;
  for (auto g : gens) total += e.box().bound(g);
  return total;
}

/// True iff (gens)^v annihilates e for some v <= vmax. Annihilation must be
/// genuine: a product that vanishes only because it left the box does not count.
inline bool is_torsion(const Element& e, std::span<const std::size_t> gens, std::int64_t vmax) {
  detail::check_generators(e.num_vars(), gens);
  if (!e.exact()) throw PreconditionError("is_torsion needs an exact element");
  if (e.is_zero()) return true;
  TruncationBox ring_box = TruncationBox::uniform(e.num_vars(), vmax);
  for (std::int64_t v = 0; v <= vmax; ++v) {
    bool annihilates = true;
    for (const auto& exp : detail::monomials_of_degree(e.num_vars(), gens, v)) {
      const Element r = Element::monomial(e.field(), ModuleShape::ring(e.num_vars()), ring_box, exp);
      const Element product = ring_act(r, e);
      if (!product.is_zero() || !product.exact()) {
        annihilates = false;
        break;
      }
    }
    if (annihilates) return true;
  }
  return false;
}

inline bool is_torsion(const Element& e, std::span<const std::size_t> gens) {
  return is_torsion(e, gens, default_torsion_bound(e, gens));
}

enum class GammaResult { zero, full };

inline const char* to_string(GammaResult g) { return g == GammaResult::full ? "full" : "zero"; }

/// Gamma_(gens) of a shaped module. The action is diagonal on monomials, so
/// the torsion part is everything when each generator has inverse role and
/// nothing otherwise.
inline GammaResult gamma_of_shape(const ModuleShape& shape, std::span<const std::size_t> gens) {
  detail::check_generators(shape.size(), gens);
  for (auto g : gens) {
    if (shape.role(g) != Role::inverse) return GammaResult::zero;
  }
  return GammaResult::full;
}

struct RegularityStep {
  std::size_t variable = 0;     ///< 0-based index of X_j in the original ring
  std::size_t domain_size = 0;  ///< monomials in the loss-free sub-box
  std::size_t image_rank = 0;
  std::size_t kernel_dim = 0;

  friend bool operator==(const RegularityStep&, const RegularityStep&) = default;
};

struct RegularityReport {
  std::size_t n = 0;
  std::size_t i = 0;
  TruncationBox box;
  std::vector<RegularityStep> steps;
  /// Shape and monomial count of D / (X1..Xi) D inside the box.
  ModuleShape quotient_shape;
  std::size_t quotient_size = 0;
  bool quotient_is_hull = false;
  bool pass = false;

  friend bool operator==(const RegularityReport&, const RegularityReport&) = default;
};

/// Checks that X1, ..., Xi is a regular sequence on D(H^i_I(R)) inside the
/// box: each X_j is injective on D/(X1..X_{j-1})D, tested on the sub-box
/// e_j <= T_j - 1 where the shift loses nothing, and the final quotient is
/// the nonzero module E on X_{i+1}..Xn.
inline RegularityReport regular_on_dual_check(const Field& field, std::size_t n, std::size_t i,
                                              const TruncationBox& box) {
  if (i < 1 || i > n) {
    throw PreconditionError("regularity check needs 1 <= i <= n, got i=" + std::to_string(i));
  }
  if (box.size() != n) throw ShapeMismatch("box has the wrong number of bounds");
  RegularityReport report;
  report.n = n;
  report.i = i;
  report.box = box;
  report.pass = true;

  ModuleShape shape = ModuleShape::dual_local_cohomology(n, i);
  TruncationBox current_box = box;
  std::vector<ExponentVector> basis = enumerate_box(shape, current_box);

  for (std::size_t step = 0; step < i; ++step) {
    // the variable X_{step+1} sits at index 0 once earlier ones are quotiented out
    RegularityStep record;
    record.variable = step;
    const Element x = ring_variable(field, TruncationBox::uniform(shape.size(), 1), 0);
    std::vector<Element> images;
    for (const auto& e : basis) {
      if (e[0] > current_box.bound(0) - 1) continue;
      const Element image = ring_act(x, Element::monomial(field, shape, current_box, e));
      if (!image.exact()) report.pass = false;
      images.push_back(image);
    }
    record.domain_size = images.size();
    record.image_rank = span_dimension(images);
    record.kernel_dim = record.domain_size - record.image_rank;
    if (record.kernel_dim != 0) report.pass = false;
    report.steps.push_back(record);

    std::set<ExponentVector> next;
    for (const auto& e : basis) {
      const Element q = quotient_by_series_var(0, Element::monomial(field, shape, current_box, e));
      for (const auto& [exp, c] : q.terms()) next.insert(exp);
    }
    shape = shape.without(0);
    current_box = current_box.without(0);
    basis.assign(next.begin(), next.end());
  }

  report.quotient_shape = shape;
  report.quotient_size = basis.size();
  report.quotient_is_hull = shape == ModuleShape::injective_hull(n - i) &&
                            basis == enumerate_box(shape, current_box);
  report.pass = report.pass && report.quotient_is_hull && !basis.empty();
  return report;
}

} // namespace loccoh

#endif
