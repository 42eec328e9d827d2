#ifndef LOCCOH_CHECKS_HPP
#define LOCCOH_CHECKS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "loccoh/cech.hpp"
#include "loccoh/document.hpp"
#include "loccoh/duality.hpp"
#include "loccoh/expr.hpp"
#include "loccoh/independence.hpp"
#include "loccoh/sampling.hpp"

// Bundled invariant suites. Each invariant runs a fixed number of seeded
// instances; reports are deterministic for a fixed seed.

namespace loccoh {

struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;

  bool passed() const { return failures == 0 && instances > 0; }
};

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;

  bool passed() const {
    for (const auto& r : results) {
      if (!r.passed()) return false;
    }
    return !results.empty();
  }

  std::string text() const {
    std::ostringstream os;
    os << "suite " << suite << " (seed " << seed << ")\n";
    std::size_t ok = 0;
    for (const auto& r : results) {
      os << (r.passed() ? "PASS " : "FAIL ") << r.name;
      for (std::size_t pad = r.name.size(); pad < 40; ++pad) os << ' ';
      os << r.instances << " instances";
      if (r.failures != 0) os << ", " << r.failures << " failures";
      os << "\n";
      ok += r.passed() ? 1 : 0;
    }
    os << "summary: " << ok << " passed, " << results.size() - ok << " failed\n";
    return os.str();
  }

  Json json() const {
    Json doc = document_header("check_report");
    doc["suite"] = suite;
    doc["seed"] = seed;
    Json rs = Json::array();
    for (const auto& r : results) {
      Json j;
      j["name"] = r.name;
      j["instances"] = r.instances;
      j["failures"] = r.failures;
      j["verdict"] = r.passed() ? "pass" : "fail";
      rs.push_back(j);
    }
    doc["results"] = rs;
    doc["verdict"] = passed() ? "pass" : "fail";
    return doc;
  }
};

namespace checks {

/// Runs `trial` `count` times; a trial returns false (or throws) on failure.
inline CheckResult run(std::string name, std::size_t count, const std::function<bool(std::size_t)>& trial) {
  CheckResult r{std::move(name), count, 0};
  for (std::size_t k = 0; k < count; ++k) {
    bool ok = false;
    try {
      ok = trial(k);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline void algebra(std::vector<CheckResult>& out, std::uint64_t seed, const Field& field) {
  Sampler rng(seed);
  constexpr std::int64_t bound = 6;
  auto sample_module = [&](std::size_t n) {
    const ModuleShape shape = rng.shape(n);
    return rng.element(field, shape, TruncationBox::uniform(n, bound), 4, 2);
  };
  auto sample_ring = [&](std::size_t n) {
    return rng.sparse_ring_element(field, TruncationBox::uniform(n, bound), 2, 3);
  };
  auto all_exact = [](std::initializer_list<const Element*> es) {
    for (const Element* e : es) {
      if (!e->exact()) return false;
    }
    return true;
  };

  out.push_back(run("algebra.associativity", 300, [&](std::size_t k) {
    const std::size_t n = 1 + k % 3;
    const Element r = sample_ring(n), s = sample_ring(n), m = sample_module(n);
    const Element rs = ring_act(r, s);
    const Element lhs = ring_act(rs, m), rhs = ring_act(r, ring_act(s, m));
    return lhs == rhs && all_exact({&lhs, &rhs});
  }));
  out.push_back(run("algebra.unital", 300, [&](std::size_t k) {
    const std::size_t n = 1 + k % 3;
    const Element m = sample_module(n);
    return ring_act(ring_constant(field, TruncationBox::uniform(n, 0), Scalar::one(field)), m) == m;
  }));
  out.push_back(run("algebra.bilinearity", 300, [&](std::size_t k) {
    const std::size_t n = 1 + k % 3;
    const ModuleShape shape = rng.shape(n);
    const TruncationBox box = TruncationBox::uniform(n, bound);
    const Element m1 = rng.element(field, shape, box, 4, 2), m2 = rng.element(field, shape, box, 4, 2);
    const Element r1 = sample_ring(n), r2 = sample_ring(n);
    const Scalar c1 = rng.nonzero_scalar(field), c2 = rng.nonzero_scalar(field);
    const Element left = ring_act(r1, linear_combine({{c1, m1}, {c2, m2}}));
    const Element right = linear_combine({{c1, ring_act(r1, m1)}, {c2, ring_act(r1, m2)}});
    const Element sum_r = ring_act(linear_combine({{c1, r1}, {c2, r2}}), m1);
    const Element split_r = linear_combine({{c1, ring_act(r1, m1)}, {c2, ring_act(r2, m1)}});
    return left == right && sum_r == split_r;
  }));
  out.push_back(run("algebra.leibniz", 3 * 500, [&](std::size_t k) {
    const std::size_t n = 1 + k / 500;
    const Element r = sample_ring(n), m = sample_module(n);
    const auto j = rng.index(n);
    const Element lhs = derivation_act(j, ring_act(r, m));
    const Element rhs = ring_act(derivation_act(j, r), m) + ring_act(r, derivation_act(j, m));
    return lhs == rhs && all_exact({&lhs, &rhs});
  }));
  out.push_back(run("algebra.weyl_commute", 3 * 500, [&](std::size_t k) {
    const std::size_t n = 1 + k / 500;
    const Element m = sample_module(n);
    const auto i = rng.index(n), j = rng.index(n);
    const Element a = derivation_act(i, derivation_act(j, m));
    const Element b = derivation_act(j, derivation_act(i, m));
    return a == b && all_exact({&a, &b});
  }));
  out.push_back(run("algebra.weyl_bracket", 3 * 500, [&](std::size_t k) {
    const std::size_t n = 1 + k / 500;
    const Element m = sample_module(n);
    const auto j = rng.index(n);
    const Element x = ring_variable(field, TruncationBox::uniform(n, 1), j);
    const Element bracket = derivation_act(j, ring_act(x, m)) - ring_act(x, derivation_act(j, m));
    return bracket == m && bracket.exact();
  }));
}

inline void cech(std::vector<CheckResult>& out) {
  constexpr std::int64_t window = 4;
  std::size_t degrees = 0, d2_fail = 0, euler_fail = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      const auto result = verify_realization(n, i, TruncationBox::uniform(n, window));
      for (const auto& [a, h] : result.table.dims) {
        const CechDegreePiece piece = build_cech_piece(n, i, a);
        ++degrees;
        if (!piece.composes_to_zero()) ++d2_fail;
        std::int64_t chain = 0, homology = 0;
        for (std::size_t l = 0; l <= i; ++l) {
          const std::int64_t sign = l % 2 == 0 ? 1 : -1;
          chain += sign * static_cast<std::int64_t>(piece.dim(l));
          homology += sign * static_cast<std::int64_t>(h[l]);
        }
        if (chain != homology) ++euler_fail;
      }
    }
  }
  out.push_back({"cech.d_squared_zero", degrees, d2_fail});
  out.push_back({"cech.euler_characteristic", degrees, euler_fail});
  out.push_back(run("cech.realization", 10, [&](std::size_t k) {
    static constexpr std::size_t ns[] = {1, 2, 2, 3, 3, 3, 4, 4, 4, 4};
    static constexpr std::size_t is[] = {1, 1, 2, 1, 2, 3, 1, 2, 3, 4};
    return verify_realization(ns[k], is[k], TruncationBox::uniform(ns[k], window)).pass;
  }));

  // X_j on Cech degree a corresponds to ring_act(X_j, -) on the labels.
  const Field field = Field::rational();
  std::size_t instances = 0, failures = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      const TruncationBox label_box = TruncationBox::uniform(n, window + 1);
      const auto table = verify_realization(n, i, TruncationBox::uniform(n, window)).table;
      for (const auto& [a, h] : table.dims) {
        if (h[i] != 1) continue;
        for (std::size_t j = 0; j < n; ++j) {
          ++instances;
          ExponentVector b = a;
          b[j] += 1;
          const std::size_t rank = cech_multiplication_rank(n, i, a, j, i);
          const Element image =
              ring_act(ring_variable(field, TruncationBox::uniform(n, 1), j), identify_basis(n, i, a, field, label_box));
          const bool target_nonzero = cech_dims_at_degree(n, i, b)[i] == 1;
          bool ok = (rank == 1) == !image.is_zero();
          if (ok && rank == 1) ok = target_nonzero && image == identify_basis(n, i, b, field, label_box);
          if (!ok) ++failures;
        }
      }
    }
  }
  out.push_back({"cech.equivariance", instances, failures});
}

inline void duality(std::vector<CheckResult>& out, std::uint64_t seed, const Field& field) {
  Sampler rng(seed ^ 0x9e3779b97f4a7c15ULL);
  out.push_back(run("duality.balance", 500, [&](std::size_t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n)));
    const TruncationBox box = TruncationBox::uniform(n, 4);
    const Element d = rng.element(field, ModuleShape::dual_local_cohomology(n, i), box, 4, 2);
    const Element m = rng.element(field, ModuleShape::local_cohomology(n, i), box, 4, 2);
    const Element r = rng.sparse_ring_element(field, box, 2, 3);
    const Element left = matlis_pair(ring_act(r, d), m);
    const Element middle = matlis_pair(d, ring_act(r, m));
    const Element right = ring_act(r, matlis_pair(d, m));
    return left == middle && middle == right && left.exact() && middle.exact() && right.exact();
  }));
  std::size_t perfection = 0, perfection_fail = 0, surjective = 0, surjective_fail = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      const TruncationBox box = TruncationBox::uniform(n, 3);
      ++perfection;
      if (!pairing_perfection_check(field, n, i, box).pass) ++perfection_fail;
      for (const auto& e : enumerate_box(ModuleShape::injective_hull(n), box)) {
        ++surjective;
        const Element target = Element::monomial(field, ModuleShape::injective_hull(n), box, e);
        try {
          const auto w = tensor_surjectivity_witness(target, n, i);
          if (!(matlis_pair(w.dual, w.primal) == target)) ++surjective_fail;
        } catch (const Error&) {
          ++surjective_fail;
        }
      }
    }
  }
  out.push_back({"duality.perfection", perfection, perfection_fail});
  out.push_back({"duality.surjectivity", surjective, surjective_fail});
  std::size_t regular = 0, regular_fail = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t i = 1; i < n; ++i) {
      ++regular;
      if (!regular_on_dual_check(field, n, i, TruncationBox::uniform(n, 4)).pass) ++regular_fail;
    }
  }
  out.push_back({"duality.regularity", regular, regular_fail});
  out.push_back(run("duality.gamma_consistency", 200, [&](std::size_t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const ModuleShape shape = rng.shape(n);
    std::vector<std::size_t> gens;
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.coin()) gens.push_back(j);
    }
    if (gens.empty()) gens.push_back(rng.index(n));
    const TruncationBox box = TruncationBox::uniform(n, 3);
    Element e = rng.element(field, shape, box, 3, 3);
    const bool closed_form = gamma_of_shape(shape, gens) == GammaResult::full;
    const bool hull_full = gamma_of_shape(ModuleShape::injective_hull(n), gens) == GammaResult::full;
    return hull_full && (e.is_zero() || is_torsion(e, gens) == closed_form);
  }));
}

inline void independence(std::vector<CheckResult>& out, std::uint64_t seed, const Field& field) {
  Sampler rng(seed ^ 0xd1b54a32d192ed03ULL);
  out.push_back(run("independence.delta_formula", 5, [&](std::size_t k) {
    const std::size_t n = k + 1;
    const std::int64_t lmax = 12;
    const DeltaSequence seq = delta(make_d(field, n, lmax), 0, lmax);
    for (std::int64_t l = 0; l <= lmax; ++l) {
      if (seq.at(l) != -detail::checked_pow(l, n)) return false;
    }
    return true;
  }));
  out.push_back(run("independence.shift_reflexive_symmetric", 100, [&](std::size_t) {
    const auto list = rng.coefficient_list(field, 3, 2);
    const auto cert = independence_certificate(list, 12);
    const DeltaSequence& s = cert.delta;
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const DeltaSequence t = delta(make_d(field, n, 12), 0, 12);
    const auto self = shift_equiv_window(s, s, 5);
    if (self.outcome != ShiftComparison::Outcome::witness) return false;
    const auto forward = shift_equiv_window(s, t, 5);
    const auto backward = shift_equiv_window(t, s, 5);
    if ((forward.outcome == ShiftComparison::Outcome::witness) !=
        (backward.outcome == ShiftComparison::Outcome::witness)) {
      return false;
    }
    if (forward.witness) {
      const ShiftWitness swapped{forward.witness->M, forward.witness->N, -forward.witness->p};
      return verify_witness(t, s, swapped);
    }
    return true;
  }));
  out.push_back(run("independence.growth_separation", 12, [&](std::size_t k) {
    const std::size_t n1 = 1 + k / 3;
    std::size_t n2 = 1 + k % 3;
    if (n2 >= n1) ++n2;
    const DeltaSequence s1 = delta(make_d(field, n1, 12), 0, 12);
    const DeltaSequence s2 = delta(make_d(field, n2, 12), 0, 12);
    return shift_equiv_window(s1, s2, 5).outcome == ShiftComparison::Outcome::none;
  }));
  out.push_back(run("independence.certificate_soundness", 200, [&](std::size_t) {
    const auto list = rng.coefficient_list(field);
    const auto cert = independence_certificate(list, 30);
    if (cert.status == IndependenceCertificate::Status::failed) return false;
    if (!cert.certified()) return true;
    return cert.nonzero && cert.fitted && cert.fitted->a == cert.decomposition->a &&
           cert.fitted->b == cert.decomposition->b;
  }));
  out.push_back(run("independence.torsion_free_scaling", 50, [&](std::size_t) {
    const auto list = rng.coefficient_list(field, 3, 2);
    Element s = rng.sparse_ring_element(field, TruncationBox::uniform(2, 2), 2, 3);
    if (s.is_zero()) s = ring_constant(field, TruncationBox::uniform(2, 2), Scalar::one(field));
    std::vector<Element> scaled;
    for (const auto& r : list) scaled.push_back(ring_act(s, rebox(r, TruncationBox::uniform(2, 4))));
    const auto cert = independence_certificate(scaled, 30);
    if (cert.status == IndependenceCertificate::Status::failed) return false;
    return !cert.certified() || cert.nonzero;
  }));
}

inline void io(std::vector<CheckResult>& out, std::uint64_t seed) {
  Sampler rng(seed ^ 0x94d049bb133111ebULL);
  const Field fields[] = {Field::rational(), Field::prime(101), Field::prime(7)};
  out.push_back(run("io.roundtrip", 1000, [&](std::size_t k) {
    const Field& field = fields[k % 3];
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const ModuleShape shape = rng.shape(n);
    const TruncationBox box = TruncationBox::uniform(n, 5);
    const Element e = rng.element(field, shape, box, 6, 5);
    const std::string text = serialize_element(e);
    const Element back = parse_element(text, field, shape, box);
    const Element from_doc = read_element_document(write_element_document(e, default_names(n)));
    return back == e && from_doc == e && from_doc.exact() == e.exact();
  }));
  out.push_back(run("io.injectivity", 1000, [&](std::size_t k) {
    const Field& field = fields[k % 3];
    const ModuleShape shape = rng.shape(2);
    const TruncationBox box = TruncationBox::uniform(2, 2);
    const Element a = rng.element(field, shape, box, 2, 2), b = rng.element(field, shape, box, 2, 2);
    return (serialize_element(a) == serialize_element(b)) == (a == b);
  }));
}

} // namespace checks

inline const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"algebra", "cech", "duality", "independence", "io", "all"};
  return names;
}

/// Runs a named suite. Throws PreconditionError for an unknown suite.
inline CheckReport run_check_suite(std::string_view suite, std::uint64_t seed,
                                   const Field& field = Field::rational()) {
  CheckReport report;
  report.suite = std::string(suite);
  report.seed = seed;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "algebra") {
    checks::algebra(report.results, seed, field);
    known = true;
  }
  if (all || suite == "cech") {
    checks::cech(report.results);
    known = true;
  }
  if (all || suite == "duality") {
    checks::duality(report.results, seed, field);
    known = true;
  }
  if (all || suite == "independence") {
    checks::independence(report.results, seed, field);
    known = true;
  }
  if (all || suite == "io") {
    checks::io(report.results, seed);
    known = true;
  }
  if (!known) throw PreconditionError("unknown check suite '" + std::string(suite) + "'");
  return report;
}

} // namespace loccoh

#endif
