// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "loccoh/loccoh.hpp"

namespace {

using namespace loccoh;
using Clock = std::chrono::steady_clock;

const Field Q = Field::rational();

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool all_exact(std::initializer_list<const Element*> es) {
  for (const Element* e : es) {
    if (!e->exact()) return false;
  }
  return true;
}

Outcome cech_realization() {
  const auto start = Clock::now();
  std::size_t tables = 0, degrees = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      const auto result = verify_realization(n, i, TruncationBox::uniform(n, 4));
      ++tables;
      degrees += result.table.dims.size();
      if (!result.pass) {
        return {false, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " deviates from the realization"};
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu tables, %zu multidegrees, %.2f s (limit 60 s)", tables, degrees, secs);
  return {secs < 60.0, buf};
}

Outcome delta_formula() {
  for (std::size_t n = 1; n <= 4; ++n) {
    const DeltaSequence seq = delta(make_d(Q, n, 30), 0, 30);
    for (std::int64_t l = 0; l <= 30; ++l) {
      std::int64_t expected = 1;
      for (std::size_t k = 0; k < n; ++k) expected *= l;
      if (seq.at(l) != -expected) {
        return {false, "delta(d_" + std::to_string(n) + ") wrong at l=" + std::to_string(l)};
      }
    }
  }
  return {true, "n <= 4, l <= 30 exact"};
}

Outcome independence_trials() {
  const auto start = Clock::now();
  Sampler rng(42);
  constexpr std::size_t trials = 200;
  std::size_t certified = 0, inconclusive = 0, false_certificates = 0, failed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto list = rng.coefficient_list(Q, 3, 3);
    const auto cert = independence_certificate(list, 30);
    switch (cert.status) {
      case IndependenceCertificate::Status::certified: {
        ++certified;
        const bool matches = cert.fitted && cert.decomposition && cert.fitted->a == cert.decomposition->a &&
                             cert.fitted->b == cert.decomposition->b;
        if (!matches || !cert.nonzero) ++false_certificates;
        break;
      }
      case IndependenceCertificate::Status::inconclusive: ++inconclusive; break;
      case IndependenceCertificate::Status::failed: ++failed; break;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const double rate = static_cast<double>(certified) / trials;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu certified (%.1f%%, need >= 95%%), %zu inconclusive, %zu failed, %zu false, %.2f s", certified,
                trials, 100.0 * rate, inconclusive, failed, false_certificates, secs);
  return {rate >= 0.95 && failed == 0 && false_certificates == 0 && secs < 120.0, buf};
}

Outcome surjectivity_and_perfection() {
  std::size_t witnesses = 0, pairings = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const TruncationBox box = TruncationBox::uniform(n, 3);
    const ModuleShape e = ModuleShape::injective_hull(n);
    for (std::size_t i = 0; i <= n; ++i) {
      for (const auto& nu : enumerate_box(e, box)) {
        const Element target = Element::monomial(Q, e, box, nu);
        const auto w = tensor_surjectivity_witness(target, n, i);
        if (!(matlis_pair(w.dual, w.primal) == target)) return {false, "witness fails for n=" + std::to_string(n)};
        ++witnesses;
      }
      if (!pairing_perfection_check(Q, n, i, box).pass) {
        return {false, "pairing not perfect for n=" + std::to_string(n) + " i=" + std::to_string(i)};
      }
      ++pairings;
    }
  }
  return {true, std::to_string(witnesses) + " witnesses, " + std::to_string(pairings) + " permutation matrices"};
}

Outcome balance() {
  Sampler rng(5);
  for (std::size_t t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n)));
    const TruncationBox box = TruncationBox::uniform(n, 4);
    const Element d = rng.element(Q, ModuleShape::dual_local_cohomology(n, i), box, 4, 2);
    const Element m = rng.element(Q, ModuleShape::local_cohomology(n, i), box, 4, 2);
    const Element r = rng.sparse_ring_element(Q, box, 2, 3);
    const Element left = matlis_pair(ring_act(r, d), m);
    const Element middle = matlis_pair(d, ring_act(r, m));
    const Element right = ring_act(r, matlis_pair(d, m));
    if (!(left == middle && middle == right) || !all_exact({&left, &middle, &right})) {
      return {false, "trial " + std::to_string(t) + " unbalanced"};
    }
  }
  return {true, "500 triples"};
}

Outcome regularity() {
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t i = 1; i < n; ++i) {
      const auto report = regular_on_dual_check(Q, n, i, TruncationBox::uniform(n, 4));
      const bool quotient_ok = report.quotient_shape == ModuleShape::injective_hull(n - i) &&
                               report.quotient_is_hull && report.quotient_size > 0;
      if (!report.pass || !quotient_ok) {
        return {false, "n=" + std::to_string(n) + " i=" + std::to_string(i)};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " (n, i) cases"};
}

Outcome d_module_laws() {
  Sampler rng(7);
  constexpr std::int64_t bound = 6;
  std::size_t samples = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const TruncationBox box = TruncationBox::uniform(n, bound);
    for (std::size_t t = 0; t < 500; ++t) {
      const ModuleShape shape = rng.shape(n);
      const Element m = rng.element(Q, shape, box, 4, 2);
      const Element r = rng.sparse_ring_element(Q, box, 2, 3);
      const auto j = rng.index(n), k = rng.index(n);

      const Element leibniz_l = derivation_act(j, ring_act(r, m));
      const Element leibniz_r = ring_act(derivation_act(j, r), m) + ring_act(r, derivation_act(j, m));

      const Element djk = derivation_act(j, derivation_act(k, m));
      const Element dkj = derivation_act(k, derivation_act(j, m));

      const Element xk = ring_variable(Q, TruncationBox::uniform(n, 1), k);
      const Element bracket = derivation_act(j, ring_act(xk, m)) - ring_act(xk, derivation_act(j, m));
      const Element expected_bracket = j == k ? m : m.empty_like();

      const Element xj = ring_variable(Q, TruncationBox::uniform(n, 1), j);
      const Element xjxk = ring_act(xj, ring_act(xk, m)), xkxj = ring_act(xk, ring_act(xj, m));

      const bool ok = leibniz_l == leibniz_r && djk == dkj && bracket == expected_bracket && xjxk == xkxj &&
                      all_exact({&leibniz_l, &leibniz_r, &djk, &dkj, &bracket});
      if (!ok) return {false, "n=" + std::to_string(n) + " sample " + std::to_string(t)};
      ++samples;
    }
  }
  return {true, std::to_string(samples) + " samples (500 per n)"};
}

Outcome shift_separation() {
  std::size_t comparisons = 0;
  for (std::int64_t lmax : {9, 12, 16, 20}) {
    for (std::size_t n1 = 1; n1 <= 4; ++n1) {
      for (std::size_t n2 = 1; n2 <= 4; ++n2) {
        if (n1 == n2) continue;
        const DeltaSequence s1 = delta(make_d(Q, n1, lmax), 0, lmax);
        const DeltaSequence s2 = delta(make_d(Q, n2, lmax), 0, lmax);
        const auto cmp = shift_equiv_window(s1, s2, 5);
        if (cmp.outcome != ShiftComparison::Outcome::none) {
          return {false, "d_" + std::to_string(n1) + " vs d_" + std::to_string(n2) + " at window length " +
                             std::to_string(lmax + 1) + ": " + to_string(cmp.outcome)};
        }
        ++comparisons;
      }
    }
  }
  return {true, std::to_string(comparisons) + " ordered pairs over window lengths 10..21, search bound 5"};
}

Outcome io_determinism() {
  Sampler rng(9);
  for (std::size_t t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const ModuleShape shape = rng.shape(n);
    const TruncationBox box = TruncationBox::uniform(n, 6);
    const Field field = rng.coin() ? Q : Field::prime(101);
    const Element e = rng.element(field, shape, box, 6, 6);
    if (!(parse_element(serialize_element(e), field, shape, box) == e)) {
      return {false, "text round trip failed on element " + std::to_string(t)};
    }
    if (!(read_element_document(write_element_document(e, default_names(n))) == e)) {
      return {false, "document round trip failed on element " + std::to_string(t)};
    }
  }
  const std::string first = write_document(run_check_suite("all", 42).json());
  const std::string second = write_document(run_check_suite("all", 42).json());
  if (first != second) return {false, "check reports differ between runs"};
  const TruncationBox box = TruncationBox::uniform(2, 3);
  const std::vector<Element> list{parse_element("1 + X", Q, ModuleShape::ring(2), box, xy_names()),
                                  parse_element("Y - X^2", Q, ModuleShape::ring(2), box, xy_names())};
  const std::string c1 = write_document(certificate_to_json(independence_certificate(list, 20)));
  const std::string c2 = write_document(certificate_to_json(independence_certificate(list, 20)));
  if (c1 != c2) return {false, "certificate documents differ between runs"};
  return {true, "1000 elements round-trip; reports byte-identical"};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Cech realization, n <= 4, window 4", cech_realization},
      {"delta(d_n)(l) = -l^n", delta_formula},
      {"independence certificates on 200 random trials", independence_trials},
      {"surjectivity and perfect pairing, n <= 3, box 3", surjectivity_and_perfection},
      {"balance of the pairing", balance},
      {"regular sequence on the dual, n <= 4, box 4", regularity},
      {"Leibniz and Weyl relations", d_module_laws},
      {"shift-equivalence separation of d_n", shift_separation},
      {"I/O round trip and determinism", io_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %zu. %s: %s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
