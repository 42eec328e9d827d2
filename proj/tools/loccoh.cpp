// Command-line front end for the loccoh toolkit.
//
// Exit codes: 0 success / certified, 1 verification failure, 2 inconclusive,
// 64 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loccoh/loccoh.hpp"

namespace {

using namespace loccoh;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SessionConfig {
  std::string field = "rational";
  std::int64_t trunc = 8;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "human";
};

struct Options {
  SessionConfig session;
  std::size_t n = 2;
  std::size_t i = 1;
  std::int64_t window = 3;
  std::int64_t lmax = 10;
  std::vector<std::string> r_list;
  std::string suite = "all";
  std::string shape;
  std::string d_expr;
  std::string m_expr;
  std::string r_expr;
  std::string expr;
  std::size_t family = 0;
  std::size_t var = 1;
  std::vector<std::size_t> gens;
};

void add_common(CLI::App* sub, SessionConfig& s) {
  sub->add_option("--field", s.field, "coefficient field: rational | prime:<p>")->capture_default_str();
  sub->add_option("--trunc", s.trunc, "default truncation bound for element inputs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--out", s.out, "write output to this file instead of stdout");
  sub->add_option("--seed", s.seed, "random seed")->capture_default_str();
  sub->add_option("--format", s.format, "output mode")
      ->check(CLI::IsMember({"human", "doc"}))
      ->capture_default_str();
}

void emit(const SessionConfig& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + s.out + "'");
  file << text;
}

ModuleShape parse_shape(const std::string& code) {
  if (code.empty()) throw UsageError("--shape is required (a string of S/I, one letter per variable)");
  std::vector<Role> roles;
  for (char c : code) {
    if (c == 'S' || c == 's') {
      roles.push_back(Role::series);
    } else if (c == 'I' || c == 'i') {
      roles.push_back(Role::inverse);
    } else {
      throw UsageError("shape code may only contain S and I");
    }
  }
  return ModuleShape(std::move(roles));
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

/// Inline expression, or "@path" for an element document.
Element read_element(const std::string& source, const Field& field, const ModuleShape& shape,
                     const TruncationBox& box, const VariableNames& names) {
  if (!source.empty() && source.front() == '@') {
    Element e = read_element_document(read_file(source.substr(1)));
    if (!(e.shape() == shape)) throw UsageError("element document has shape " + e.shape().code());
    return e;
  }
  return parse_element(source, field, shape, box, names);
}

VariableNames names_for(std::size_t n) { return n == 2 ? xy_names() : default_names(n); }

std::string element_output(const SessionConfig& s, const Element& e, const VariableNames& names) {
  if (s.format == "doc") return write_element_document(e, names);
  return serialize_element(e, names) + (e.exact() ? "" : "   (truncated)") + "\n";
}

int cmd_cohomology(const Options& o) {
  if (o.i < 1 || o.i > o.n) throw UsageError("need 1 <= i <= n");
  const auto result = verify_realization(o.n, o.i, TruncationBox::uniform(o.n, o.window));
  if (o.session.format == "doc") {
    emit(o.session, write_document(realization_to_json(result)));
  } else {
    std::ostringstream os;
    os << "Cech cohomology of k[[X1..X" << o.n << "]] on X1..X" << o.i << ", window " << o.window << "\n";
    os << result.table.dims.size() << " multidegrees, " << result.table.nonzero_top_degrees()
       << " with dim H^" << o.i << " = 1\n";
    os << "realization " << (result.pass ? "pass" : "FAIL") << "\n";
    emit(o.session, os.str());
  }
  return result.pass ? kExitOk : kExitFailed;
}

int cmd_indep(const Options& o, const Field& field) {
  if (o.r_list.empty()) throw UsageError("at least one --r is required");
  const TruncationBox box = TruncationBox::uniform(2, o.session.trunc);
  std::vector<Element> list;
  for (const auto& text : o.r_list) list.push_back(read_element(text, field, ModuleShape::ring(2), box, xy_names()));
  const auto cert = independence_certificate(list, o.lmax);
  if (o.session.format == "doc") {
    emit(o.session, write_document(certificate_to_json(cert)));
  } else {
    std::ostringstream os;
    os << "status: " << to_string(cert.status) << "\n";
    if (!cert.reason.empty()) os << "reason: " << cert.reason << "\n";
    os << "m0 = " << cert.m0 << ", Lmax = " << cert.lmax << "\n";
    if (cert.decomposition) {
      os << "r_m0 = X^" << cert.decomposition->a + 1 << "*(" << serialize_element(cert.decomposition->h, xy_names())
         << ") + X^" << cert.decomposition->a << "*(" << serialize_element(cert.decomposition->g, xy_names())
         << "), b = " << cert.decomposition->b << "\n";
    }
    if (cert.fitted) {
      os << "tail l in [" << cert.tail_start << ", " << cert.lmax << "]: delta(l) = -(l-" << cert.fitted->a
         << ")^" << cert.m0 << " + " << cert.fitted->b << "\n";
    }
    if (cert.required_lmax) os << "required Lmax: " << *cert.required_lmax << "\n";
    os << "combination nonzero: " << (cert.nonzero ? "yes" : "no") << "\n";
    emit(o.session, os.str());
  }
  switch (cert.status) {
    case IndependenceCertificate::Status::certified: return kExitOk;
    case IndependenceCertificate::Status::inconclusive: return kExitInconclusive;
    case IndependenceCertificate::Status::failed: return kExitFailed;
  }
  return kExitFailed;
}

int cmd_check(const Options& o, const Field& field) {
  const auto& names = check_suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  const CheckReport report = run_check_suite(o.suite, o.session.seed, field);
  emit(o.session, o.session.format == "doc" ? write_document(report.json()) : report.text());
  return report.passed() ? kExitOk : kExitFailed;
}

int cmd_pair(const Options& o, const Field& field) {
  if (o.i > o.n) throw UsageError("need i <= n");
  const TruncationBox box = TruncationBox::uniform(o.n, o.session.trunc);
  if (o.d_expr.empty() != o.m_expr.empty()) throw UsageError("--d and --m go together");
  if (!o.d_expr.empty()) {
    const auto names = names_for(o.n);
    const Element d = read_element(o.d_expr, field, ModuleShape::dual_local_cohomology(o.n, o.i), box, names);
    const Element m = read_element(o.m_expr, field, ModuleShape::local_cohomology(o.n, o.i), box, names);
    const Element product = matlis_pair(d, m);
    std::string text = element_output(o.session, product, names);
    if (o.session.format != "doc") text += "socle coefficient: " + socle_functional(d, m).to_string() + "\n";
    emit(o.session, text);
    return kExitOk;
  }
  const auto report = pairing_perfection_check(field, o.n, o.i, box);
  if (o.session.format == "doc") {
    emit(o.session, write_document(pairing_to_json(report, field)));
  } else {
    std::ostringstream os;
    os << report.dual_count << " x " << report.primal_count << " socle pairing matrix, "
       << report.entries.size() << " nonzero products\n";
    os << "perfection " << (report.pass ? "pass" : "FAIL") << "\n";
    emit(o.session, os.str());
  }
  return report.pass ? kExitOk : kExitFailed;
}

int cmd_delta(const Options& o, const Field& field) {
  Element d = [&] {
    if (o.family != 0) return make_d(field, o.family, o.lmax);
    if (o.expr.empty()) throw UsageError("give --family or --expr");
    return read_element(o.expr, field, dual_shape_xy(), TruncationBox::uniform(2, o.session.trunc), xy_names());
  }();
  const DeltaSequence seq = delta(d, 0, o.lmax);
  if (o.session.format == "doc") {
    Json doc = document_header("delta_sequence");
    doc["delta"] = Json::object();
    doc["delta"]["first"] = seq.first;
    Json entries = Json::array();
    for (const auto& e : seq.entries) entries.push_back(e ? Json(*e) : Json(nullptr));
    doc["delta"]["entries"] = entries;
    emit(o.session, write_document(doc));
  } else {
    std::ostringstream os;
    for (std::int64_t l = seq.first; l <= seq.last(); ++l) {
      os << "l=" << l << ": ";
      if (seq.at(l)) {
        os << *seq.at(l);
      } else {
        os << "zero coefficient";
      }
      os << "\n";
    }
    emit(o.session, os.str());
  }
  return kExitOk;
}

int cmd_dfam(const Options& o, const Field& field) {
  if (o.family == 0) throw UsageError("--family must be at least 1");
  emit(o.session, element_output(o.session, make_d(field, o.family, o.lmax), xy_names()));
  return kExitOk;
}

int cmd_act(const Options& o, const Field& field) {
  const ModuleShape shape = parse_shape(o.shape);
  const std::size_t n = shape.size();
  const TruncationBox box = TruncationBox::uniform(n, o.session.trunc);
  const auto names = names_for(n);
  const Element r = read_element(o.r_expr, field, ModuleShape::ring(n), box, names);
  const Element m = read_element(o.m_expr, field, shape, box, names);
  emit(o.session, element_output(o.session, ring_act(r, m), names));
  return kExitOk;
}

int cmd_derive(const Options& o, const Field& field) {
  const ModuleShape shape = parse_shape(o.shape);
  const std::size_t n = shape.size();
  if (o.var < 1 || o.var > n) throw UsageError("--var must lie in 1..n");
  const auto names = names_for(n);
  const Element m = read_element(o.m_expr, field, shape, TruncationBox::uniform(n, o.session.trunc), names);
  emit(o.session, element_output(o.session, derivation_act(o.var - 1, m), names));
  return kExitOk;
}

int cmd_gamma(const Options& o, const Field& field) {
  const ModuleShape shape = parse_shape(o.shape);
  std::vector<std::size_t> gens;
  for (auto g : o.gens) {
    if (g < 1 || g > shape.size()) throw UsageError("generator indices must lie in 1..n");
    gens.push_back(g - 1);
  }
  if (gens.empty()) throw UsageError("--gens is required");
  const GammaResult result = gamma_of_shape(shape, gens);
  std::string text;
  std::optional<bool> torsion;
  if (!o.m_expr.empty()) {
    const Element m =
        read_element(o.m_expr, field, shape, TruncationBox::uniform(shape.size(), o.session.trunc), names_for(shape.size()));
    torsion = is_torsion(m, gens);
  }
  if (o.session.format == "doc") {
    Json doc = document_header("gamma");
    doc["shape"] = shape.code();
    Json gj = Json::array();
    for (auto g : gens) gj.push_back(g + 1);
    doc["gens"] = gj;
    doc["gamma"] = to_string(result);
    doc["element_is_torsion"] = torsion ? Json(*torsion) : Json(nullptr);
    text = write_document(doc);
  } else {
    text = std::string("gamma: ") + to_string(result) + "\n";
    if (torsion) text += std::string("element is torsion: ") + (*torsion ? "yes" : "no") + "\n";
  }
  emit(o.session, text);
  return kExitOk;
}

int cmd_regular(const Options& o, const Field& field) {
  if (o.i < 1 || o.i > o.n) throw UsageError("need 1 <= i <= n");
  const auto report = regular_on_dual_check(field, o.n, o.i, TruncationBox::uniform(o.n, o.session.trunc));
  if (o.session.format == "doc") {
    emit(o.session, write_document(regularity_to_json(report)));
  } else {
    std::ostringstream os;
    for (const auto& s : report.steps) {
      os << "X" << s.variable + 1 << ": " << s.domain_size << " monomials, kernel dimension " << s.kernel_dim
         << "\n";
    }
    os << "quotient shape " << report.quotient_shape.code() << " with " << report.quotient_size
       << " monomials, injective hull: " << (report.quotient_is_hull ? "yes" : "no") << "\n";
    os << "regular sequence " << (report.pass ? "pass" : "FAIL") << "\n";
    emit(o.session, os.str());
  }
  return report.pass ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"loccoh: local cohomology, Matlis duals and independence certificates"};
  app.set_config("--config", "", "configuration file (TOML or INI)")->envname("LOCCOH_CONFIG");
  app.require_subcommand(1);
  Options o;

  auto* cohomology = app.add_subcommand("cohomology", "Cech cohomology table and realization check");
  cohomology->add_option("--n", o.n, "number of variables")->required();
  cohomology->add_option("--i", o.i, "cohomological index")->required();
  cohomology->add_option("--window", o.window, "multidegree window |a_j| <= W")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* indep = app.add_subcommand("indep", "independence certificate for sum r_j d_j");
  indep->add_option("--r", o.r_list, "coefficient r_j in k[[X,Y]] (repeat, in order)")->required();
  indep->add_option("--lmax", o.lmax, "X-degree window")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* check = app.add_subcommand("check", "run a bundled invariant suite");
  check->add_option("--suite", o.suite, "algebra | cech | duality | independence | io | all")->capture_default_str();

  auto* pair = app.add_subcommand("pair", "Matlis pairing, or the perfection check over the box");
  pair->add_option("--n", o.n, "number of variables")->capture_default_str();
  pair->add_option("--i", o.i, "cohomological index")->capture_default_str();
  pair->add_option("--d", o.d_expr, "element of D(H^i_I(R))");
  pair->add_option("--m", o.m_expr, "element of H^i_I(R)");

  auto* delta_cmd = app.add_subcommand("delta", "minimal Y-exponents per X-degree");
  delta_cmd->add_option("--family", o.family, "use d_n for this n");
  delta_cmd->add_option("--expr", o.expr, "element of k[Y^-1][[X]]");
  delta_cmd->add_option("--lmax", o.lmax, "last X-degree")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* dfam = app.add_subcommand("dfam", "the element d_n truncated at X^Lmax");
  dfam->add_option("--family", o.family, "n")->required();
  dfam->add_option("--lmax", o.lmax, "last X-degree")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* act = app.add_subcommand("act", "power-series action r * m");
  act->add_option("--shape", o.shape, "roles, e.g. SI")->required();
  act->add_option("--r", o.r_expr, "element of the power-series ring")->required();
  act->add_option("--m", o.m_expr, "module element")->required();

  auto* derive = app.add_subcommand("derive", "partial derivative of a module element");
  derive->add_option("--shape", o.shape, "roles, e.g. SI")->required();
  derive->add_option("--var", o.var, "1-based variable index")->required();
  derive->add_option("--m", o.m_expr, "module element")->required();

  auto* gamma = app.add_subcommand("gamma", "torsion functor of a shaped module");
  gamma->add_option("--shape", o.shape, "roles, e.g. SI")->required();
  gamma->add_option("--gens", o.gens, "1-based generator indices")->delimiter(',')->required();
  gamma->add_option("--m", o.m_expr, "optional element for an is_torsion cross-check");

  auto* regular = app.add_subcommand("regular", "regular-sequence check on D(H^i_I(R))");
  regular->add_option("--n", o.n, "number of variables")->required();
  regular->add_option("--i", o.i, "cohomological index")->required();

  for (auto* sub : {cohomology, indep, check, pair, delta_cmd, dfam, act, derive, gamma, regular}) {
    add_common(sub, o.session);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Field field = Field::parse(o.session.field);
    if (cohomology->parsed()) return cmd_cohomology(o);
    if (indep->parsed()) return cmd_indep(o, field);
    if (check->parsed()) return cmd_check(o, field);
    if (pair->parsed()) return cmd_pair(o, field);
    if (delta_cmd->parsed()) return cmd_delta(o, field);
    if (dfam->parsed()) return cmd_dfam(o, field);
    if (act->parsed()) return cmd_act(o, field);
    if (derive->parsed()) return cmd_derive(o, field);
    if (gamma->parsed()) return cmd_gamma(o, field);
    if (regular->parsed()) return cmd_regular(o, field);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
