#ifndef LOCCOH_DOCUMENT_HPP
#define LOCCOH_DOCUMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loccoh/cech.hpp"
#include "loccoh/duality.hpp"
#include "loccoh/expr.hpp"
#include "loccoh/independence.hpp"

// Machine-readable documents. Every document is a JSON object whose first
// keys are {"schema": "loccoh", "version": 1, "kind": ...}; key order is
// fixed and no floating point is emitted, so output is byte-stable.

namespace loccoh {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaName = "loccoh";
inline constexpr int kSchemaVersion = 1;

inline Json document_header(std::string_view kind) {
  Json doc;
  doc["schema"] = kSchemaName;
  doc["version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

inline std::string write_document(const Json& doc) { return doc.dump(2) + "\n"; }

/// Parses and validates the header. `expected_kind` empty accepts any kind.
inline Json read_document(std::string_view text, std::string_view expected_kind = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kSchemaName) {
    throw DocumentError("not a loccoh document");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != kSchemaVersion) {
    throw DocumentError("unsupported schema version");
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw DocumentError("document has no kind");
  if (!expected_kind.empty() && doc["kind"] != expected_kind) {
    throw DocumentError("expected a '" + std::string(expected_kind) + "' document, got '" +
                        doc["kind"].get<std::string>() + "'");
  }
  return doc;
}

namespace detail {

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DocumentError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw DocumentError(std::string("bad field '") + key + "': " + e.what());
  }
}

inline Json delta_to_json(const DeltaSequence& seq) {
  Json j;
  j["first"] = seq.first;
  Json entries = Json::array();
  for (const auto& e : seq.entries) entries.push_back(e ? Json(*e) : Json(nullptr));
  j["entries"] = entries;
  return j;
}

inline DeltaSequence delta_from_json(const Json& j) {
  DeltaSequence seq;
  seq.first = get_field<std::int64_t>(j, "first");
  const Json& entries = j.at("entries");
  if (!entries.is_array()) throw DocumentError("delta entries must be an array");
  for (const auto& e : entries) {
    if (e.is_null()) {
      seq.entries.push_back(std::nullopt);
    } else if (e.is_number_integer()) {
      seq.entries.push_back(e.get<std::int64_t>());
    } else {
      throw DocumentError("delta entry must be an integer or null");
    }
  }
  return seq;
}

} // namespace detail

// --- Element ---------------------------------------------------------------

inline Json element_to_json(const Element& e, const VariableNames& names) {
  Json j;
  j["field"] = e.field().descriptor();
  j["variables"] = names;
  Json roles = Json::array();
  for (Role r : e.shape().roles()) roles.push_back(to_string(r));
  j["roles"] = roles;
  j["box"] = e.box().bounds();
  Json terms = Json::array();
  for (const auto& [exp, c] : e.terms()) {
    Json t;
    t["exponent"] = exp;
    t["coefficient"] = c.to_string();
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["exact"] = e.exact();
  return j;
}

inline Json element_to_json(const Element& e) { return element_to_json(e, default_names(e.num_vars())); }

inline Element element_from_json(const Json& j, VariableNames* names_out = nullptr) {
  try {
    const Field field = Field::parse(detail::get_field<std::string>(j, "field"));
    const auto names = detail::get_field<VariableNames>(j, "variables");
    const auto role_names = detail::get_field<std::vector<std::string>>(j, "roles");
    const auto bounds = detail::get_field<std::vector<std::int64_t>>(j, "box");
    if (names.size() != role_names.size() || names.size() != bounds.size()) {
      throw DocumentError("variables, roles and box disagree in length");
    }
    std::vector<Role> roles;
    for (const auto& r : role_names) {
      if (r == "series") {
        roles.push_back(Role::series);
      } else if (r == "inverse") {
        roles.push_back(Role::inverse);
      } else {
        throw DocumentError("unknown role '" + r + "'");
      }
    }
    Element e(field, ModuleShape(std::move(roles)), TruncationBox(bounds));
    const Json& terms = j.at("terms");
    if (!terms.is_array()) throw DocumentError("terms must be an array");
    std::optional<ExponentVector> previous;
    for (const auto& t : terms) {
      const auto exp = detail::get_field<ExponentVector>(t, "exponent");
      const Scalar c = Scalar::parse(field, detail::get_field<std::string>(t, "coefficient"));
      if (previous && !(*previous < exp)) throw DocumentError("terms are not in strictly increasing order");
      if (c.is_zero()) throw DocumentError("zero coefficient stored");
      e.add_term(exp, c);
      previous = exp;
    }
    e.set_exact(detail::get_field<bool>(j, "exact"));
    if (names_out) *names_out = names;
    return e;
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& err) {
    throw DocumentError(std::string("invalid element: ") + err.what());
  } catch (const Json::exception& err) {
    throw DocumentError(std::string("invalid element: ") + err.what());
  }
}

inline std::string write_element_document(const Element& e, const VariableNames& names) {
  Json doc = document_header("element");
  doc["element"] = element_to_json(e, names);
  doc["text"] = serialize_element(e, names);
  return write_document(doc);
}

inline Element read_element_document(std::string_view text) {
  return element_from_json(read_document(text, "element").at("element"));
}

// --- Cohomology table ------------------------------------------------------

inline Json realization_to_json(const RealizationResult& result) {
  Json doc = document_header("cohomology_table");
  const CohomologyTable& t = result.table;
  doc["n"] = t.n;
  doc["i"] = t.i;
  doc["window"] = t.window.bounds();
  Json entries = Json::array();
  for (const auto& [degree, dims] : t.dims) {
    Json e;
    e["degree"] = degree;
    e["dims"] = dims;
    entries.push_back(e);
  }
  doc["entries"] = entries;
  doc["nonzero_top_degrees"] = t.nonzero_top_degrees();
  doc["first_failure"] = result.first_failure ? Json(*result.first_failure) : Json(nullptr);
  doc["verdict"] = result.pass ? "pass" : "fail";
  return doc;
}

inline RealizationResult realization_from_json(const Json& doc) {
  try {
    RealizationResult r;
    r.table.n = detail::get_field<std::size_t>(doc, "n");
    r.table.i = detail::get_field<std::size_t>(doc, "i");
    r.table.window = TruncationBox(detail::get_field<std::vector<std::int64_t>>(doc, "window"));
    for (const auto& e : doc.at("entries")) {
      r.table.dims.emplace(detail::get_field<ExponentVector>(e, "degree"),
                           detail::get_field<std::vector<std::size_t>>(e, "dims"));
    }
    if (!doc.at("first_failure").is_null()) r.first_failure = doc.at("first_failure").get<ExponentVector>();
    r.pass = detail::get_field<std::string>(doc, "verdict") == "pass";
    return r;
  } catch (const Json::exception& e) {
    throw DocumentError(std::string("invalid cohomology table: ") + e.what());
  }
}

// --- Pairing and regularity reports ------------------------------------------

inline Json pairing_to_json(const PairingReport& report, const Field& field) {
  Json doc = document_header("pairing_report");
  doc["field"] = field.descriptor();
  doc["n"] = report.n;
  doc["i"] = report.i;
  doc["box"] = report.box.bounds();
  doc["dual_count"] = report.dual_count;
  doc["primal_count"] = report.primal_count;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json j;
    j["dual"] = e.dual;
    j["primal"] = e.primal;
    j["product"] = e.product;
    j["coefficient"] = e.coefficient.to_string();
    entries.push_back(j);
  }
  doc["entries"] = entries;
  doc["permutation"] = report.permutation;
  doc["verdict"] = report.pass ? "pass" : "fail";
  return doc;
}

inline PairingReport pairing_from_json(const Json& doc) {
  try {
    const Field field = Field::parse(detail::get_field<std::string>(doc, "field"));
    PairingReport r;
    r.n = detail::get_field<std::size_t>(doc, "n");
    r.i = detail::get_field<std::size_t>(doc, "i");
    r.box = TruncationBox(detail::get_field<std::vector<std::int64_t>>(doc, "box"));
    r.dual_count = detail::get_field<std::size_t>(doc, "dual_count");
    r.primal_count = detail::get_field<std::size_t>(doc, "primal_count");
    for (const auto& e : doc.at("entries")) {
      r.entries.push_back({detail::get_field<ExponentVector>(e, "dual"),
                           detail::get_field<ExponentVector>(e, "primal"),
                           detail::get_field<ExponentVector>(e, "product"),
                           Scalar::parse(field, detail::get_field<std::string>(e, "coefficient"))});
    }
    r.permutation = detail::get_field<std::vector<std::int64_t>>(doc, "permutation");
    r.pass = detail::get_field<std::string>(doc, "verdict") == "pass";
    return r;
  } catch (const Json::exception& e) {
    throw DocumentError(std::string("invalid pairing report: ") + e.what());
  } catch (const PreconditionError& e) {
    throw DocumentError(std::string("invalid pairing report: ") + e.what());
  }
}

inline Json regularity_to_json(const RegularityReport& report) {
  Json doc = document_header("regularity_report");
  doc["n"] = report.n;
  doc["i"] = report.i;
  doc["box"] = report.box.bounds();
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json j;
    j["variable"] = s.variable;
    j["domain_size"] = s.domain_size;
    j["image_rank"] = s.image_rank;
    j["kernel_dim"] = s.kernel_dim;
    steps.push_back(j);
  }
  doc["steps"] = steps;
  Json quotient;
  quotient["shape"] = report.quotient_shape.code();
  quotient["size"] = report.quotient_size;
  quotient["is_injective_hull"] = report.quotient_is_hull;
  doc["quotient"] = quotient;
  doc["verdict"] = report.pass ? "pass" : "fail";
  return doc;
}

inline RegularityReport regularity_from_json(const Json& doc) {
  try {
    RegularityReport r;
    r.n = detail::get_field<std::size_t>(doc, "n");
    r.i = detail::get_field<std::size_t>(doc, "i");
    r.box = TruncationBox(detail::get_field<std::vector<std::int64_t>>(doc, "box"));
    for (const auto& s : doc.at("steps")) {
      r.steps.push_back({detail::get_field<std::size_t>(s, "variable"),
                         detail::get_field<std::size_t>(s, "domain_size"),
                         detail::get_field<std::size_t>(s, "image_rank"),
                         detail::get_field<std::size_t>(s, "kernel_dim")});
    }
    const Json& q = doc.at("quotient");
    std::vector<Role> roles;
    for (char c : detail::get_field<std::string>(q, "shape")) {
      if (c != 'S' && c != 'I') throw DocumentError("bad shape code");
      roles.push_back(c == 'S' ? Role::series : Role::inverse);
    }
    r.quotient_shape = ModuleShape(std::move(roles));
    r.quotient_size = detail::get_field<std::size_t>(q, "size");
    r.quotient_is_hull = detail::get_field<bool>(q, "is_injective_hull");
    r.pass = detail::get_field<std::string>(doc, "verdict") == "pass";
    return r;
  } catch (const Json::exception& e) {
    throw DocumentError(std::string("invalid regularity report: ") + e.what());
  }
}

// --- Independence certificate ----------------------------------------------

inline Json certificate_to_json(const IndependenceCertificate& cert) {
  Json doc = document_header("independence_certificate");
  doc["status"] = to_string(cert.status);
  doc["reason"] = cert.reason;
  doc["m0"] = cert.m0;
  doc["lmax"] = cert.lmax;
  doc["box"] = cert.box.bounds();
  if (cert.decomposition) {
    Json dec;
    dec["a"] = cert.decomposition->a;
    dec["b"] = cert.decomposition->b;
    dec["h"] = element_to_json(cert.decomposition->h, xy_names());
    dec["g"] = element_to_json(cert.decomposition->g, xy_names());
    dec["h_text"] = serialize_element(cert.decomposition->h, xy_names());
    dec["g_text"] = serialize_element(cert.decomposition->g, xy_names());
    doc["decomposition"] = dec;
  } else {
    doc["decomposition"] = nullptr;
  }
  doc["tail_start"] = cert.tail_start;
  if (cert.fitted) {
    Json fit;
    fit["a"] = cert.fitted->a;
    fit["b"] = cert.fitted->b;
    doc["fitted"] = fit;
  } else {
    doc["fitted"] = nullptr;
  }
  doc["fit_count"] = cert.fit_count;
  doc["nonzero"] = cert.nonzero;
  doc["required_lmax"] = cert.required_lmax ? Json(*cert.required_lmax) : Json(nullptr);
  doc["delta"] = detail::delta_to_json(cert.delta);
  return doc;
}

inline IndependenceCertificate certificate_from_json(const Json& doc) {
  try {
    IndependenceCertificate c;
    const auto status = detail::get_field<std::string>(doc, "status");
    if (status == "certified") {
      c.status = IndependenceCertificate::Status::certified;
    } else if (status == "inconclusive") {
      c.status = IndependenceCertificate::Status::inconclusive;
    } else if (status == "failed") {
      c.status = IndependenceCertificate::Status::failed;
    } else {
      throw DocumentError("unknown certificate status '" + status + "'");
    }
    c.reason = detail::get_field<std::string>(doc, "reason");
    c.m0 = detail::get_field<std::size_t>(doc, "m0");
    c.lmax = detail::get_field<std::int64_t>(doc, "lmax");
    c.box = TruncationBox(detail::get_field<std::vector<std::int64_t>>(doc, "box"));
    if (!doc.at("decomposition").is_null()) {
      const Json& dec = doc.at("decomposition");
      c.decomposition = Decomposition{detail::get_field<std::int64_t>(dec, "a"),
                                      detail::get_field<std::int64_t>(dec, "b"), element_from_json(dec.at("h")),
                                      element_from_json(dec.at("g"))};
    }
    c.tail_start = detail::get_field<std::int64_t>(doc, "tail_start");
    if (!doc.at("fitted").is_null()) {
      c.fitted = ShiftFit{detail::get_field<std::int64_t>(doc.at("fitted"), "a"),
                          detail::get_field<std::int64_t>(doc.at("fitted"), "b")};
    }
    c.fit_count = detail::get_field<std::size_t>(doc, "fit_count");
    c.nonzero = detail::get_field<bool>(doc, "nonzero");
    if (!doc.at("required_lmax").is_null()) c.required_lmax = doc.at("required_lmax").get<std::int64_t>();
    c.delta = detail::delta_from_json(doc.at("delta"));
    return c;
  } catch (const Json::exception& e) {
    throw DocumentError(std::string("invalid certificate: ") + e.what());
  }
}

} // namespace loccoh

#endif
