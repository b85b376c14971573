#include "localprod/serialize.hpp"

#include <cmath>
#include <initializer_list>
#include <string_view>

#include "localprod/error.hpp"

namespace localprod {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view problem) {
  throw Error(ErrorKind::ValidationError, "field \"" + std::string(field) + "\": " + std::string(problem));
}

void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) fail(what, "must be a JSON object");
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known, std::string_view prefix = "") {
  for (const auto& item : j.items()) {
    bool found = false;
    for (auto k : known) found = found || item.key() == k;
    if (!found) fail(std::string(prefix) + item.key(), "unknown field");
  }
}

double get_real(const Json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

std::int64_t get_int(const Json& j, std::string_view field) {
  if (!j.is_number_integer()) fail(field, "must be an integer");
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(field, "is out of range");
    return static_cast<std::int64_t>(u);
  }
  return j.get<std::int64_t>();
}

int get_small_int(const Json& j, std::string_view field) {
  const std::int64_t v = get_int(j, field);
  if (v < INT32_MIN || v > INT32_MAX) fail(field, "is out of range");
  return static_cast<int>(v);
}

std::uint64_t get_seed(const Json& j, std::string_view field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(field, "must be a nonnegative 64-bit integer");
}

std::string get_string(const Json& j, std::string_view field) {
  if (!j.is_string()) fail(field, "must be a string");
  return j.get<std::string>();
}

std::vector<double> get_vector(const Json& j, std::string_view field, bool allow_empty = false) {
  if (!j.is_array()) fail(field, "must be an array of numbers");
  if (j.empty() && !allow_empty) fail(field, "must not be empty");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_real(j[i], std::string(field) + "[" + std::to_string(i) + "]"));
  return out;
}

template <class Range, class Get>
Range get_range(const Json& j, std::string_view field, Get get) {
  if (!j.is_array() || j.size() != 2) fail(field, "must be a two-element array [lo, hi]");
  return Range{get(j[0], std::string(field) + "[0]"), get(j[1], std::string(field) + "[1]")};
}

Json vector_json(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

}  // namespace

QuadratureConfig parse_quadrature_config(const Json& j, std::size_t n) {
  require_object(j, "quadrature");
  reject_unknown(j, {"method", "nodes", "samples", "seed", "rel_tol", "max_levels"}, "quadrature.");
  QuadratureConfig cfg = QuadratureConfig::defaults_for(n);
  if (j.contains("method")) {
    const std::string method = get_string(j["method"], "quadrature.method");
    if (method == "gl") {
      cfg.method = GaussLegendre{};
    } else if (method == "mc") {
      cfg.method = MonteCarlo{};
    } else {
      fail("quadrature.method", "must be \"gl\" or \"mc\"");
    }
  }
  if (auto* gl = std::get_if<GaussLegendre>(&cfg.method)) {
    if (j.contains("nodes")) gl->nodes_per_dim = get_small_int(j["nodes"], "quadrature.nodes");
    if (gl->nodes_per_dim < 2) fail("quadrature.nodes", "must be >= 2");
  } else {
    auto& mc = std::get<MonteCarlo>(cfg.method);
    if (j.contains("samples")) mc.samples = get_int(j["samples"], "quadrature.samples");
    if (j.contains("seed")) mc.seed = get_seed(j["seed"], "quadrature.seed");
    if (mc.samples < 100) fail("quadrature.samples", "must be >= 100");
  }
  if (j.contains("rel_tol")) cfg.rel_tol = get_real(j["rel_tol"], "quadrature.rel_tol");
  if (!(cfg.rel_tol > 0.0)) fail("quadrature.rel_tol", "must be positive");
  if (j.contains("max_levels")) cfg.max_levels = get_small_int(j["max_levels"], "quadrature.max_levels");
  if (cfg.max_levels < 1) fail("quadrature.max_levels", "must be >= 1");
  return cfg;
}

Json to_json(const QuadratureConfig& cfg) {
  Json j;
  if (const auto* gl = std::get_if<GaussLegendre>(&cfg.method)) {
    j["method"] = "gl";
    j["nodes"] = gl->nodes_per_dim;
  } else {
    const auto& mc = std::get<MonteCarlo>(cfg.method);
    j["method"] = "mc";
    j["samples"] = mc.samples;
    j["seed"] = mc.seed;
  }
  j["rel_tol"] = cfg.rel_tol;
  j["max_levels"] = cfg.max_levels;
  return j;
}

InstanceDocument parse_instance_document(const Json& j) {
  require_object(j, "instance");
  reject_unknown(j, {"a", "b", "s", "k", "sheet", "pairing", "pairing_matrix", "quadrature"});
  if (!j.contains("a")) fail("a", "is required");
  if (!j.contains("b")) fail("b", "is required");
  InstanceDocument doc;
  doc.a = get_vector(j["a"], "a");
  doc.b = get_vector(j["b"], "b");
  if (doc.a.size() != doc.b.size()) fail("b", "must have the same length as a");
  if (doc.a.size() > kMaxDim) fail("a", "has more than 12 components");
  if (j.contains("s")) doc.s = get_small_int(j["s"], "s");
  if (j.contains("k")) {
    doc.k = get_small_int(j["k"], "k");
    if (*doc.k < 1) fail("k", "must be >= 1");
  }
  if (j.contains("sheet")) {
    doc.sheet = get_string(j["sheet"], "sheet");
    try {
      (void)Sheet::from_name(*doc.sheet);
    } catch (const Error&) {
      fail("sheet", "must be one of const, id, recip, log, reciplog, abs");
    }
  }
  if (j.contains("pairing")) doc.pairing = get_string(j["pairing"], "pairing");
  if (doc.pairing == "symplectic2d") {
    if (doc.a.size() != 2) fail("pairing", "symplectic2d requires 2-component vectors");
  } else if (doc.pairing == "bilinear") {
    if (!j.contains("pairing_matrix")) fail("pairing_matrix", "is required for the bilinear pairing");
  } else if (doc.pairing != "dot") {
    fail("pairing", "must be \"dot\", \"symplectic2d\" or \"bilinear\"");
  }
  if (j.contains("pairing_matrix")) {
    if (doc.pairing != "bilinear") fail("pairing_matrix", "is only allowed with the bilinear pairing");
    const Json& m = j["pairing_matrix"];
    if (!m.is_array() || m.size() != doc.a.size()) fail("pairing_matrix", "must be an n x n array");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string field = "pairing_matrix[" + std::to_string(i) + "]";
      rows.push_back(get_vector(m[i], field));
      if (rows.back().size() != doc.a.size()) fail(field, "must have n entries");
    }
    doc.pairing_matrix = std::move(rows);
  }
  if (j.contains("quadrature")) {
    doc.quadrature = parse_quadrature_config(j["quadrature"], doc.a.size());
    try {
      doc.quadrature->validate(doc.a.size());
    } catch (const Error& e) {
      fail("quadrature", e.what());
    }
  }
  return doc;
}

Json to_json(const InstanceDocument& doc) {
  Json j;
  j["a"] = vector_json(doc.a);
  j["b"] = vector_json(doc.b);
  if (doc.s) j["s"] = *doc.s;
  if (doc.k) j["k"] = *doc.k;
  if (doc.sheet) j["sheet"] = *doc.sheet;
  j["pairing"] = doc.pairing;
  if (doc.pairing_matrix) {
    Json m = Json::array();
    for (const auto& row : *doc.pairing_matrix) m.push_back(vector_json(row));
    j["pairing_matrix"] = std::move(m);
  }
  if (doc.quadrature) j["quadrature"] = to_json(*doc.quadrature);
  return j;
}

QuadratureConfig quadrature_of(const InstanceDocument& doc) {
  return doc.quadrature ? *doc.quadrature : QuadratureConfig::defaults_for(doc.a.size());
}

Pairing pairing_of(const InstanceDocument& doc) {
  if (doc.pairing == "symplectic2d") return Pairing::symplectic2d();
  if (doc.pairing == "bilinear") {
    const std::size_t n = doc.a.size();
    std::vector<double> flat;
    for (const auto& row : *doc.pairing_matrix) flat.insert(flat.end(), row.begin(), row.end());
    return Pairing::bilinear(n, std::move(flat));
  }
  return Pairing::dot();
}

LocalProductInstance local_product_instance_of(const InstanceDocument& doc) {
  if (!doc.k) fail("k", "is required for local-product evaluation");
  if (!doc.sheet) fail("sheet", "is required for local-product evaluation");
  return LocalProductInstance{.a = RealVector(doc.a),
                              .b = RealVector(doc.b),
                              .k = *doc.k,
                              .sheet = Sheet::from_name(*doc.sheet),
                              .pairing = pairing_of(doc)};
}

SearchConfig parse_search_config(const Json& j, std::optional<QuadratureConfig>* quadrature) {
  require_object(j, "config");
  reject_unknown(j, {"theorem", "n_range", "s_range", "pairing_range", "component_range", "samples", "seed",
                     "max_attempts_per_sample", "quadrature"});
  SearchConfig sc;
  const auto int_get = [](const Json& v, const std::string& f) { return get_small_int(v, f); };
  const auto real_get = [](const Json& v, const std::string& f) { return get_real(v, f); };
  if (j.contains("theorem")) {
    try {
      sc.theorem = theorem_from_name(get_string(j["theorem"], "theorem"));
    } catch (const Error&) {
      fail("theorem", "must be \"app2\" or \"app3\"");
    }
  }
  if (j.contains("n_range")) sc.n_range = get_range<IntRange>(j["n_range"], "n_range", int_get);
  if (j.contains("s_range")) sc.s_range = get_range<IntRange>(j["s_range"], "s_range", int_get);
  if (j.contains("pairing_range")) sc.pairing_range = get_range<RealRange>(j["pairing_range"], "pairing_range", real_get);
  if (j.contains("component_range"))
    sc.component_range = get_range<RealRange>(j["component_range"], "component_range", real_get);
  if (j.contains("samples")) sc.samples = get_int(j["samples"], "samples");
  if (j.contains("seed")) sc.seed = get_seed(j["seed"], "seed");
  if (j.contains("max_attempts_per_sample"))
    sc.max_attempts_per_sample = get_small_int(j["max_attempts_per_sample"], "max_attempts_per_sample");
  if (quadrature != nullptr) {
    if (j.contains("quadrature")) {
      *quadrature = parse_quadrature_config(j["quadrature"], static_cast<std::size_t>(std::max(sc.n_range.hi, 1)));
    } else {
      quadrature->reset();
    }
  }
  return sc;
}

Json to_json(const SearchConfig& sc) {
  Json j;
  j["theorem"] = to_string(sc.theorem);
  j["n_range"] = {sc.n_range.lo, sc.n_range.hi};
  j["s_range"] = {sc.s_range.lo, sc.s_range.hi};
  j["pairing_range"] = {sc.pairing_range.lo, sc.pairing_range.hi};
  j["component_range"] = {sc.component_range.lo, sc.component_range.hi};
  j["samples"] = sc.samples;
  j["seed"] = sc.seed;
  j["max_attempts_per_sample"] = sc.max_attempts_per_sample;
  return j;
}

Json to_json(const IntegrationResult& r) {
  Json j;
  j["re"] = r.value.real();
  j["im"] = r.value.imag();
  j["error_estimate"] = r.error_estimate;
  j["method"] = r.method_used;
  j["evaluations"] = r.evaluations;
  j["budget_exceeded"] = r.budget_exceeded;
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["type"] = "theorem_report";
  j["theorem"] = to_string(r.theorem);
  j["a"] = vector_json(r.a.components());
  j["b"] = vector_json(r.b.components());
  j["s"] = r.s;
  j["k"] = r.k;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["lhs_error"] = r.lhs_error;
  j["margin"] = r.margin;
  j["verdict"] = to_string(r.verdict);
  j["budget_exceeded"] = r.budget_exceeded;
  return j;
}

Json to_json(const ViolationRecord& r) {
  Json j;
  j["type"] = "violation_record";
  j["theorem"] = to_string(r.theorem);
  j["sample_index"] = r.sample_index;
  j["a"] = vector_json(r.a.components());
  j["b"] = vector_json(r.b.components());
  j["s"] = r.s;
  j["k"] = r.k;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["lhs_error"] = r.lhs_error;
  j["refined"] = r.refined;
  return j;
}

ViolationRecord parse_violation_record(const Json& j) {
  require_object(j, "record");
  if (!j.contains("type") || j["type"] != "violation_record") fail("type", "must be \"violation_record\"");
  for (const char* field : {"theorem", "sample_index", "a", "b", "s", "k", "lhs", "rhs", "margin", "lhs_error", "refined"})
    if (!j.contains(field)) fail(field, "is required");
  if (!j["refined"].is_boolean()) fail("refined", "must be a boolean");
  return ViolationRecord{.theorem = theorem_from_name(get_string(j["theorem"], "theorem")),
                         .a = RealVector(get_vector(j["a"], "a")),
                         .b = RealVector(get_vector(j["b"], "b")),
                         .s = get_small_int(j["s"], "s"),
                         .k = get_small_int(j["k"], "k"),
                         .lhs = get_real(j["lhs"], "lhs"),
                         .rhs = get_real(j["rhs"], "rhs"),
                         .margin = get_real(j["margin"], "margin"),
                         .lhs_error = get_real(j["lhs_error"], "lhs_error"),
                         .sample_index = get_int(j["sample_index"], "sample_index"),
                         .refined = j["refined"].get<bool>()};
}

Json to_json(const HuntSummary& s) {
  Json j;
  j["type"] = "hunt_summary";
  j["samples"] = s.samples;
  j["violations"] = s.violations;
  j["inconclusive"] = s.inconclusive;
  j["holds"] = s.holds;
  j["errors"] = s.errors;
  return j;
}

std::string dump_line(const Json& j) { return j.dump(); }

}  // namespace localprod
