#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "localprod/falsify.hpp"
#include "localprod/local_product.hpp"
#include "localprod/quadrature.hpp"
#include "localprod/theorems.hpp"

namespace localprod {

using Json = nlohmann::ordered_json;

/// Instance file accepted by the eval and check commands.
///
///   {"a":[...], "b":[...], "s":int?, "k":int?,
///    "sheet":"const|id|recip|log|reciplog|abs"?,
///    "pairing":"dot|symplectic2d|bilinear"?, "pairing_matrix":[[...]]?,
///    "quadrature":{"method":"gl|mc", "nodes":int?, "samples":int?,
///                  "seed":int?, "rel_tol":real?, "max_levels":int?}?}
struct InstanceDocument {
  std::vector<double> a;
  std::vector<double> b;
  std::optional<int> s;
  std::optional<int> k;
  std::optional<std::string> sheet;
  std::string pairing = "dot";
  std::optional<std::vector<std::vector<double>>> pairing_matrix;
  std::optional<QuadratureConfig> quadrature;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

/// Throws ValidationError naming the offending field.
InstanceDocument parse_instance_document(const Json& j);
Json to_json(const InstanceDocument& doc);

/// Missing fields take the defaults for dimension n.
QuadratureConfig parse_quadrature_config(const Json& j, std::size_t n);
Json to_json(const QuadratureConfig& cfg);

/// Effective quadrature settings of a document.
QuadratureConfig quadrature_of(const InstanceDocument& doc);
Pairing pairing_of(const InstanceDocument& doc);
/// Requires k and sheet.
LocalProductInstance local_product_instance_of(const InstanceDocument& doc);

/// Hunt configuration file; an optional embedded "quadrature" object is
/// returned through `quadrature`.
SearchConfig parse_search_config(const Json& j, std::optional<QuadratureConfig>* quadrature = nullptr);
Json to_json(const SearchConfig& sc);

Json to_json(const IntegrationResult& r);
Json to_json(const TheoremReport& r);
Json to_json(const ViolationRecord& r);
ViolationRecord parse_violation_record(const Json& j);
Json to_json(const HuntSummary& s);

/// One-line JSON text (no trailing newline).
std::string dump_line(const Json& j);

}  // namespace localprod
