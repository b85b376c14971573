#include <random>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "localprod/serialize.hpp"
#include "oracles.hpp"

using namespace localprod;

namespace {

void expect_field_error(const Json& j, const std::string& field) {
  try {
    parse_instance_document(j);
    ADD_FAILURE() << "accepted " << j.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("field \"" + field + "\""), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(InstanceDocument, ParsesMinimal) {
  const auto doc = parse_instance_document(Json::parse(R"({"a":[1,1],"b":[2,3],"k":4,"sheet":"log"})"));
  EXPECT_EQ(doc.a, (std::vector<double>{1, 1}));
  EXPECT_EQ(doc.k, 4);
  EXPECT_EQ(doc.sheet, "log");
  EXPECT_EQ(doc.pairing, "dot");
  EXPECT_FALSE(doc.quadrature);
  EXPECT_EQ(quadrature_of(doc), QuadratureConfig::defaults_for(2));
  const LocalProductInstance inst = local_product_instance_of(doc);
  EXPECT_EQ(inst.sheet, Sheet::log());
}

TEST(InstanceDocument, ValidationNamesTheField) {
  expect_field_error(Json::parse(R"({"b":[1]})"), "a");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1,2]})"), "b");
  expect_field_error(Json::parse(R"({"a":["x"],"b":[1]})"), "a[0]");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"k":0})"), "k");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"k":1.5})"), "k");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"sheet":"sin"})"), "sheet");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"pairing":"symplectic2d"})"), "pairing");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"pairing":"bilinear"})"), "pairing_matrix");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"colour":1})"), "colour");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"quadrature":{"method":"simpson"}})"), "quadrature.method");
  expect_field_error(Json::parse(R"({"a":[1],"b":[1],"quadrature":{"nodes":1}})"), "quadrature.nodes");
  EXPECT_ERROR_KIND(parse_instance_document(Json::array()), ErrorKind::ValidationError);
}

TEST(InstanceDocument, EvaluationNeedsKAndSheet) {
  const auto doc = parse_instance_document(Json::parse(R"({"a":[1],"b":[2],"s":1})"));
  EXPECT_ERROR_KIND(local_product_instance_of(doc), ErrorKind::ValidationError);
}

TEST(InstanceDocument, BilinearPairing) {
  const auto doc = parse_instance_document(
      Json::parse(R"({"a":[1,0],"b":[0,1],"k":4,"sheet":"id","pairing":"bilinear","pairing_matrix":[[0,1],[-1,0]]})"));
  EXPECT_EQ(pairing_eval(pairing_of(doc), RealVector(doc.a), RealVector(doc.b)), 1.0);
}

TEST(QuadratureJson, RoundTrip) {
  const QuadratureConfig mc{.method = MonteCarlo{.samples = 12345, .seed = 0xFFFFFFFFFFFFFFFFull}, .max_levels = 3,
                            .rel_tol = 1e-5};
  EXPECT_EQ(parse_quadrature_config(to_json(mc), 2), mc);
  const QuadratureConfig gl{.method = GaussLegendre{24}, .max_levels = 4, .rel_tol = 3e-9};
  EXPECT_EQ(parse_quadrature_config(to_json(gl), 2), gl);
}

TEST(SearchConfigJson, RoundTripAndDefaults) {
  SearchConfig sc;
  sc.theorem = TheoremId::App3;
  sc.n_range = {1, 3};
  sc.pairing_range = {1.1, 2.5};
  sc.samples = 77;
  sc.seed = 99;
  EXPECT_EQ(parse_search_config(to_json(sc)), sc);
  EXPECT_EQ(parse_search_config(Json::object()), SearchConfig{});
  std::optional<QuadratureConfig> q;
  parse_search_config(Json::parse(R"({"quadrature":{"method":"mc","samples":500}})"), &q);
  ASSERT_TRUE(q);
  EXPECT_FALSE(q->is_gauss_legendre());
  EXPECT_ERROR_KIND(parse_search_config(Json::parse(R"({"theorem":"app9"})")), ErrorKind::ValidationError);
  EXPECT_ERROR_KIND(parse_search_config(Json::parse(R"({"n_range":[1]})")), ErrorKind::ValidationError);
}

TEST(ViolationRecordJson, RoundTripIsExact) {
  const ViolationRecord r{.theorem = TheoremId::App2,
                          .a = {0.1 + 0.2, 1.0 / 3.0},
                          .b = {2.0 / 7.0, 1e-300},
                          .s = 2,
                          .k = 8,
                          .lhs = 0.6939292616106905,
                          .rhs = 1.0223472626906923e-4,
                          .margin = -0.69,
                          .lhs_error = 1e-17,
                          .sample_index = 4242,
                          .refined = true};
  const Json j = to_json(r);
  EXPECT_EQ(j["type"], "violation_record");
  EXPECT_EQ(parse_violation_record(Json::parse(dump_line(j))), r);
}

TEST(ReportJson, Fields) {
  const Json j = to_json(thm_app2_report({1}, {2}, 1, {}));
  EXPECT_EQ(j["type"], "theorem_report");
  EXPECT_EQ(j["verdict"], "Holds");
  EXPECT_EQ(j["k"], 4);
  EXPECT_EQ(to_json(HuntSummary{.samples = 3})["type"], "hunt_summary");
}

TEST(SerializeProperties, InstanceDocumentRoundTrip) {
  std::mt19937_64 rng(301);
  const char* sheets[] = {"const", "id", "recip", "log", "reciplog", "abs"};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    InstanceDocument doc;
    doc.a = oracle::draw(rng, n, -1e3, 1e3);
    doc.b = oracle::draw(rng, n, -1e-3, 1e-3);
    if (trial % 2 == 0) {
      doc.k = 1 + trial % 11;
      doc.sheet = sheets[trial % 6];
    } else {
      doc.s = trial % 5;
    }
    if (trial % 3 == 0) {
      doc.pairing = "bilinear";
      doc.pairing_matrix = std::vector<std::vector<double>>(n, oracle::draw(rng, n, -1, 1));
    }
    if (trial % 4 == 1) doc.quadrature = QuadratureConfig{.method = MonteCarlo{.samples = 1000 + trial, .seed = rng()}};
    const InstanceDocument back = parse_instance_document(Json::parse(dump_line(to_json(doc))));
    EXPECT_EQ(back, doc) << dump_line(to_json(doc));
  }
}
