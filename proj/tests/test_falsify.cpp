#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "localprod/falsify.hpp"

using namespace localprod;

namespace {

SearchConfig near_orthogonal(TheoremId id, std::int64_t samples) {
  SearchConfig sc;
  sc.theorem = id;
  sc.pairing_range = {0.0, 0.1};
  sc.samples = samples;
  return sc;
}

bool satisfies_hypothesis(TheoremId id, const RealVector& a, const RealVector& b, int s) {
  try {
    if (id == TheoremId::App2) {
      check_app2_hypothesis(a, b, s);
    } else {
      check_app3_hypothesis(a, b, s);
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

TEST(SampleInstance, HitsSmallPairingTarget) {
  const SearchConfig sc = near_orthogonal(TheoremId::App2, 500);
  for (std::int64_t i = 0; i < sc.samples; ++i) {
    const SampledInstance inst = sample_instance(sc, i);
    ASSERT_EQ(inst.a.size(), 2u);
    EXPECT_GT(inst.pairing, 0.0);
    EXPECT_LT(inst.pairing, 0.1);
    EXPECT_EQ(inst.pairing, pairing_eval(Pairing::dot(), inst.a, inst.b));
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_GE(inst.b[j], sc.component_range.lo);
      EXPECT_LE(inst.b[j], sc.component_range.hi);
    }
  }
}

TEST(SampleInstance, App3TargetSatisfiesHypothesis) {
  SearchConfig sc;
  sc.theorem = TheoremId::App3;
  sc.pairing_range = {1.0, std::numbers::e};
  sc.samples = 300;
  for (std::int64_t i = 0; i < sc.samples; ++i) {
    const SampledInstance inst = sample_instance(sc, i);
    EXPECT_TRUE(satisfies_hypothesis(TheoremId::App3, inst.a, inst.b, inst.s)) << i;
    EXPECT_GT(inst.pairing, 1.0);
    EXPECT_LE(inst.pairing, std::numbers::e);
  }
}

TEST(SampleInstance, DeterministicPerIndex) {
  const SearchConfig sc = near_orthogonal(TheoremId::App2, 10);
  const SampledInstance x = sample_instance(sc, 7);
  const SampledInstance y = sample_instance(sc, 7);
  EXPECT_EQ(x.a, y.a);
  EXPECT_EQ(x.b, y.b);
  EXPECT_NE(sample_instance(sc, 6).a, x.a);
}

TEST(SampleInstance, UnreachableTarget) {
  SearchConfig sc;
  sc.pairing_range = {10.0, 20.0};
  sc.component_range = {0.0, 0.5};
  EXPECT_ERROR_KIND(sample_instance(sc, 0), ErrorKind::ConstraintUnsatisfiable);
}

TEST(SampleInstance, IndexOutOfRange) {
  const SearchConfig sc = near_orthogonal(TheoremId::App2, 3);
  EXPECT_ERROR_KIND(sample_instance(sc, 3), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(sample_instance(sc, -1), ErrorKind::InvalidArgument);
}

TEST(SearchConfig, Validation) {
  SearchConfig sc;
  sc.n_range = {0, 2};
  EXPECT_ERROR_KIND(sc.validate(), ErrorKind::InvalidConfig);
  sc = SearchConfig{};
  sc.s_range = {2, 1};
  EXPECT_ERROR_KIND(sc.validate(), ErrorKind::InvalidConfig);
  sc = SearchConfig{};
  sc.theorem = TheoremId::App3;
  sc.pairing_range = {3.0, 5.0};
  EXPECT_ERROR_KIND(sc.validate(), ErrorKind::InvalidConfig);
  sc = SearchConfig{};
  sc.component_range = {-1.0, 1.0};
  EXPECT_ERROR_KIND(sc.validate(), ErrorKind::InvalidConfig);
  sc = SearchConfig{};
  sc.samples = -1;
  EXPECT_ERROR_KIND(sc.validate(), ErrorKind::InvalidConfig);
}

TEST(Hunt, ZeroSamplesIsEmpty) {
  const HuntResult r = hunt(near_orthogonal(TheoremId::App2, 0), {});
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.summary.samples, 0);
}

TEST(Hunt, FindsNearOrthogonalViolations) {
  for (TheoremId id : {TheoremId::App2, TheoremId::App3}) {
    const HuntResult r = hunt(near_orthogonal(id, 200), {});
    EXPECT_GE(r.records.size(), 1u) << to_string(id);
    EXPECT_EQ(r.summary.violations + r.summary.holds + r.summary.inconclusive + r.summary.errors, 200);
    for (const ViolationRecord& rec : r.records) {
      EXPECT_LT(rec.margin, 0.0);
      EXPECT_TRUE(satisfies_hypothesis(id, rec.a, rec.b, rec.s));
      const TheoremReport again = replay(rec, {});
      EXPECT_EQ(again.verdict, Verdict::Violated);
      EXPECT_NEAR(again.lhs, rec.lhs, 1e-12 * rec.lhs);
      EXPECT_NEAR(again.rhs, rec.rhs, 1e-12 * rec.rhs);
    }
  }
}

TEST(Hunt, SameRecordsForAnyWorkerCount) {
  SearchConfig sc = near_orthogonal(TheoremId::App3, 400);
  sc.n_range = {1, 2};
  sc.s_range = {1, 2};
  const HuntResult one = hunt(sc, {}, HuntOptions{.workers = 1, .on_record = {}});
  const HuntResult three = hunt(sc, {}, HuntOptions{.workers = 3, .on_record = {}});
  EXPECT_EQ(one.records, three.records);
  EXPECT_EQ(one.summary.holds, three.summary.holds);
  EXPECT_EQ(one.summary.inconclusive, three.summary.inconclusive);
}

TEST(Hunt, StreamsRecordsInIndexOrder) {
  std::vector<std::int64_t> seen;
  const HuntResult r = hunt(near_orthogonal(TheoremId::App2, 100), {},
                            HuntOptions{.workers = 2, .on_record = [&seen](const ViolationRecord& rec) {
                                          seen.push_back(rec.sample_index);
                                        }});
  ASSERT_EQ(seen.size(), r.records.size());
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(Hunt, PerSampleFailuresAreCollected) {
  SearchConfig sc;
  sc.pairing_range = {10.0, 20.0};
  sc.component_range = {0.0, 0.5};
  sc.samples = 4;
  const HuntResult r = hunt(sc, {});
  EXPECT_EQ(r.summary.errors, 4);
  ASSERT_EQ(r.errors.size(), 4u);
  EXPECT_EQ(r.errors[2].sample_index, 2);
}

TEST(EvaluateWithRetry, RefinesInconclusive) {
  bool refined = true;
  const TheoremReport r = evaluate_with_retry(TheoremId::App2, {1}, {2}, 1, {}, &refined);
  EXPECT_FALSE(refined);
  EXPECT_EQ(r.verdict, Verdict::Holds);
  evaluate_with_retry(TheoremId::App3, {1, 1}, {1, 1}, 1, {}, &refined);
  EXPECT_TRUE(refined);
}
