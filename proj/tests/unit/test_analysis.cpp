#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "speeduplab/analysis.hpp"
#include "speeduplab/error.hpp"
#include "speeduplab/speedup.hpp"
#include "systems.hpp"

namespace speeduplab {
namespace {

using namespace speeduplab::testing;

TEST(PartialSums, Basics) {
  const std::vector<std::int64_t> v{1, -2, 3, -1};
  const PartialSumTrace t = partial_sums(v, {1, 3, 9});
  EXPECT_EQ(t.sums, (std::vector<std::int64_t>{0, 1, -1, 2, 1}));
  EXPECT_EQ(t.max_abs, 2);
  EXPECT_EQ(t.checkpoints, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(t.checkpoint_sums, (std::vector<std::int64_t>{1, 2}));
}

TEST(Classify, BoundedDivergentInconclusive) {
  std::vector<std::int64_t> periodic(100);
  for (std::size_t i = 0; i < periodic.size(); ++i) periodic[i] = i % 2 == 0 ? 1 : -1;
  EXPECT_EQ(classify(partial_sums(periodic), 1), TraceVerdict::Bounded);
  EXPECT_EQ(classify(partial_sums(periodic), std::nullopt), TraceVerdict::Bounded);

  std::vector<std::int64_t> ones(100, 1);
  EXPECT_EQ(classify(partial_sums(ones, {10, 25, 60}), std::nullopt), TraceVerdict::Divergent);
  EXPECT_EQ(classify(partial_sums(ones, {10, 15, 20}), std::nullopt), TraceVerdict::Inconclusive);
  EXPECT_EQ(classify(partial_sums(ones), std::nullopt), TraceVerdict::Inconclusive);

  // Flat but above the bound.
  std::vector<std::int64_t> jump_once(100, 0);
  jump_once[0] = 5;
  EXPECT_EQ(classify(partial_sums(jump_once), 4), TraceVerdict::Inconclusive);
  EXPECT_EQ(classify(partial_sums(jump_once), 5), TraceVerdict::Bounded);
}

TEST(Classify, PeriodicSummandsWithZeroMeanAreBounded) {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t period = uniform(rng, 1, 8);
    std::vector<std::int64_t> block(period);
    std::int64_t s = 0;
    for (std::size_t i = 0; i + 1 < period; ++i) {
      block[i] = static_cast<std::int64_t>(uniform(rng, 0, 6)) - 3;
      s += block[i];
    }
    block[period - 1] = -s;
    std::vector<std::int64_t> values(period * 50);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = block[i % period];
    EXPECT_EQ(classify(partial_sums(values), std::nullopt), TraceVerdict::Bounded);
  }
}

TEST(TCoboundary, SubstitutionExamplesAreBounded) {
  const CoboundaryResult a = t_coboundary_trace(ex431_theta(), ex431_jump(), 2, 10000);
  EXPECT_EQ(a.verdict, TraceVerdict::Bounded);
  EXPECT_EQ(a.trace.max_abs, 1);
  EXPECT_EQ(a.bound, 6);
  const CoboundaryResult b = t_coboundary_trace(ex44_theta(), ex44_jump(), 2, 10000);
  EXPECT_EQ(b.verdict, TraceVerdict::Bounded);
  EXPECT_EQ(b.trace.max_abs, 1);
}

TEST(SCoboundary, Ex431IsBounded) {
  const auto cps = block_checkpoints(ex431_theta(), ex431_jump(), 20000);
  const CoboundaryResult r = s_coboundary_trace(ex431_theta(), ex431_jump(), 2, 20000, cps);
  EXPECT_EQ(r.verdict, TraceVerdict::Bounded);
}

TEST(SCoboundary, Ex44DivergesAtBlockCheckpoints) {
  const auto cps = block_checkpoints(ex44_theta(), ex44_jump(), 100000);
  EXPECT_EQ(cps, (std::vector<std::size_t>{2, 9, 40, 175, 758, 3261, 13964, 59603}));
  const CoboundaryResult r = s_coboundary_trace(ex44_theta(), ex44_jump(), 2, 100000, cps);
  EXPECT_EQ(r.trace.checkpoint_sums,
            (std::vector<std::int64_t>{1, 3, 9, 27, 81, 243, 729, 2187}));
  EXPECT_EQ(r.verdict, TraceVerdict::Divergent);
  const CoboundaryResult short_run = s_coboundary_trace(ex44_theta(), ex44_jump(), 2, 20, {2, 9});
  EXPECT_EQ(short_run.verdict, TraceVerdict::Inconclusive);
}

TEST(Coboundary, OdometerTraces) {
  const CoboundaryResult t = t_coboundary_trace(remex_odometer(), remex_jump(), 1000);
  EXPECT_EQ(t.verdict, TraceVerdict::Bounded);
  EXPECT_EQ(t.bound, 6);
  const CoboundaryResult s = s_coboundary_trace(remex_odometer(), remex_jump(), 1000);
  EXPECT_EQ(s.verdict, TraceVerdict::Bounded);
  EXPECT_EQ(s.trace.checkpoints, (std::vector<std::size_t>{4, 12, 36, 108, 324, 972}));
  for (std::int64_t v : s.trace.checkpoint_sums) EXPECT_EQ(v, 0);
  EXPECT_THROW(t_coboundary_trace(remex_odometer(), OdometerJumpSpec{1, {1, 1, 2, 1}}, 10),
               PreconditionError);
}

TEST(Scob, Verdicts) {
  const ScobReport a = scob_verify(ex44_theta(), ex44_jump(), 2, 400, 8);
  EXPECT_EQ(a.status, ScobReport::Status::NotCoboundaryAtWindow);
  EXPECT_FALSE(a.g.has_value());

  const ScobReport b = scob_verify(remex_odometer(), remex_jump(), 500);
  EXPECT_EQ(b.status, ScobReport::Status::Verified);
  EXPECT_EQ(b.identity_passed, 500u);
  EXPECT_EQ(b.intertwining_passed, 500u);

  const ScobReport c = scob_verify(Substitution({{0, 1}, {0, 0, 1}}).power(2),
                                   JumpFunction::constant(1), 1, 100, 2);
  EXPECT_EQ(c.status, ScobReport::Status::Verified);
  EXPECT_EQ(c.window, std::make_pair(0u, 0u));
  EXPECT_THROW(scob_verify(ex44_theta(), ex44_jump(), 2, 1), PreconditionError);
}

TEST(Scob, MinimalOdometerSpeedupsAreCoboundaries) {
  Rng rng(62);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 30; ++trial) {
    const OdometerSpec a = random_odometer(rng);
    if (a.m(1) > 12) continue;
    const OdometerJumpSpec j = random_odometer_jump(rng, a, 1, 4);
    if (!check_jump_function(a, j).minimal) continue;
    EXPECT_EQ(scob_verify(a, j, 300).status, ScobReport::Status::Verified) << a.to_string();
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Entropy, Estimates) {
  std::vector<std::size_t> full;
  for (std::size_t n = 1; n <= 20; ++n) full.push_back(std::size_t{1} << n);
  const EntropySummary f = entropy_estimates(full);
  for (double v : f.values) EXPECT_NEAR(v, std::log(2.0), 1e-12);
  EXPECT_TRUE(f.nonincreasing_tail);

  const std::vector<std::size_t> zero{2, 0};
  EXPECT_THROW(entropy_estimates(zero), DomainError);

  const auto counts = word_complexity(ex44_theta(), 40);
  const EntropySummary e = entropy_estimates(counts);
  EXPECT_EQ(counts.back(), 80u);
  EXPECT_NEAR(e.last, std::log(80.0) / 40.0, 1e-12);
  EXPECT_LT(e.last, std::log(2.0));
}

TEST(Exammeas, Examples) {
  const std::vector<std::uint64_t> n{10, 20, 40};
  const ExammeasSystem s = exammeas_build(n, 4);
  EXPECT_EQ(s.w0[1].size(), 6u * 10 + 26);
  EXPECT_EQ(s.w1[1].size(), s.w0[1].size() + 7);
  const WalkTrace walk = speedup_walk(s.point, s.jump, 0, 2);
  EXPECT_EQ(walk.positions, (std::vector<std::int64_t>{0, 4, 6}));

  const ExammeasReport r = exammeas_check(s, 4);
  ASSERT_EQ(r.levels.size(), 4u);
  const std::uint64_t expect[4][2] = {{2, 6}, {33, 86}, {839, 2078}, {37809, 91618}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(r.levels[k].s_simulated, expect[k][0]);
    EXPECT_EQ(r.levels[k].sum_simulated, expect[k][1]);
  }
  EXPECT_TRUE(r.consistent);
  EXPECT_TRUE(r.all_above_two);
}

TEST(Exammeas, RejectsBadSequences) {
  const std::vector<std::uint64_t> small{6, 20};
  EXPECT_THROW(exammeas_build(small, 2), PreconditionError);
  const std::vector<std::uint64_t> flat{10, 10};
  EXPECT_THROW(exammeas_build(flat, 3), PreconditionError);
  const std::vector<std::uint64_t> one{10};
  EXPECT_THROW(exammeas_build(one, 3), PreconditionError);
  EXPECT_THROW(exammeas_build(one, 0), PreconditionError);
}

TEST(Exammeas, RecursionMatchesSimulationForRandomSequences) {
  Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint64_t> n{uniform(rng, 7, 15)};
    n.push_back(n.back() + uniform(rng, 1, 10));
    const ExammeasSystem s = exammeas_build(n, 3);
    EXPECT_NO_THROW(exammeas_check(s, 3));
  }
}

}  // namespace
}  // namespace speeduplab
