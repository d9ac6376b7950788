#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "speeduplab/error.hpp"
#include "speeduplab/speedup.hpp"
#include "systems.hpp"

namespace speeduplab {
namespace {

using namespace speeduplab::testing;

const PermutationTuple kIdSwap{{Permutation::identity(2), Permutation::transposition(2, 0, 1)}};

TEST(KRPartition, HeightsAreImageLengths) {
  EXPECT_EQ(kr_partition(ex431_theta(), 2).heights, (std::vector<std::uint64_t>{20, 30}));
  EXPECT_EQ(kr_partition(ex44_theta(), 1).heights, (std::vector<std::uint64_t>{5, 3}));
}

TEST(NormalizeLevel, Examples) {
  const LevelConditions one = check_level(ex431_theta(), ex431_jump(), 1);
  EXPECT_FALSE(one.ok());
  const NormalizedLevel a = normalize_level(ex431_theta(), ex431_jump());
  EXPECT_EQ(a.level, 2u);
  EXPECT_EQ(a.theta_star, ex431_theta().power(2));
  EXPECT_TRUE(a.checked.back().ok());

  const NormalizedLevel b = normalize_level(ex44_theta(), ex44_jump());
  EXPECT_LE(b.level, 3u);
  EXPECT_EQ(b.level, 2u);

  EXPECT_EQ(normalize_level(ex44_theta(), JumpFunction::constant(1)).level, 1u);
}

TEST(NormalizeLevel, CapIsASafetyNet) {
  Limits limits;
  limits.max_level = 1;
  EXPECT_THROW(normalize_level(ex431_theta(), ex431_jump(), limits), PreconditionError);
}

TEST(LabelColumn, GreedyPathsAndErrors) {
  const ColumnLabeling c = label_column(std::vector<std::uint32_t>{2, 2, 2, 2, 2});
  EXPECT_EQ(c.labels, (std::vector<Label>{0, 1, 0, 1, 0}));
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.exit_floor, (std::vector<std::size_t>{4, 3}));
  EXPECT_EQ(c.landing, (std::vector<std::uint64_t>{1, 0}));
  EXPECT_THROW(label_column(std::vector<std::uint32_t>{2, 1, 1}), InconsistencyError);
  EXPECT_THROW(label_column(std::vector<std::uint32_t>{1, 0}), DomainError);
}

TEST(LabelColumn, MatchesNaiveLabels) {
  Rng rng(41);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint32_t> jumps(uniform(rng, 1, 30));
    for (auto& j : jumps) j = static_cast<std::uint32_t>(uniform(rng, 1, 4));
    const auto naive = naive_labels(jumps);
    if (naive.empty()) {
      EXPECT_THROW(label_column(jumps), InconsistencyError);
    } else {
      EXPECT_EQ(label_column(jumps).labels, naive);
      ++compared;
    }
  }
  EXPECT_GT(compared, 20);
}

TEST(Labeling, NamedExamples) {
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const unsigned k = normalize_level(theta, p).level;
    const Labeling l = build_labeling(theta, p, k);
    EXPECT_EQ(l.c, 2u);
    for (const auto& col : l.columns) EXPECT_EQ(col.count, 2u);
    EXPECT_EQ(column_permutations(l), kIdSwap);
    // Floors below max p share labels across columns.
    for (std::size_t j = 0; j <= p.max_jump(); ++j) EXPECT_EQ(l.labels[0][j], l.labels[1][j]);
  }
  const Labeling trivial = build_labeling(ex44_theta(), JumpFunction::constant(1), 1);
  EXPECT_EQ(trivial.c, 1u);
  for (const auto& col : trivial.labels) {
    for (Label x : col) EXPECT_EQ(x, 0u);
  }
  const PermutationTuple ids = column_permutations(trivial);
  for (const auto& pi : ids.perms) EXPECT_TRUE(pi.is_identity());
}

TEST(Labeling, RejectsDifferentLabelCounts) {
  EXPECT_THROW(build_labeling({{1, 1, 1, 1}, {2, 2, 2, 2}}, 1), InconsistencyError);
}

TEST(Permutations, CompositionRuleExamples) {
  EXPECT_EQ(compose_along(kIdSwap, ex431_theta()), kIdSwap);
  const PermutationIteration fixed = iterate_permutations(kIdSwap, ex431_theta());
  EXPECT_EQ(fixed.stable, 1u);
  EXPECT_EQ(fixed.preperiod, 0u);
  EXPECT_EQ(fixed.period, 1u);

  const PermutationTuple rot{{Permutation::rotation(3), Permutation::rotation(3)}};
  const PermutationTuple next = compose_along(rot, ex431_theta());
  EXPECT_EQ(next.perms[0], Permutation::rotation(3));
  EXPECT_TRUE(next.perms[1].is_identity());

  // Brute force: iterate the rule on raw image tables until a repeat.
  const Substitution theta = ex431_theta();
  std::vector<PermutationTuple> seen{rot};
  for (;;) {
    PermutationTuple t = seen.back();
    PermutationTuple u;
    for (Symbol i = 0; i < 2; ++i) {
      Permutation acc = Permutation::identity(3);
      for (Symbol s : theta.image(i)) acc = t.perms[s].after(acc);
      u.perms.push_back(acc);
    }
    const auto it = std::find(seen.begin(), seen.end(), u);
    if (it != seen.end()) {
      const std::size_t pre = static_cast<std::size_t>(it - seen.begin());
      const std::size_t period = seen.size() - pre;
      const PermutationIteration lib = iterate_permutations(rot, ex431_theta());
      EXPECT_EQ(lib.preperiod, pre);
      EXPECT_EQ(lib.period, period);
      EXPECT_EQ(lib.stable % period, 0u);
      EXPECT_GE(lib.stable, std::max<std::size_t>(pre, 1));
      break;
    }
    seen.push_back(u);
  }
}

TEST(Sigma, ExampleTables) {
  EXPECT_EQ(build_sigma(ex431_theta(), kIdSwap).render(),
            (std::vector<std::string>{"σ:(0,0) ↦ (0,0)(0,0)(1,0)(1,1)", "σ:(0,1) ↦ (0,1)(0,1)(1,1)(1,0)",
                                      "σ:(1,0) ↦ (0,0)(0,0)(1,0)(0,1)(1,1)(1,0)",
                                      "σ:(1,1) ↦ (0,1)(0,1)(1,1)(0,0)(1,0)(1,1)"}));
  EXPECT_EQ(build_sigma(ex44_theta(), kIdSwap).render(),
            (std::vector<std::string>{"σ:(0,0) ↦ (0,0)(0,0)(0,0)(1,0)(1,1)", "σ:(0,1) ↦ (0,1)(0,1)(0,1)(1,1)(1,0)",
                                      "σ:(1,0) ↦ (0,0)(0,0)(1,0)", "σ:(1,1) ↦ (0,1)(0,1)(1,1)"}));
}

TEST(Sigma, SingleLabelIsTheSubstitution) {
  const SigmaSubstitution s = build_sigma(ex44_theta(), PermutationTuple{{Permutation::identity(1), Permutation::identity(1)}});
  EXPECT_EQ(s.sigma, ex44_theta());
}

TEST(Sigma, KeepsTheFirstLabelSoIsNeverProperWithTwoLabels) {
  const SigmaSubstitution s = build_sigma(ex431_theta(), kIdSwap);
  for (Symbol a = 0; a < s.sigma.alphabet_size(); ++a) {
    EXPECT_EQ(s.pair_of(s.sigma.apply(Word{a}, 3).front()).second, s.pair_of(a).second);
  }
  EXPECT_FALSE(is_proper(s.sigma).proper);
}

TEST(Minimality, Examples) {
  EXPECT_TRUE(is_minimal_speedup(ex431_theta(), ex431_jump()));
  EXPECT_TRUE(is_minimal_speedup(ex44_theta(), ex44_jump()));
  EXPECT_FALSE(is_minimal_speedup(ex431_theta(), JumpFunction::constant(2)));
  const SpeedupAnalysis a = analyze_speedup(ex431_theta(), JumpFunction::constant(2));
  EXPECT_EQ(a.c, 2u);
  EXPECT_FALSE(a.sigma_primitivity.primitive);
  EXPECT_THROW(analyze_speedup(Substitution({{0, 1}, {1, 0}}), JumpFunction::constant(1)), PreconditionError);
}

TEST(SpeedupAlphabet, Examples) {
  const SpeedupAlphabet trivial = speedup_alphabet(ex44_theta(), JumpFunction::constant(1));
  EXPECT_EQ(trivial.blocks, (std::vector<Word>{{0}, {1}}));

  const SpeedupAlphabet b = speedup_alphabet(ex44_theta(), ex44_jump());
  std::set<std::size_t> lengths;
  for (const Word& w : b.blocks) {
    lengths.insert(w.size());
    EXPECT_EQ(w.size(), b.recoding.jump(std::span<const Symbol>(w).subspan(0, 1)));
  }
  EXPECT_EQ(lengths, (std::set<std::size_t>{1, 2, 3}));
  EXPECT_LE(b.blocks.size(), language(ex44_theta(), ex44_jump().max_jump() + ex44_jump().window_length()).size());
}

TEST(Nonconjugacy, Evidence) {
  const NonconjugacyReport trivial = nonconjugacy_evidence(ex44_theta(), JumpFunction::constant(1), 10);
  EXPECT_FALSE(trivial.hypothesis_holds);
  EXPECT_TRUE(trivial.surplus.empty());

  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const NonconjugacyReport r = nonconjugacy_evidence(theta, p, 40);
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_TRUE(r.strictly_increasing);
    ASSERT_EQ(r.surplus.size(), 5u);
    std::size_t previous = 0;
    for (const SurplusWitness& s : r.surplus) {
      EXPECT_GT(s.least_n, previous);
      EXPECT_LE(s.least_n, s.bound_n);
      previous = s.least_n;
      // Oracle: the least N over all language words read through the rules.
      const std::size_t window = p.window_length();
      std::size_t least = 0;
      for (std::size_t n = 1; least == 0; ++n) {
        std::int64_t worst = INT64_MAX;
        for (const Word& w : naive_language(theta.images(), n + window - 1)) {
          std::int64_t sum = 0;
          for (std::size_t j = 0; j < n; ++j) sum += p(std::span<const Symbol>(w).subspan(j, window)) - 1;
          worst = std::min(worst, sum);
        }
        if (worst > static_cast<std::int64_t>(s.m)) least = n;
      }
      EXPECT_EQ(s.least_n, least) << "m=" << s.m;
    }
  }
}

TEST(SelfInduce, NamedExamples) {
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const SpeedupAnalysis a = analyze_speedup(theta, p);
    const SelfInduceResult r = self_induce_map(a, 200);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.steps_passed, 200u);
    // φ(A_i(1)) = A_i(2), φ is injective and preserves labels.
    for (std::size_t i = 0; i < r.map.target.size(); ++i) {
      EXPECT_EQ(r.map.target[i][0], 0u);
      std::set<std::uint64_t> image(r.map.target[i].begin(), r.map.target[i].end());
      EXPECT_EQ(image.size(), r.map.target[i].size());
      for (std::size_t j = 0; j < r.map.target[i].size(); ++j) {
        EXPECT_EQ(r.map.level2.labels[i][r.map.target[i][j]], r.map.level1.labels[i][j]);
      }
    }
  }
}

TEST(SelfInduce, TrivialSpeedup) {
  const SpeedupAnalysis a = analyze_speedup(ex44_theta(), JumpFunction::constant(1));
  const SelfInduceResult r = self_induce_map(a, 200);
  EXPECT_TRUE(r.ok());
  for (std::size_t i = 0; i < r.map.target.size(); ++i) {
    EXPECT_EQ(r.map.target[i], r.map.sub_block_starts[i]);
  }
}

TEST(SpeedupProperty, SigmaProjectsOntoTheta) {
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const SpeedupAnalysis a = analyze_speedup(theta, p);
    const Substitution star = a.step.power(a.sigma_power);
    for (Symbol s = 0; s < a.sigma.sigma.alphabet_size(); ++s) {
      EXPECT_EQ(a.sigma.sigma.image(s).size(), star.image(a.sigma.pair_of(s).first).size());
      for (unsigned k = 1; k <= 4; ++k) {
        Word projected;
        for (Symbol t : a.sigma.sigma.apply(Word{s}, k)) projected.push_back(a.sigma.pair_of(t).first);
        EXPECT_EQ(projected, star.apply(Word{a.sigma.pair_of(s).first}, k));
      }
    }
  }
}

TEST(SpeedupProperty, SimulationEquivalence) {
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const SpeedupAnalysis a = analyze_speedup(theta, p);
    EXPECT_EQ(simulated_symbol_labels(a, 1000), sigma_symbol_labels(a, 1000));
  }
}

TEST(SpeedupProperty, LabelCountEqualsOrbitNumber) {
  Rng rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const Substitution theta = random_proper_primitive(rng, uniform(rng, 2, 3), 6);
    const JumpFunction p = JumpFunction::constant(static_cast<std::uint32_t>(uniform(rng, 1, 3)));
    const SpeedupAnalysis a = analyze_speedup(theta, p);
    EXPECT_EQ(a.c, orbit_number(a.step, p, a.seed, 3000).c);
  }
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const SpeedupAnalysis a = analyze_speedup(theta, p);
    EXPECT_EQ(a.c, orbit_number(a.step, p, a.seed, 4000).c);
  }
}

TEST(SpeedupProperty, CompositionRuleMatchesRelabeling) {
  for (const auto& [theta, p] : {std::pair{ex431_theta(), ex431_jump()}, std::pair{ex44_theta(), ex44_jump()}}) {
    const unsigned k = normalize_level(theta, p).level;
    PermutationTuple pi = column_permutations(build_labeling(theta, p, k));
    for (unsigned step = 1; step <= 2; ++step) {
      pi = compose_along(pi, theta);
      EXPECT_EQ(pi, column_permutations(build_labeling(theta, p, k + step)));
    }
  }
}

TEST(SpeedupProperty, TrivialJumpIsMinimal) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Substitution theta = random_proper_primitive(rng, uniform(rng, 2, 4), 7);
    EXPECT_TRUE(is_minimal_speedup(theta, JumpFunction::constant(1)));
  }
}

TEST(SpeedupProperty, SpeedupOfASpeedupReentersThePipeline) {
  // σ is not proper, but its fixed point through (seed, 0) and a power of σ
  // that is primitive are enough to rerun orbit counting on the speedup.
  const SpeedupAnalysis a = analyze_speedup(ex431_theta(), ex431_jump());
  ASSERT_TRUE(a.minimal);
  const Word fp = fixed_point_prefix(a.sigma.sigma, a.sigma.pair_index(a.seed, 0), 64);
  EXPECT_EQ(a.sigma.pair_of(fp.front()).second, 0u);
  EXPECT_TRUE(is_primitive(a.sigma.sigma.power(2)).primitive);
}

}  // namespace
}  // namespace speeduplab
