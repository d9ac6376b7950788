#include <gtest/gtest.h>

#include "generators.hpp"
#include "speeduplab/error.hpp"
#include "speeduplab/permutation.hpp"

namespace speeduplab {
namespace {

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({0, 0}), DomainError);
  EXPECT_THROW(Permutation({0, 2}), DomainError);
  EXPECT_NO_THROW(Permutation({1, 0}));
}

TEST(Permutation, CycleNotation) {
  EXPECT_EQ(Permutation::identity(3).to_string(), "id");
  EXPECT_EQ(Permutation::transposition(2, 0, 1).to_string(), "(0 1)");
  EXPECT_EQ(Permutation({1, 2, 0, 4, 3}).to_string(), "(0 1 2)(3 4)");
  EXPECT_EQ(Permutation::rotation(3).to_string(), "(0 1 2)");
}

TEST(Permutation, CompositionAppliesFirstArgumentFirst) {
  const Permutation a({1, 2, 0});
  const Permutation b({0, 2, 1});
  const Permutation ab = a.after(b);
  for (Label l = 0; l < 3; ++l) EXPECT_EQ(ab(l), a(b(l)));
}

TEST(Permutation, CyclicityAndPowers) {
  const Permutation r = Permutation::rotation(3);
  EXPECT_TRUE(r.is_cyclic());
  EXPECT_EQ(r.pow(4), r);
  EXPECT_TRUE(r.pow(3).is_identity());
  EXPECT_FALSE(Permutation({1, 0, 2}).is_cyclic());
  EXPECT_TRUE(Permutation::identity(1).is_cyclic());
  EXPECT_FALSE(Permutation::identity(2).is_cyclic());
}

TEST(Permutation, TupleRendering) {
  PermutationTuple t{{Permutation::identity(2), Permutation::transposition(2, 0, 1)}};
  EXPECT_EQ(t.to_string(), "<id, (0 1)>");
  EXPECT_EQ(t.labels(), 2u);
}

TEST(PermutationProperty, GroupLaws) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 7);
    const Permutation a = testing::random_permutation(rng, n);
    const Permutation b = testing::random_permutation(rng, n);
    const Permutation c = testing::random_permutation(rng, n);
    EXPECT_EQ(a.after(b).after(c), a.after(b.after(c)));
    EXPECT_TRUE(a.after(a.inverse()).is_identity());
    const std::uint64_t k = testing::uniform(rng, 0, 20);
    Permutation naive = Permutation::identity(n);
    for (std::uint64_t i = 0; i < k; ++i) naive = a.after(naive);
    EXPECT_EQ(a.pow(k), naive);
    std::size_t total = 0;
    for (const auto& cyc : a.cycles()) total += cyc.size();
    EXPECT_LE(total, n);
  }
}

}  // namespace
}  // namespace speeduplab
