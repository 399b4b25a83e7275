#include <doctest.h>

#include <random>

#include "fnoise/errors.hpp"
#include "fnoise/oracles.hpp"
#include "fnoise/partitions.hpp"

using namespace fnoise;

namespace {

ColorFilterTuple random_cf(std::mt19937_64& rng, int n) {
  const std::vector<Filter> pool{Filter::all(), Filter::empty(), Filter::prefix(2), Filter::prefix(3),
                                 Filter::of({2}), Filter::of({1, 3})};
  std::uniform_int_distribution<int> color(1, 3), pick(0, static_cast<int>(pool.size()) - 1);
  std::vector<int> ks;
  std::vector<Filter> sigmas;
  for (int i = 0; i < n; ++i) {
    ks.push_back(color(rng));
    sigmas.push_back(pool[pick(rng)]);
  }
  return {ks, sigmas};
}

}  // namespace

TEST_CASE("filter parsing and set operations") {
  CHECK(Filter::parse("all").is_all());
  CHECK(Filter::parse("empty").is_empty());
  CHECK(Filter::parse("p3") == Filter::of({1, 2}));
  CHECK(Filter::parse("{3,1,3}") == Filter::of({1, 3}));
  CHECK(Filter::prefix(1).is_empty());
  CHECK(Filter::all().contains(1000));
  CHECK_FALSE(Filter::of({2}).contains(1));
  CHECK(Filter::of({1, 2}).intersect(Filter::of({2, 3})) == Filter::of({2}));
  CHECK(Filter::all().intersect(Filter::of({4})) == Filter::of({4}));
  CHECK(Filter::empty().with(2) == Filter::of({2}));
  CHECK(Filter::of({1}).unite(Filter::all()).is_all());
  CHECK_THROWS_AS(Filter::parse("q2"), std::invalid_argument);
}

TEST_CASE("set partition construction") {
  const auto p = SetPartition::parse(5, "1,3,5|2,4");
  CHECK(p.num_blocks() == 2);
  CHECK(p.to_string() == "{1,3,5}|{2,4}");
  CHECK(SetPartition::parse(5, "{2,4}|{1,3,5}") == p);
  CHECK(SetPartition::singletons(3).refines(p) == false);
  CHECK(SetPartition::singletons(5).refines(p));
  CHECK_THROWS_AS(SetPartition::parse(4, "1,2|2,3,4"), std::invalid_argument);
  CHECK_THROWS_AS(SetPartition::parse(4, "1,2"), std::invalid_argument);
  const std::vector<int> labels{7, 3, 7, 3};
  CHECK(SetPartition::from_labels(std::span<const int>(labels)) == SetPartition::parse(4, "1,3|2,4"));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_partitions(5).size() == 52);
  CHECK(enumerate_pair_partitions(6).size() == 15);
  CHECK(enumerate_pair_partitions(5).empty());
  CHECK(count_noncrossing_pairings(8) == 14);
  CHECK_THROWS_AS(enumerate_partitions(13), GuardError);
}

TEST_CASE("adapted partitions of classical, boolean and two-color words") {
  const auto all4 = ColorFilterTuple::uniform({1, 1, 1, 1}, Filter::all());
  CHECK(enumerate_adapted(all4, true).size() == 3);
  CHECK(enumerate_adapted(all4, false).size() == 15);

  // No gap may skip anything: only interval partitions survive.
  const auto empty4 = ColorFilterTuple::uniform({1, 1, 1, 1}, Filter::empty());
  CHECK(enumerate_adapted(empty4, true).size() == 1);
  CHECK(enumerate_adapted(empty4, false).size() == 8);

  CHECK(enumerate_adapted(ColorFilterTuple::uniform({1, 2, 1, 2}, Filter::all()), true).size() == 1);
  CHECK(enumerate_adapted(ColorFilterTuple::uniform({1, 2, 1, 2}, Filter::empty()), true).empty());
}

TEST_CASE("is_adapted checks both conditions") {
  const ColorFilterTuple cf({1, 2, 1}, {Filter::all(), Filter::of({2}), Filter::all()});
  CHECK_FALSE(is_adapted(SetPartition::parse(3, "1,2,3"), cf));  // not monochromatic
  CHECK_FALSE(is_adapted(SetPartition::parse(3, "1,3|2"), cf));  // color 1 not in {2}
  const ColorFilterTuple open({1, 2, 1}, {Filter::all(), Filter::of({1}), Filter::all()});
  CHECK(is_adapted(SetPartition::parse(3, "1,3|2"), open));
}

TEST_CASE("coarsest adapted refinement on worked cases") {
  const ColorFilterTuple cf({1, 1, 2, 1, 1},
                            {Filter::all(), Filter::empty(), Filter::all(), Filter::all(), Filter::all()});
  // Position 3 lets color 1 pass, position 2 belongs to the block.
  CHECK(coarsest_adapted(SetPartition::parse(5, "1,2,4,5|3"), cf) == SetPartition::parse(5, "1,2,4,5|3"));
  const ColorFilterTuple blocked({1, 2, 1, 2, 1},
                                 {Filter::all(), Filter::of({2}), Filter::all(), Filter::empty(), Filter::all()});
  CHECK(coarsest_adapted(SetPartition::parse(5, "1,3,5|2,4"), blocked) ==
        SetPartition::parse(5, "1|3|5|2,4"));
  // Mixed colors inside a block split first by color.
  const auto mixed = ColorFilterTuple::uniform({1, 2, 1}, Filter::all());
  CHECK(coarsest_adapted(SetPartition::parse(3, "1,2,3"), mixed) == SetPartition::parse(3, "1,3|2"));
}

TEST_CASE("coarsest adapted refinement matches brute force") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_partitions(n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto cf = random_cf(rng, n);
      const auto& r = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      const auto fast = coarsest_adapted(r, cf);
      CHECK(fast == oracle::coarsest_adapted_bruteforce(r, cf, all));
      CHECK(is_adapted(fast, cf));
      CHECK(fast.refines(r));
    }
  }
}
