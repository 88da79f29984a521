#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "hopdisc/error.hpp"
#include "hopdisc/patterns.hpp"

using namespace hopdisc;

namespace {

PatternSpec worked_example() {
  return PatternSpec::new_pattern(FrameStructure(6, 3), 3, parse_poly("x^2-x-1", Prime(3)),
                                  parse_vec("1,0", Prime(3)));
}

PatternSpec new_44x11() {
  return PatternSpec::new_pattern(FrameStructure(44, 11), 0, parse_poly("x^2+3x+6", Prime(11)));
}

InitialMap shuffled_init(FrameStructure frame, std::uint64_t seed) {
  std::vector<std::uint32_t> cells(frame.resource_count());
  std::iota(cells.begin(), cells.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  return InitialMap::from_cells(frame, cells);
}

}  // namespace

TEST_CASE("digits") {
  CHECK(digits(5, Prime(3), 2) == std::vector<std::uint32_t>{2, 1});
  CHECK(digits(0, Prime(11), 2) == std::vector<std::uint32_t>{0, 0});
  CHECK(digits(43, Prime(11), 2) == std::vector<std::uint32_t>{10, 3});
  CHECK_THROWS_AS(digits(9, Prime(3), 2), Error);
}

TEST_CASE("frame structure and initial maps") {
  CHECK_THROWS_AS(FrameStructure(0, 3), Error);
  CHECK_THROWS_AS(FrameStructure(3, 0), Error);
  const FrameStructure frame(2, 3);
  const auto init = InitialMap::row_major(frame);
  CHECK(init.at(4) == Coord{1, 1});
  CHECK(init.resource_at(Coord{1, 2}) == 5);
  CHECK_THROWS_AS(InitialMap::from_cells(frame, {0, 1, 2, 3, 4, 4}), Error);
  CHECK_THROWS_AS(InitialMap::from_cells(frame, {0, 1, 2, 3, 4}), Error);
  CHECK_THROWS_AS(InitialMap::from_cells(frame, {0, 1, 2, 3, 4, 6}), Error);
}

TEST_CASE("new pattern coordinates in the worked example") {
  const HoppingPattern pattern(worked_example());
  const Resource s = 3;  // (i(0), j(0)) = (1, 0)
  REQUIRE(pattern.spec().init().at(s) == Coord{1, 0});
  // j(t) is the first component of b(t) because digits(1) = (1, 0).
  const std::vector<std::uint32_t> expected{0, 1, 0, 1, 1, 2, 0, 2, 2};
  for (std::int64_t t = 0; t < 9; ++t) {
    const auto c = pattern.coords(s, t);
    CHECK(c.j == expected[static_cast<std::size_t>(t)]);
    CHECK(c.i == static_cast<std::uint32_t>((1 + 3 * t) % 6));
  }
  for (std::int64_t t = -20; t < 30; ++t) CHECK(pattern.subframe(0, t) == 0);
}

TEST_CASE("QC coordinates") {
  const HoppingPattern pattern(PatternSpec::qc(FrameStructure(4, 5), 0));
  const Resource s = 11;  // (2, 1)
  REQUIRE(pattern.spec().init().at(s) == Coord{2, 1});
  const std::vector<std::uint32_t> expected{1, 3, 0, 2, 4};
  for (std::int64_t t = 0; t < 5; ++t) {
    CHECK(pattern.subframe(s, t) == expected[static_cast<std::size_t>(t)]);
    CHECK(pattern.coords(s, t).i == 2);
  }

  SUBCASE("matches the closed form for arbitrary k, init, and negative t") {
    const FrameStructure frame(10, 3);
    const auto init = shuffled_init(frame, 4);
    const HoppingPattern qc(PatternSpec::qc(frame, -7, init));
    for (Resource r = 0; r < frame.resource_count(); ++r) {
      const auto c0 = init.at(r);
      for (std::int64_t t = -12; t < 12; ++t) {
        const std::int64_t i0 = c0.i, j0 = c0.j, n = 3, m = 10;
        const auto j = (((j0 + (i0 % n) * t + (i0 / n) * t * t) % n) + n) % n;
        const auto i = (((i0 - 7 * t) % m) + m) % m;
        CHECK(qc.coords(r, t) == Coord{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
}

TEST_CASE("new pattern construction errors") {
  const Prime p3(3);
  CHECK_THROWS_AS(PatternSpec::new_pattern(FrameStructure(6, 4), 0, parse_poly("x^2-x-1", p3)),
                  Error);
  CHECK_THROWS_AS(PatternSpec::new_pattern(FrameStructure(10, 3), 0, parse_poly("x^2-x-1", p3)),
                  Error);  // needs degree 3
  CHECK_THROWS_AS(PatternSpec::new_pattern(FrameStructure(6, 3), 0, parse_poly("x^2+1", p3)),
                  Error);  // not primitive
  CHECK_THROWS_AS(PatternSpec::new_pattern(FrameStructure(6, 3), 0, parse_poly("x^2-x-1", p3),
                                           FpVec::zero(p3, 2)),
                  Error);
  CHECK_THROWS_AS(PatternSpec::new_pattern(FrameStructure(6, 3), 0, parse_poly("x^2+3x+6", Prime(11))),
                  Error);
  // m = 1 still uses a degree-one polynomial.
  CHECK_NOTHROW(PatternSpec::new_pattern(FrameStructure(1, 3), 0, parse_poly("x+1", p3)));
}

TEST_CASE("collision partitions") {
  SUBCASE("self-equality") {
    const HoppingPattern pattern(worked_example());
    CHECK(collision_partition(pattern, 4) == collision_partition(pattern, 4));
  }
  SUBCASE("QC at t = 0 groups each subframe's m resources") {
    const HoppingPattern pattern(PatternSpec::qc(FrameStructure(4, 5), 0));
    const auto groups = collision_partition(pattern, 0).groups();
    REQUIRE(groups.size() == 5);
    for (const auto& g : groups) CHECK(g.size() == 4);
    CHECK(groups[1] == std::vector<Resource>{1, 6, 11, 16});
  }
  SUBCASE("new pattern repeats after p^r frames") {
    const HoppingPattern pattern(worked_example());
    CHECK(collision_partition(pattern, 0) == collision_partition(pattern, 9));
    CHECK_FALSE(collision_partition(pattern, 0) == collision_partition(pattern, 1));
  }
}

TEST_CASE("deterministic patterns are injective in every frame") {
  std::vector<PatternSpec> specs;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    specs.push_back(PatternSpec::qc(FrameStructure(6, 3), 1, shuffled_init(FrameStructure(6, 3), seed)));
    specs.push_back(PatternSpec::qc(FrameStructure(10, 3), 2, shuffled_init(FrameStructure(10, 3), seed)));
    specs.push_back(PatternSpec::new_pattern(FrameStructure(6, 3), 3, parse_poly("x^2-x-1", Prime(3)),
                                             parse_vec("2,1", Prime(3)),
                                             shuffled_init(FrameStructure(6, 3), seed)));
    specs.push_back(PatternSpec::new_pattern(FrameStructure(9, 5), 4, parse_poly("x^2+x+2", Prime(5)),
                                             std::nullopt, shuffled_init(FrameStructure(9, 5), seed)));
  }
  for (const auto& spec : specs) {
    const HoppingPattern pattern(spec);
    const auto period = static_cast<std::int64_t>(*pattern.j_period());
    for (std::int64_t t = 0; t < period; ++t) {
      std::set<std::pair<std::uint32_t, std::uint32_t>> cells;
      for (Resource s = 0; s < pattern.resource_count(); ++s) {
        const auto c = pattern.coords(s, t);
        cells.emplace(c.i, c.j);
      }
      CHECK(cells.size() == pattern.resource_count());
    }
  }
}

TEST_CASE("new pattern j-values have period p^r") {
  for (const auto& spec : {worked_example(), new_44x11()}) {
    const HoppingPattern pattern(spec);
    const auto period = static_cast<std::int64_t>(*pattern.j_period());
    for (std::int64_t t = -period; t < period; ++t) {
      CHECK(pattern.subframes_at(t) == pattern.subframes_at(t + period));
    }
  }
  CHECK(*HoppingPattern(new_44x11()).j_period() == 121);
}

TEST_CASE("random pattern") {
  const FrameStructure frame(4, 5);
  const HoppingPattern a(PatternSpec::random(frame, 42));
  const HoppingPattern a2(PatternSpec::random(frame, 42));
  const HoppingPattern b(PatternSpec::random(frame, 43));

  SUBCASE("reproducible and order independent") {
    for (std::int64_t t = 99; t >= 0; --t) {
      for (Resource s = 0; s < 20; ++s) CHECK(a.coords(s, t) == a2.coords(s, t));
    }
    CHECK(a.coords(7, 1234) == a.coords(7, 1234));
  }
  SUBCASE("seeds matter") {
    std::size_t differ = 0;
    for (std::int64_t t = 0; t < 100; ++t)
      for (Resource s = 0; s < 20; ++s) differ += !(a.coords(s, t) == b.coords(s, t));
    CHECK(differ > 1000);
  }
  SUBCASE("uniform over the grid") {
    std::vector<int> counts(20, 0);
    const int draws = 10000;
    for (int k = 0; k < draws; ++k) {
      const auto c = a.coords(static_cast<Resource>(k % 20), k / 20);
      ++counts[c.i * 5 + c.j];
    }
    const double expected = draws / 20.0;
    const double sigma = std::sqrt(draws * (1.0 / 20) * (19.0 / 20));
    for (int c : counts) CHECK(std::abs(c - expected) <= 5 * sigma);
  }
  SUBCASE("negative frames are rejected") { CHECK_THROWS_AS(a.coords(0, -1), Error); }
  CHECK_FALSE(a.j_period().has_value());
}
