#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "sparse_ising/rng.hpp"

using namespace sparse_ising;

// Known-answer vectors of the Random123 reference distribution.
TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream layout follows the contract") {
  const std::uint64_t seed = 0x0123456789abcdefULL;
  CounterRng rng(seed, 7, Stream::Swap);
  const std::array<std::uint32_t, 2> key{0x89abcdef, 0x01234567};
  for (std::uint32_t block = 0; block < 3; ++block) {
    const auto words = philox4x32_10({block, 0, 7, 2}, key);
    for (auto w : words) CHECK(rng() == w);
  }
  CHECK(rng.seed() == seed);
}

TEST_CASE("streams and trials are independent") {
  CounterRng a(1, 0, Stream::Sweep);
  CounterRng b(1, 0, Stream::Swap);
  CounterRng c(1, 1, Stream::Sweep);
  CounterRng a2 = b.split(static_cast<std::uint32_t>(Stream::Sweep));
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a();
    same_ab += x == b();
    same_ac += x == c();
    CHECK(x == a2());
  }
  CHECK(same_ab < 2);
  CHECK(same_ac < 2);
}

TEST_CASE("uniform and below stay in range") {
  CounterRng rng(42, 0, 0);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.01));

  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto k = rng.below(7);
    REQUIRE(k < 7);
    ++counts[k];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("shuffle is a permutation and deterministic") {
  std::vector<int> a(100), b(100);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  CounterRng r1(9, 3, 1), r2(9, 3, 1);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  CHECK(a == b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(100);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);
  CHECK(a != expect);
}
