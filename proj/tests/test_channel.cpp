#include <catch2/catch_amalgamated.hpp>

#define GCTEST_WANT_CHANNEL
#include "support.hpp"

#include <groupcap/channel.hpp>

using namespace groupcap;
using gctest::approx;

namespace {
// Frozen references, each recomputable from entropies by hand:
//   binary_capacity(f) = 1 - H2(f)
constexpr double kBsc01Capacity = 0.5310044064107188;   // 1 - H2(0.1)
constexpr double kZ4FullCapacity = 0.6432203505529603;  // 2 - H(.7,.1,.1,.1)
constexpr double kZ4EvenCoset = 0.36514844544032266;    // H(.4,.1,.4,.1) - H(.7,.1,.1,.1)
const std::vector<double> kZ4Noise{0.7, 0.1, 0.1, 0.1};
const std::vector<double> kZ4FlatNoise{0.45, 0.05, 0.45, 0.05};
}  // namespace

TEST_CASE("channel construction validates shape and stochasticity") {
  Group z2 = gctest::Z(2);
  REQUIRE_THROWS_AS(make_channel(z2, 2, {{0.5, 0.49}, {0.5, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_channel(z2, 2, {{1.1, -0.1}, {0.5, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_channel(z2, 2, {{1.0, 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_channel(z2, 0, {{}, {}}), std::invalid_argument);

  Channel ch = gctest::uniform_input_bsc(0.1);
  REQUIRE(ch.at(0, 1) == 0.1);
  REQUIRE(ch.at(1, 0) == 0.1);
}

TEST_CASE("additive-noise construction shifts the noise row") {
  Group z4 = gctest::Z(2, 2);
  Channel ch = additive_noise_channel(z4, kZ4Noise);
  // Row x is the noise vector cyclically shifted by x.
  REQUIRE(ch.at(1, 0) == 0.1);
  REQUIRE(ch.at(1, 1) == 0.7);
  REQUIRE(ch.at(3, 3) == 0.7);
  REQUIRE(ch.at(2, 3) == 0.1);
}

TEST_CASE("mutual information reproduces closed forms") {
  Channel bsc = gctest::uniform_input_bsc(0.1);
  auto uniform = make_input_distribution(bsc.group, {0.5, 0.5});
  REQUIRE(approx(mutual_information(bsc, uniform), kBsc01Capacity, 1e-12));

  // Point-mass input carries no information.
  auto point = make_input_distribution(bsc.group, {1.0, 0.0});
  REQUIRE(mutual_information(bsc, point) == 0.0);

  // Noiseless identity channel: I = H(input).
  Group z6 = gctest::make({{2, 1}, {3, 1}});
  Channel id6 = gctest::identity_channel(z6);
  std::mt19937_64 rng = make_substream(11, 0);
  auto dist = gctest::random_distribution(z6, rng);
  REQUIRE(approx(mutual_information(id6, dist), entropy_bits(dist.p), 1e-12));
}

TEST_CASE("mutual information bounds hold on random instances") {
  std::mt19937_64 rng = make_substream(11, 1);
  for (const Group& g : gctest::group_pool()) {
    if (g.order > 16) continue;
    for (std::size_t ny : {1u, 2u, 5u}) {
      Channel ch = gctest::random_channel(g, ny, rng);
      for (int t = 0; t < 8; ++t) {
        auto dist = gctest::random_distribution(g, rng);
        double info = mutual_information(ch, dist);
        REQUIRE(info >= 0.0);
        REQUIRE(info <= entropy_bits(dist.p) + 1e-12);
        REQUIRE(info <= std::log2(static_cast<double>(ny)) + 1e-12);
      }
    }
  }
}

TEST_CASE("coset capacities on the shifted-noise reference channel") {
  Group z4 = gctest::Z(2, 2);
  Channel ch = additive_noise_channel(z4, kZ4Noise);

  auto full = cosets(z4, {{0}});
  REQUIRE(full.size() == 1);
  REQUIRE(approx(coset_capacity(ch, full[0]), kZ4FullCapacity, 1e-12));

  auto halves = cosets(z4, {{1}});
  REQUIRE(halves.size() == 2);
  REQUIRE(approx(coset_capacity(ch, halves[0]), kZ4EvenCoset, 1e-12));
  REQUIRE(approx(coset_capacity(ch, halves[1]), kZ4EvenCoset, 1e-12));

  // Restricting to the full group equals plain mutual information.
  auto uniform = make_input_distribution(z4, std::vector<double>(4, 0.25));
  REQUIRE(approx(coset_capacity(ch, full[0]), mutual_information(ch, uniform), 1e-15));
}

TEST_CASE("optimal coset picks the best subchannel, ties to smallest representative") {
  Group z4 = gctest::Z(2, 2);
  // Rows for inputs {0,2} are pure noise; rows for {1,3} are nearly clean, so
  // the odd coset is the better subchannel.
  Channel ch = make_channel(z4, 4,
                            {{0.25, 0.25, 0.25, 0.25},
                             {0.97, 0.01, 0.01, 0.01},
                             {0.25, 0.25, 0.25, 0.25},
                             {0.01, 0.01, 0.97, 0.01}});
  CosetCapacity best = optimal_coset(ch, {{1}});
  REQUIRE(best.coset.representative.coords == std::vector<std::uint64_t>{1});
  REQUIRE(best.value > 0.5);

  // Symmetric channel: both cosets tie, the smaller representative wins.
  Channel sym = additive_noise_channel(z4, kZ4Noise);
  CosetCapacity tied = optimal_coset(sym, {{1}});
  REQUIRE(tied.coset.representative.coords == std::vector<std::uint64_t>{0});
}

TEST_CASE("coset symmetry holds for additive noise and fails when a row is biased") {
  std::mt19937_64 rng = make_substream(11, 2);
  for (const Group& g : gctest::group_pool()) {
    if (g.order > 16) continue;
    std::vector<double> noise(static_cast<std::size_t>(g.order));
    double sum = 0.0;
    for (double& v : noise) {
      v = -std::log(1.0 - uniform_real(rng));
      sum += v;
    }
    for (double& v : noise) v /= sum;
    REQUIRE(is_coset_symmetric(additive_noise_channel(g, noise)));
  }

  Group z4 = gctest::Z(2, 2);
  Channel biased = make_channel(z4, 4,
                                {{0.25, 0.25, 0.25, 0.25},
                                 {0.97, 0.01, 0.01, 0.01},
                                 {0.25, 0.25, 0.25, 0.25},
                                 {0.01, 0.01, 0.97, 0.01}});
  REQUIRE_FALSE(is_coset_symmetric(biased));
}

TEST_CASE("unconstrained capacity via alternating maximisation") {
  // Symmetric binary channel: uniform input is optimal, convergence immediate.
  REQUIRE(approx(shannon_capacity(gctest::uniform_input_bsc(0.1)), kBsc01Capacity, 1e-9));

  // Noiseless channels: capacity is log2 of the alphabet size.
  Group z6 = gctest::make({{2, 1}, {3, 1}});
  REQUIRE(approx(shannon_capacity(gctest::identity_channel(z6)), std::log2(6.0), 1e-9));
  Group z4 = gctest::Z(2, 2);
  REQUIRE(approx(shannon_capacity(gctest::identity_channel(z4)), 2.0, 1e-12));

  // Flat shifted noise collapses Z_4 to a binary channel with flip 0.1.
  Channel flat = additive_noise_channel(z4, kZ4FlatNoise);
  REQUIRE(approx(shannon_capacity(flat, 1e-9), kBsc01Capacity, 1e-6));

  // Single-output channel carries nothing.
  Channel blind = make_channel(gctest::Z(2), 1, {{1.0}, {1.0}});
  REQUIRE(shannon_capacity(blind) == 0.0);
}

TEST_CASE("capacity dominates every coset capacity") {
  std::mt19937_64 rng = make_substream(11, 3);
  for (const Group& g : gctest::group_pool()) {
    if (g.order > 12) continue;
    for (int t = 0; t < 3; ++t) {
      Channel ch = gctest::random_channel(g, 4, rng);
      double cap = shannon_capacity(ch, 1e-7);
      for (const auto& s : enumerate_subgroups(g, true))
        for (const Coset& c : cosets(g, s))
          REQUIRE(coset_capacity(ch, c) <= cap + 1e-7);
    }
  }
}
