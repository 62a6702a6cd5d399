#include <cmath>
#include <random>

#include "doctest.h"

#include "bnfkit/arith/diophantine.hpp"

using namespace bnfkit;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

// Full-box brute force for n = 2 without sign reduction.
double brute_gamma2(double w1, double w2, double tau, int K) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b) {
      if (a == 0 && b == 0) continue;
      const int ninf = std::max(std::abs(a), std::abs(b));
      best = std::min(best, std::abs(a * w1 + b * w2) * std::pow(ninf, tau));
    }
  return best;
}

}  // namespace

TEST_CASE("resonance order examples") {
  auto r11 = resonance_order(Frequency({1.0, 1.0}), 10);
  REQUIRE(r11);
  CHECK(r11->order == 2);
  CHECK(r11->k == std::vector<int>{1, -1});
  auto r12 = resonance_order(Frequency({1.0, 2.0}), 10);
  REQUIRE(r12);
  CHECK(r12->order == 3);
  CHECK(r12->k == std::vector<int>{2, -1});
  CHECK_FALSE(resonance_order(Frequency({1.0, kGolden}), 30));
  CHECK_FALSE(resonance_order(Frequency({1.0, 2.0}), 2));
  auto r3 = resonance_order(Frequency({1.0, 2.0, 3.0}), 5);
  REQUIRE(r3);
  CHECK(r3->order == 3);
  CHECK(is_resonant(Frequency({1.0, 2.0, 3.0}), r3->k));
  CHECK_THROWS_AS(resonance_order(Frequency({1.0}), 0), DomainError);
}

TEST_CASE("diophantine gamma examples") {
  const auto r = diophantine_gamma(Frequency({1.0, 1.0}), 1.0, 20);
  CHECK(r.gamma == 0.0);
  CHECK(r.worst_k == std::vector<int>{1, -1});
  REQUIRE(r.resonance);
  CHECK(r.resonance->order == 2);

  const Frequency g({1.0, kGolden});
  const auto g50 = diophantine_gamma(g, 1.0, 50);
  const auto g100 = diophantine_gamma(g, 1.0, 100);
  CHECK(g100.gamma > 0.0);
  CHECK(std::abs(g100.gamma - g50.gamma) < 0.1 * g50.gamma);
  CHECK_FALSE(g100.resonance);
}

TEST_CASE("diophantine gamma matches a full-box brute force") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double w1 = u(rng), w2 = u(rng);
    for (double tau : {0.5, 1.0, 2.0}) {
      const auto r = diophantine_gamma(Frequency({w1, w2}), tau, 25);
      CHECK(r.gamma == doctest::Approx(brute_gamma2(w1, w2, tau, 25)).epsilon(1e-12));
    }
  }
}

TEST_CASE("diophantine gamma properties") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<double> w(n);
    for (double& v : w) v = u(rng);
    const Frequency omega(w);
    double prev = std::numeric_limits<double>::infinity();
    for (int K = 1; K <= 12; ++K) {
      const double gk = diophantine_gamma(omega, 1.0, K).gamma;
      CHECK(gk <= prev);
      prev = gk;
    }
    std::vector<double> w2(w);
    for (double& v : w2) v *= 2.0;
    CHECK(diophantine_gamma(Frequency(w2), 1.5, 10).gamma == 2.0 * diophantine_gamma(omega, 1.5, 10).gamma);
    std::vector<double> wr(w.rbegin(), w.rend());
    CHECK(diophantine_gamma(Frequency(wr), 1.0, 10).gamma ==
          doctest::Approx(diophantine_gamma(omega, 1.0, 10).gamma).epsilon(1e-12));
    const auto serial = diophantine_gamma(omega, 1.0, 10, 1);
    const auto parallel = diophantine_gamma(omega, 1.0, 10, 3);
    CHECK(serial.gamma == parallel.gamma);
    CHECK(serial.worst_k == parallel.worst_k);
  }
  // resonance within the box implies gamma = 0
  const Frequency res({1.0, 2.0, std::sqrt(2.0)});
  const auto rr = diophantine_gamma(res, 1.0, 3);
  CHECK(rr.gamma == 0.0);
  CHECK(is_resonant(res, rr.worst_k));
  CHECK_THROWS_AS(diophantine_gamma(res, 0.0, 3), DomainError);
}

TEST_CASE("diophantine JSON") {
  const auto j = diophantine_to_json(diophantine_gamma(Frequency({1.0, 1.0}), 1.0, 5));
  CHECK(j["gamma_K"] == 0.0);
  CHECK(j["worst_k"] == nlohmann::json({1, -1}));
  CHECK(j["resonance_order"] == 2);
}
