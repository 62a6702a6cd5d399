#include <cmath>
#include <random>

#include "doctest.h"

#include "bnfkit/bnf/normal_form.hpp"
#include "bnfkit/brick/brick.hpp"
#include "bnfkit/brick/rng.hpp"
#include "support/random_poly.hpp"
#include "support/stats.hpp"

using namespace bnfkit;
using bnfkit::testing::ks_one_sample;
using bnfkit::testing::ks_two_sample;
using C = Complex<double>;
using P = GradedPolynomial;

TEST_CASE("kolmogorov test support") {
  // Known values of the Kolmogorov distribution.
  CHECK(bnfkit::testing::kolmogorov_q(1.36) == doctest::Approx(0.0495).epsilon(0.02));
  CHECK(bnfkit::testing::kolmogorov_q(1.63) == doctest::Approx(0.0098).epsilon(0.03));
  std::vector<double> u;
  SplitMix64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) u.push_back(d(rng));
  CHECK(ks_one_sample(u, [](double x) { return x; }).p_value > 0.001);
  std::vector<double> sq;
  for (double v : u) sq.push_back(v * v);
  CHECK(ks_one_sample(sq, [](double x) { return x; }).p_value < 1e-6);
}

TEST_CASE("splitmix substreams") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  CHECK(substream(1, 2)() != substream(1, 3)());
  CHECK(substream(1, 2)() != substream(2, 2)());
  CHECK(substream(7, 1, 2)() == substream(7, 1, 2)());
  // Reference value of SplitMix64 from seed 0.
  CHECK(SplitMix64(0)() == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("brick sample structure") {
  const auto s = sample_brick(2, 4, 99);
  REQUIRE(s.parts.size() == 4);
  for (int k = 1; k <= 4; ++k) {
    CHECK(s.parts[k - 1].is_homogeneous(k));
    CHECK(bombieri_norm(s.parts[k - 1], k) <= 1.0);
    CHECK(s.parts[k - 1].terms().size() == static_cast<std::size_t>(homogeneous_dimension(2, k)));
  }
  CHECK_THROWS_AS(sample_brick(2, 0, 1), DomainError);
  CHECK_THROWS_AS(sample_brick(0, 2, 1), DimensionError);
}

TEST_CASE("brick determinism and degree independence of m") {
  const auto a = sample_brick(3, 3, 2024), b = sample_brick(3, 3, 2024);
  CHECK(brick_to_json(a).dump() == brick_to_json(b).dump());
  const auto longer = sample_brick(3, 5, 2024);
  for (int k = 0; k < 3; ++k) CHECK(longer.parts[k] == a.parts[k]);
  CHECK_FALSE(sample_brick(3, 3, 2025).parts[0] == a.parts[0]);
}

TEST_CASE("brick measure: norms, means and radial law") {
  const int n = 2, k = 3, draws = 10000;
  const int dim = homogeneous_dimension(n, k);
  std::vector<double> radial;
  std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(dim));
  double max_norm = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto p = sample_unit_ball(n, k, static_cast<std::uint64_t>(i));
    const double r = bombieri_norm(p, k);
    max_norm = std::max(max_norm, r);
    radial.push_back(std::pow(r, dim));
    const auto v = p.coefficient_vector(k);
    for (int j = 0; j < dim; ++j) coeffs[j].push_back(v[j]);
  }
  CHECK(max_norm <= 1.0);
  for (const auto& c : coeffs) {
    const double se = bnfkit::testing::stddev(c) / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(bnfkit::testing::mean(c)) < 3.0 * se + 1e-15);
  }
  CHECK(ks_one_sample(radial, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value > 0.01);
}

TEST_CASE("brick product measure factorizes") {
  // Degree-3 parts from HB^{≤2} extended by a fresh draw versus HB^{≤3}.
  std::vector<double> ext_norm, full_norm, ext_c, full_c;
  for (int i = 0; i < 3000; ++i) {
    const auto extended = sample_unit_ball(2, 3, 1'000'000 + static_cast<std::uint64_t>(i));
    const auto full = sample_brick(2, 3, static_cast<std::uint64_t>(i)).parts[2];
    ext_norm.push_back(bombieri_norm(extended, 3));
    full_norm.push_back(bombieri_norm(full, 3));
    ext_c.push_back(extended.coefficient_vector(3)[1]);
    full_c.push_back(full.coefficient_vector(3)[1]);
  }
  CHECK(ks_two_sample(ext_norm, full_norm).p_value > 0.01);
  CHECK(ks_two_sample(ext_c, full_c).p_value > 0.01);
}

TEST_CASE("brick to hamiltonian") {
  const auto l1 = Exponent::unit(0);
  BrickSample s{1, 2, 0, {ActionPolynomial::monomial(1, l1, 1.0), ActionPolynomial(1)}};
  const P x = P::x(1, 0), y = P::y(1, 0);
  const P i1 = (x * x + y * y) * C(0.5);
  CHECK(bnfkit::testing::max_coefficient(brick_to_hamiltonian(s) - i1) < 1e-15);
  s.parts[0] = ActionPolynomial(1);
  s.parts[1] = ActionPolynomial::monomial(1, l1 + l1, 1.0);
  CHECK(bnfkit::testing::max_coefficient(brick_to_hamiltonian(s) - i1 * i1) < 1e-15);

  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto smp = sample_brick(n, 4, seed);
      const double bound = sup_norm_bound(brick_to_hamiltonian(smp), 0.5);
      CHECK(std::isfinite(bound));
      CHECK(bound <= brick_sup_bound(n, 4, 0.5) * (1 + 1e-12));
    }
}

TEST_CASE("perturb") {
  const std::vector<double> omega{1.0, std::sqrt(2.0)};
  const P h = P::harmonic(omega);
  BrickSample zero{2, 2, 0, {ActionPolynomial(2), ActionPolynomial(2)}};
  CHECK(perturb(h, zero).hamiltonian == h);

  const std::vector<double> v{0.25, -0.5};
  BrickSample lin{2, 1, 0, {ActionPolynomial::linear(v)}};
  const auto p = perturb(h, lin);
  REQUIRE(p.omega);
  CHECK(p.omega->values()[0] == doctest::Approx(1.25));
  CHECK(p.omega->values()[1] == doctest::Approx(std::sqrt(2.0) - 0.5));
  CHECK_THROWS_AS(perturb(P::harmonic(std::vector<double>{1.0}), lin), DimensionError);

  // No cubic terms: B^(2)(H + h) = B^(2)(H) + h_2.
  const P x1 = P::x(2, 0), y2 = P::y(2, 1);
  const P base = h + x1 * x1 * y2 * y2 * C(0.3) + x1 * x1 * x1 * x1 * C(-0.2);
  auto smp = sample_brick(2, 2, 5);
  smp.parts[0] = ActionPolynomial(2);
  const auto r0 = normalize(base, 2);
  const auto r1 = normalize(perturb(base, smp).hamiltonian, 2);
  CHECK(invariant_discrepancy({r1.invariants[1]}, {r0.invariants[1] + smp.parts[1]}) < 1e-13);
}

TEST_CASE("brick JSON round trip") {
  const auto s = sample_brick(2, 3, 11);
  const auto back = brick_from_json(brick_to_json(s));
  for (int k = 0; k < 3; ++k) CHECK(back.parts[k] == s.parts[k]);
  auto j = brick_to_json(s);
  j["parts"][1]["terms"][0]["c"] = 5.0;
  CHECK_THROWS_AS(brick_from_json(j), DomainError);
}
