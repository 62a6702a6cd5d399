#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "bnfkit/brick/brick.hpp"
#include "bnfkit/dynamics/families.hpp"
#include "bnfkit/dynamics/integrator.hpp"
#include "bnfkit/dynamics/normalizing_map.hpp"
#include "bnfkit/dynamics/stability.hpp"
#include "bnfkit/polyalg/phase_space.hpp"
#include "support/random_poly.hpp"

using namespace bnfkit;
using P = GradedPolynomial;

namespace {

const std::vector<double> kOmega2{1.0, 0.5 * (std::sqrt(5.0) - 1.0)};

// Central-difference Jacobian of z -> map(z).
template <class F>
Eigen::MatrixXd fd_jacobian(F map, const std::vector<double>& z, double h = 1e-6) {
  const int d = static_cast<int>(z.size());
  Eigen::MatrixXd j(d, d);
  for (int c = 0; c < d; ++c) {
    auto zp = z, zm = z;
    zp[static_cast<std::size_t>(c)] += h;
    zm[static_cast<std::size_t>(c)] -= h;
    const auto fp = map(zp), fm = map(zm);
    for (int r = 0; r < d; ++r)
      j(r, c) = (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2 * h);
  }
  return j;
}

double symplectic_defect(const Eigen::MatrixXd& j) {
  const Eigen::MatrixXd om = symplectic_form(static_cast<int>(j.rows() / 2));
  return (j.transpose() * om * j - om).cwiseAbs().maxCoeff();
}

double max_energy_error(const TrajectoryRecord& rec) {
  double m = 0.0;
  for (double e : rec.energy) m = std::max(m, std::abs(e - rec.energy.front()));
  return m;
}

}  // namespace

TEST_CASE("harmonic flow keeps the actions over a million steps") {
  IntegrateOptions opt;
  opt.dt = 1e-2;
  opt.t_max = 1e4;
  opt.record_stride = 1000;
  const auto rec = integrate(ActionPolynomial::linear(kOmega2).lift(), {0.3, -0.1, 0.2, 0.25}, opt);
  CHECK(rec.size() == 1001u);
  CHECK(rec.times.back() == doctest::Approx(1e4));
  CHECK(action_drift(rec).max_drift <= 1e-12);
  CHECK_FALSE(rec.escaped);
}

TEST_CASE("integrable one-dof flow keeps its action") {
  const P h = P::action(1, 0) + P::action(1, 0) * P::action(1, 0) * Complex<double>(0.5);
  IntegrateOptions opt;
  opt.dt = 1e-2;
  opt.t_max = 1e4;
  opt.record_stride = 1000;
  const auto rec = integrate(h, {0.4, 0.3}, opt);
  CHECK(action_drift(rec).max_drift <= 1e-10);
}

TEST_CASE("energy error of I + x^4 is bounded and second order") {
  const P h = P::action(1, 0) + P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * P::x(1, 0);
  const std::vector<double> z0{0.5, 0.2};
  IntegrateOptions fine;
  fine.dt = 1e-2;
  fine.t_max = 1e4;
  fine.record_stride = 10;
  const auto rf = integrate(h, z0, fine);
  IntegrateOptions coarse = fine;
  coarse.dt = 2e-2;
  coarse.record_stride = 5;
  const auto rc = integrate(h, z0, coarse);
  const double ef = max_energy_error(rf), ec = max_energy_error(rc);
  const double k = ec / (coarse.dt * coarse.dt);
  CHECK(ef > 0.0);
  CHECK(ef < 1.1 * k * fine.dt * fine.dt);
  CHECK(ec / ef == doctest::Approx(4.0).epsilon(0.1));
  // No secular growth: the second half is no worse than the first.
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < rf.size(); ++i) {
    const double e = std::abs(rf.energy[i] - rf.energy[0]);
    (i < rf.size() / 2 ? first : second) = std::max(i < rf.size() / 2 ? first : second, e);
  }
  CHECK(second < 1.05 * first);
}

TEST_CASE("one-step map is symplectic on random degree-6 Hamiltonians") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<double> w;
    for (int j = 0; j < n; ++j) w.push_back(1.0 + 0.37 * j);
    const P h = bnfkit::testing::random_base_hamiltonian(rng, w, 6, 10, 0.5);
    MidpointStepper st(h, 1e-2);
    const auto z = bnfkit::testing::random_point(rng, 2 * n, 0.4);
    const auto j = fd_jacobian([&](std::vector<double> v) { st.step(v); return v; }, z, 1e-5);
    CHECK(symplectic_defect(j) < 1e-9);
  }
}

TEST_CASE("forward then backward integration returns to the start") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 3; ++trial) {
    const P h = bnfkit::testing::random_base_hamiltonian(rng, kOmega2, 6, 10, 0.5);
    MidpointStepper fwd(h, 1e-2), bwd(h * Complex<double>(-1.0), 1e-2);
    const auto z0 = bnfkit::testing::random_point(rng, 4, 0.3);
    auto z = z0;
    for (int k = 0; k < 10000; ++k) fwd.step(z);
    for (int k = 0; k < 10000; ++k) bwd.step(z);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(z[i] - z0[i]) < 1e-9);
  }
}

TEST_CASE("drift statistics are stable under step halving") {
  const P h = builtin_family("convex-benchmark");
  const auto z0 = initial_conditions(2, 0.1, 0, 1)[4];
  IntegrateOptions a;
  a.dt = 2e-2;
  a.t_max = 200;
  IntegrateOptions b = a;
  b.dt = 1e-2;
  const double da = action_drift(integrate(h, z0, a)).max_drift;
  const double db = action_drift(integrate(h, z0, b)).max_drift;
  CHECK(da > 0.0);
  CHECK(std::abs(da - db) < 0.01 * db);
}

TEST_CASE("action_drift examples") {
  TrajectoryRecord rec;
  rec.times = {0.0, 0.5, 1.0};
  rec.actions = {{0.2}, {0.2}, {0.2}};
  auto d = action_drift(rec);
  CHECK(d.max_drift == 0.0);
  CHECK(d.time == 0.0);
  rec.actions = {{0.0}, {1.0}, {0.5}};
  d = action_drift(rec);
  CHECK(d.max_drift == 1.0);
  CHECK(d.time == 0.5);
  CHECK_THROWS_AS(action_drift(TrajectoryRecord{}), DomainError);
}

TEST_CASE("drift of a brick-perturbed harmonic system grows with the radius") {
  const BrickSample b = sample_brick(2, 3, 17);
  const P base = ActionPolynomial::linear(kOmega2).lift();
  std::mt19937_64 rng(4);
  const P cubic = bnfkit::testing::random_polynomial(rng, 2, 3, 3, 4) * Complex<double>(0.2);
  const P h = perturb(base, b).hamiltonian + cubic;
  IntegrateOptions opt;
  opt.dt = 1e-2;
  opt.t_max = 100;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto small = initial_conditions(2, 0.1, 1, seed).back();
    const auto large = initial_conditions(2, 0.3, 1, seed).back();
    CHECK(action_drift(integrate(h, small, opt)).max_drift <= action_drift(integrate(h, large, opt)).max_drift);
  }
}

TEST_CASE("record layout, escape and step failure") {
  IntegrateOptions opt;
  opt.dt = 0.1;
  opt.t_max = 1.0;
  opt.record_stride = 3;
  const auto rec = integrate(P::action(1, 0), {0.1, 0.0}, opt);
  REQUIRE(rec.size() == 5u);  // steps 0, 3, 6, 9, 10
  CHECK(rec.times[1] == doctest::Approx(0.3));
  CHECK(rec.times.back() == doctest::Approx(1.0));
  for (std::size_t r = 0; r < rec.size(); ++r) CHECK(rec.actions[r] == formal_actions(rec.states[r]));
  CHECK(rec.scheme_id == "implicit-midpoint");

  // Hyperbolic saddle: leaves the escape radius.
  const auto esc = integrate(P::x(1, 0) * P::y(1, 0), {0.1, 0.1}, {0.01, 100.0, 2.0, 1, {}});
  CHECK(esc.escaped);
  CHECK(esc.times.back() < 100.0);

  // Stiff sextic at a large step: the fixed-point iteration diverges.
  const P stiff = P::action(1, 0) + P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * P::x(1, 0) *
                                        Complex<double>(50.0);
  try {
    integrate(stiff, {1.5, 0.0}, {0.5, 5.0, 100.0, 1, {}});
    FAIL("expected StepFailureError");
  } catch (const StepFailureError& e) {
    CHECK(e.time() == 0.0);
  }
  CHECK_THROWS_AS(integrate(P::action(1, 0), {0.1, 0.0}, {0.0, 1.0, 2.0, 1, {}}), DomainError);
  CHECK_THROWS_AS(integrate(P::action(1, 0), {0.1, 0.0}, {0.1, 0.05, 2.0, 1, {}}), DomainError);
}

TEST_CASE("trajectory csv") {
  IntegrateOptions opt;
  opt.dt = 0.5;
  opt.t_max = 1.0;
  std::ostringstream os;
  write_trajectory_csv(os, integrate(ActionPolynomial::linear(kOmega2).lift(), {0.1, 0.0, 0.0, 0.1}, opt));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2,y1,y2,I1,I2,H");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("initial conditions") {
  for (int n = 1; n <= 3; ++n) {
    const auto pts = initial_conditions(n, 0.05, 4, 9);
    CHECK(static_cast<int>(pts.size()) == fixed_direction_count(n) + 4);
    for (const auto& z : pts) {
      const auto a = formal_actions(z);
      double s = 0.0;
      for (double v : a) s += v * v;
      CHECK(std::sqrt(s) == doctest::Approx(0.05).epsilon(1e-12));
    }
    CHECK(pts == initial_conditions(n, 0.05, 4, 9));
    CHECK(pts.back() != initial_conditions(n, 0.05, 4, 10).back());
  }
  const auto two = initial_conditions(2, 0.1, 0, 1);
  CHECK(formal_actions(two[0])[1] == 0.0);                          // action axis 1, phase 0
  CHECK(two[2][0] == doctest::Approx(0.0).epsilon(1e-12));          // phase π/2
  CHECK(formal_actions(two[6])[0] == doctest::Approx(formal_actions(two[6])[1]));  // diagonal
  CHECK_THROWS_AS(initial_conditions(2, 0.0, 0, 1), DomainError);
}

TEST_CASE("stability_time examples") {
  const P harmonic = ActionPolynomial::linear(kOmega2).lift();
  const auto z0 = initial_conditions(2, 0.1, 0, 1)[0];
  const auto t = stability_time(harmonic, z0, 1.5, 50.0, 0.05);
  CHECK(t.censored);
  CHECK(t.time == doctest::Approx(50.0));

  const P coupled = P::action(2, 0) + P::action(2, 1) + P::x(2, 0) * P::y(2, 1) * Complex<double>(0.05);
  double prev = 0.0;
  for (double c : {1.05, 1.2, 1.35}) {
    const auto e = stability_time(coupled, z0, c, 500.0, 0.05);
    CHECK_FALSE(e.censored);
    CHECK(e.time >= prev);
    prev = e.time;
  }
  CHECK_THROWS_AS(stability_time(coupled, z0, 1.0, 10.0, 0.1), DomainError);
  CHECK_THROWS_AS(stability_time(coupled, {0.0, 0.0, 0.0, 0.0}, 1.5, 10.0, 0.1), DomainError);
}

TEST_CASE("fits on synthetic stability curves") {
  const std::vector<double> rhos{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> poly, expo;
  for (double r : rhos) {
    poly.push_back(5.0 * std::pow(r, -3.0));
    expo.push_back(std::exp(2.0 * std::pow(r, -0.5) + 1.0));
  }
  const auto fp = fit_stability(rhos, poly);
  CHECK(fp.polynomial.p == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::exp(fp.polynomial.c) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(fp.better == "polynomial");
  const auto fe = fit_stability(rhos, expo);
  CHECK(fe.exponential.a == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fe.exponential.c == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(fe.better == "exponential");
  CHECK(fit_stability({0.1}, {3.0}).better == "none");
}

TEST_CASE("scaling experiment on the harmonic family is all lower bounds") {
  ScalingOptions opt;
  opt.t_max = 20.0;
  opt.dt = 0.05;
  opt.seeds = {1, 2};
  const auto curve = scaling_experiment(builtin_family("harmonic"), {0.2, 0.1}, opt);
  CHECK(curve.rows.size() == 4u);
  for (const auto& r : curve.rows) CHECK(r.censored);
  CHECK(curve.fit.lower_bound_only);
  CHECK(curve.fit.better == "none");
  const auto j = fit_to_json(curve);
  CHECK(j["polynomial"].is_null());
  CHECK_THROWS_AS(scaling_experiment(builtin_family("harmonic"), {0.1, 0.2}, opt), DomainError);
}

TEST_CASE("scaling experiment is deterministic and independent of jobs") {
  ScalingOptions opt;
  opt.c = 1.2;
  opt.t_max = 60.0;
  opt.dt = 0.05;
  opt.seeds = {3, 4};
  const auto a = scaling_experiment(builtin_family("resonant-coupled"), {0.1, 0.05}, opt);
  opt.jobs = 4;
  const auto b = scaling_experiment(builtin_family("resonant-coupled"), {0.1, 0.05}, opt);
  std::ostringstream sa, sb;
  write_curve_csv(sa, a);
  write_curve_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("rho,exit_time,censored,direction_id,seed\n", 0) == 0);
  for (const auto& r : a.rows) CHECK_FALSE(r.censored);
}

TEST_CASE("resonant-order exponent follows the remainder order") {
  ScalingOptions opt;
  opt.c = 1.2;
  opt.t_max = 2000.0;
  opt.dt = 0.1;
  opt.random_directions = 0;
  const std::vector<double> rhos{0.4, 0.3, 0.2};
  double prev = 0.0;
  for (int m : {1, 2}) {
    const auto curve = scaling_experiment(builtin_family("resonant-order", {{"m", m}}), rhos, opt);
    REQUIRE(curve.fit.polynomial.valid);
    CHECK(curve.fit.polynomial.p == doctest::Approx(m).epsilon(0.1));
    CHECK(curve.fit.polynomial.p > prev);
    prev = curve.fit.polynomial.p;
  }
}

TEST_CASE("builtin families") {
  CHECK(builtin_family_names().size() == 5u);
  for (const auto& name : builtin_family_names()) {
    const P h = builtin_family(name);
    CHECK(h.reality_flag());
    CHECK(h.min_degree() == 2);
  }
  CHECK(builtin_family("harmonic", {{"n", 3}}).dof() == 3);
  CHECK(builtin_family("quartic-1dof", {{"c", 0.2}}).max_degree() == 4);
  CHECK(builtin_family("resonant-order", {{"m", 3}}).max_degree() == 8);
  CHECK_THROWS_AS(builtin_family("nope"), DomainError);
  CHECK_THROWS_AS(builtin_family("harmonic", {{"omega", 1.0}}), DomainError);
  CHECK_THROWS_AS(builtin_family("harmonic", {{"n", 1.5}}), DomainError);
  // quartic-1dof is exactly the normal-form oracle Hamiltonian.
  const auto nf = normalize(builtin_family("quartic-1dof", {{"c", 0.2}}), 2);
  CHECK(nf.invariants[1].coefficient(Exponent::unit(0) + Exponent::unit(0)) == doctest::Approx(1.5 * 0.2));
}

TEST_CASE("normalizing map: H∘Φ_m matches the normal form and is symplectic") {
  std::mt19937_64 rng(8);
  const P h = bnfkit::testing::random_base_hamiltonian(rng, kOmega2, 6, 12, 0.5);
  const NormalFormResult nf = normalize(h, 2, {6});
  const RealEvaluator eh(h), et(nf.transformed);
  for (double r : {0.02, 0.04}) {
    const auto z = bnfkit::testing::random_point(rng, 4, r);
    const auto phi = apply_normalizing_map(nf, z, 32);
    const double err = std::abs(eh.value(phi) - et.value(z));
    // Truncation error is O(|z|^7).
    CHECK(err < 50.0 * std::pow(r, 7));
    CHECK(std::abs(eh.value(z) - et.value(z)) > 100.0 * err);
  }
  const auto z = bnfkit::testing::random_point(rng, 4, 0.2);
  const auto j = fd_jacobian([&](std::vector<double> v) { return apply_normalizing_map(nf, v, 16); }, z, 1e-5);
  CHECK(symplectic_defect(j) < 1e-9);
}

TEST_CASE("non-finite iterates are a step failure, not a result") {
  const P h = P::action(1, 0) + P::action(1, 0) * P::action(1, 0) * P::action(1, 0) * Complex<double>(400.0);
  MidpointStepper st(h, 1.0);
  std::vector<double> z{1.3, 0.0};
  CHECK_THROWS_AS(st.step(z, 2.5), StepFailureError);
}
