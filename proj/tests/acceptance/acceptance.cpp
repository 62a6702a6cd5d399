// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "bnfkit/arith/diophantine.hpp"
#include "bnfkit/bnf/normal_form.hpp"
#include "bnfkit/brick/brick.hpp"
#include "bnfkit/brick/rng.hpp"
#include "bnfkit/dynamics/families.hpp"
#include "bnfkit/dynamics/integrator.hpp"
#include "bnfkit/dynamics/stability.hpp"
#include "bnfkit/genericity/bad_volume.hpp"
#include "bnfkit/genericity/bnf_map.hpp"
#include "bnfkit/genericity/rescale.hpp"
#include "bnfkit/polyalg/phase_space.hpp"
#include "support/random_poly.hpp"
#include "support/stats.hpp"

using namespace bnfkit;
using P = GradedPolynomial;

namespace tol {
constexpr double kOracleAgreement = 1e-12;    // angle-average oracle vs (3/2)c
constexpr double kQuarticB2 = 1e-10;          // criterion 1
constexpr double kOracleSeconds = 1.0;
constexpr double kUniqueness = 1e-9;          // criterion 2
constexpr double kTranslation = 1e-14;        // criterion 3, relative rounding of ω + P_1 - P_1
constexpr double kDeterminant = 1e-5;         // criterion 4
constexpr double kStepHalvingDet = 1e-6;
constexpr double kBrickNorm = 1e-12;          // criteria 5 and 10
constexpr double kGammaStability = 0.10;      // criterion 6
constexpr double kSymplectic = 1e-9;          // criterion 7
constexpr double kReversible = 1e-9;
constexpr double kSecularGrowth = 1.05;       // late-half / early-half max energy error
constexpr double kSecondOrder = 1.5;          // E(dt) <= kSecondOrder · K dt², K from E(2dt)
constexpr double kRoundoffFloor = 1e-12;      // energy errors below this are pure rounding
constexpr double kDominance = 0.95;           // criterion 8
constexpr double kKsP = 0.01;                 // criterion 10
}  // namespace tol

namespace {

int failures = 0;
const int kJobs = std::max(1u, std::thread::hardware_concurrency());

void report(int id, const std::string& name, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %2d [%s] %s: %s (%.1f s)\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int id, const std::string& name, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(id, name, ok, detail, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const std::vector<double> kGoldenPair{1.0, 0.5 * (std::sqrt(5.0) - 1.0)};

// Random frequency in [0.5, 1.5]^2 kept away from resonances of order <= order.
std::vector<double> random_frequency(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  while (true) {
    std::vector<double> w{u(rng), u(rng)};
    if (diophantine_gamma(Frequency(w), 1.0, order).gamma > 0.05) return w;
  }
}

template <class F>
Eigen::MatrixXd fd_jacobian(F map, const std::vector<double>& z, double h) {
  const int d = static_cast<int>(z.size());
  Eigen::MatrixXd j(d, d);
  for (int c = 0; c < d; ++c) {
    auto zp = z, zm = z;
    zp[static_cast<std::size_t>(c)] += h;
    zm[static_cast<std::size_t>(c)] -= h;
    const auto fp = map(zp), fm = map(zm);
    for (int r = 0; r < d; ++r) j(r, c) = (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2 * h);
  }
  return j;
}

}  // namespace

int main() {
  criterion(1, "BNF oracle, H = I + c x^4", [](std::string& d) {
    const double c = 0.3;
    // Oracle: first-order averaging, B2·I² = <c x⁴> over the unperturbed
    // circle x = sqrt(2I) cos θ, by the (exact for trig polynomials) trapezoid rule.
    const int nodes = 64;
    double avg = 0.0;
    for (int i = 0; i < nodes; ++i) avg += std::pow(std::sqrt(2.0) * std::cos(2 * M_PI * i / nodes), 4);
    const double oracle = c * avg / nodes;
    const bool oracle_ok = std::abs(oracle - 1.5 * c) <= tol::kOracleAgreement * 1.5 * c;
    const auto t0 = std::chrono::steady_clock::now();
    const P h = P::action(1, 0) + P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * P::x(1, 0) * Complex<double>(c);
    const NormalFormResult nf = normalize(h, 2);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double b2 = nf.invariants[1].coefficient(Exponent::unit(0) + Exponent::unit(0));
    const double rel = std::abs(b2 - oracle) / std::abs(oracle);
    d = fmt("B2 = %.15g, oracle %.15g, rel err %.2e, normalize %.3f s", b2, oracle, rel, secs);
    return oracle_ok && rel <= tol::kQuarticB2 && secs < tol::kOracleSeconds;
  });

  criterion(2, "invariant uniqueness across truncations", [](std::string& d) {
    std::mt19937_64 rng(2002);
    double worst = 0.0;
    int passed = 0;
    for (int i = 0; i < 50; ++i) {
      const int m = 1 + i % 4;
      const P h = bnfkit::testing::random_base_hamiltonian(rng, random_frequency(rng, 2 * m + 4), 2 * m + 4, 20, 0.3);
      const auto a = normalize(h, m, {2 * m}).invariants;
      const auto b = normalize(h, m, {2 * m + 4}).invariants;
      const double disc = invariant_discrepancy(a, b);
      worst = std::max(worst, disc);
      passed += invariant_uniqueness_check(h, m, 2 * m, 2 * m + 4, tol::kUniqueness);
    }
    d = fmt("%.0f/50 agree, max relative discrepancy %.2e (tol %.0e)", passed, worst, tol::kUniqueness);
    return passed == 50 && worst <= tol::kUniqueness;
  });

  criterion(3, "BNF map triangularity", [](std::string& d) {
    std::mt19937_64 rng(3003);
    int exact = 0;
    double translation = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int n = 1 + i % 2, m = 2 + i % 3;
      std::uniform_int_distribution<int> pick(1, m);
      const int j = pick(rng);
      const std::vector<double> w = n == 1 ? std::vector<double>{1.0} : random_frequency(rng, 2 * m);
      const P h = bnfkit::testing::random_base_hamiltonian(rng, w, 2 * m, 16, 0.3);
      const auto p = bnfkit::testing::random_action_list(rng, n, m, 0.05);
      const auto repl = bnfkit::testing::random_action_polynomial(rng, n, j, j) * 0.05;
      const auto rep = triangularity_check(h, m, p, j, repl);
      exact += rep.lower_unchanged;
      translation = std::max(translation, rep.translation_deviation);
    }
    d = fmt("%.0f/50 bit-identical lower blocks, max |Δ(Q1-P1)| rel %.2e (tol %.0e)", exact, translation,
            tol::kTranslation);
    return exact == 50 && translation <= tol::kTranslation;
  });

  criterion(4, "BNF map unit Jacobian", [](std::string& d) {
    std::mt19937_64 rng(4004);
    double worst = 0.0, halving = 0.0, upper = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int n = 1 + i % 2, m = 1 + i % 3;
      const std::vector<double> w = n == 1 ? std::vector<double>{1.0} : random_frequency(rng, 2 * m);
      const P h = bnfkit::testing::random_base_hamiltonian(rng, w, std::max(2 * m, 3), 16, 0.3);
      const auto rep = jacobian_unit_check(h, m, bnfkit::testing::random_action_list(rng, n, m, 0.05), 1e-4, kJobs);
      worst = std::max({worst, std::abs(rep.determinant - 1.0), std::abs(rep.determinant_half - 1.0)});
      halving = std::max(halving, std::abs(rep.determinant - rep.determinant_half));
      upper = std::max(upper, rep.max_upper_block);
    }
    d = fmt("max |det-1| %.2e (tol %.0e), step-halving |Δdet| %.2e (tol %.0e)", worst, tol::kDeterminant, halving,
            tol::kStepHalvingDet);
    return worst <= tol::kDeterminant && halving <= tol::kStepHalvingDet && upper < 1e-8;
  });

  criterion(5, "rescale norm scaling and brick preservation", [](std::string& d) {
    std::mt19937_64 rng(5005);
    bool exact = true;
    for (int i = 0; i < 20; ++i) {
      const P h = bnfkit::testing::random_base_hamiltonian(rng, random_frequency(rng, 8), 8, 16, 0.3);
      const NormalFormResult nf = normalize(h, 3);
      const double s = 0.05 + 0.045 * i;
      const auto r = rescale(nf, s, 0.95);
      for (int k = 1; k <= 3; ++k) {
        const double f = std::pow(s, 2 * k - 2);
        for (const auto& [l, c] : nf.invariants[static_cast<std::size_t>(k - 1)].terms())
          exact = exact && r.integrable.coefficient(l) == c * f;
      }
    }
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      NormalFormResult nf;
      const BrickSample b = sample_brick(2, 4, seed);
      nf.omega = {1.0, 1.0};
      nf.order_m = 4;
      nf.invariants = b.parts;
      nf.remainder = P(2);
      const auto r = rescale(nf, 0.1 + 0.004 * static_cast<double>(seed), 0.95);
      for (int k = 1; k <= 4; ++k) worst = std::max(worst, bombieri_norm(r.integrable.homogeneous_part(k), k));
    }
    d = std::string(exact ? "coefficients scale exactly by s^(2k-2)" : "coefficient scaling NOT exact") +
        fmt(", max rescaled brick norm %.6f", worst);
    return exact && worst <= 1.0 + tol::kBrickNorm;
  });

  criterion(6, "Diophantine diagnostics", [](std::string& d) {
    const auto res = diophantine_gamma(Frequency({1.0, 1.0}), 1.0, 50, kJobs);
    const bool resonant_ok = res.gamma == 0.0 && res.worst_k == std::vector<int>{1, -1};
    const Frequency golden({1.0, 0.5 * (1.0 + std::sqrt(5.0))});
    const double g50 = diophantine_gamma(golden, 1.0, 50, kJobs).gamma;
    const double g100 = diophantine_gamma(golden, 1.0, 100, kJobs).gamma;
    const double change = std::abs(g50 - g100) / g50;
    d = fmt("(1,1): gamma %.1f, worst_k (%.0f,%.0f); golden gamma_50 %.6f, ", res.gamma, res.worst_k[0],
            res.worst_k[1], g50) +
        fmt("gamma_100 %.6f, change %.2f%% (tol %.0f%%)", g100, 100 * change, 100 * tol::kGammaStability);
    return resonant_ok && g50 > 0.0 && change <= tol::kGammaStability;
  });

  criterion(7, "integrator suite on the builtin families", [](std::string& d) {
    double sym = 0.0, rev = 0.0, growth = 0.0, order = 0.0;
    std::mt19937_64 rng(7007);
    for (const auto& name : builtin_family_names()) {
      const P h = builtin_family(name);
      const int n = h.dof();
      const auto z0 = initial_conditions(n, 0.1, 1, 7).back();
      MidpointStepper st(h, 1e-2);
      for (int t = 0; t < 4; ++t) {
        const auto z = bnfkit::testing::random_point(rng, 2 * n, 0.4);
        const Eigen::MatrixXd j = fd_jacobian([&](std::vector<double> v) { st.step(v); return v; }, z, 1e-5);
        const Eigen::MatrixXd om = symplectic_form(n);
        sym = std::max(sym, (j.transpose() * om * j - om).cwiseAbs().maxCoeff());
      }
      MidpointStepper back(h * Complex<double>(-1.0), 1e-2);
      auto z = z0;
      for (int k = 0; k < 10000; ++k) st.step(z);
      for (int k = 0; k < 10000; ++k) back.step(z);
      for (std::size_t i = 0; i < z.size(); ++i) rev = std::max(rev, std::abs(z[i] - z0[i]));

      auto energy_errors = [&](double dt) {
        IntegrateOptions o;
        o.dt = dt;
        o.t_max = 1e4;
        o.record_stride = static_cast<int>(std::lround(0.1 / dt));
        const auto rec = integrate(h, z0, o);
        double early = 0.0, late = 0.0;
        for (std::size_t i = 0; i < rec.size(); ++i) {
          const double e = std::abs(rec.energy[i] - rec.energy[0]);
          (2 * i < rec.size() ? early : late) = std::max(2 * i < rec.size() ? early : late, e);
        }
        return std::pair{early, late};
      };
      const auto [e1, l1] = energy_errors(1e-2);  // 10⁶ steps
      const auto [e2, l2] = energy_errors(2e-2);
      const double fine = std::max(e1, l1), coarse = std::max(e2, l2);
      if (fine > tol::kRoundoffFloor) {
        growth = std::max(growth, l1 / e1);
        order = std::max(order, fine / (coarse / 4.0));
      }
    }
    d = fmt("symplectic defect %.1e, reversibility %.1e, late/early energy error %.3f, E(dt)/(K dt^2) %.3f", sym, rev,
            growth, order);
    return sym < tol::kSymplectic && rev < tol::kReversible && growth <= tol::kSecularGrowth &&
           order <= tol::kSecondOrder;
  });

  criterion(8, "stability phenomenology", [](std::string& d) {
    ScalingOptions o;
    o.c = 1.2;
    o.t_max = 300.0;
    o.dt = 0.05;
    o.random_directions = 2;
    o.seeds = {1, 2, 3, 4};
    o.jobs = kJobs;
    const std::vector<double> rhos{0.2, 0.1, 0.05, 0.02, 0.01};
    const auto convex = scaling_experiment(builtin_family("convex-benchmark"), rhos, o);
    const auto resonant = scaling_experiment(builtin_family("resonant-coupled"), rhos, o);
    int dominate = 0;
    for (std::size_t i = 0; i < convex.rows.size(); ++i)
      dominate += convex.rows[i].exit_time >= resonant.rows[i].exit_time;
    const double frac = static_cast<double>(dominate) / static_cast<double>(convex.rows.size());

    ScalingOptions q = o;
    q.t_max = 20000.0;
    q.dt = 0.1;
    q.seeds = {1};
    q.random_directions = 0;
    std::vector<double> p;
    for (int m : {2, 3, 4})
      p.push_back(scaling_experiment(builtin_family("resonant-order", {{"m", m}}), {0.4, 0.3, 0.2, 0.15}, q)
                      .fit.polynomial.p);
    const bool increasing = p[0] < p[1] && p[1] < p[2];
    d = fmt("definite torsion dominates %.0f%% of rows (need %.0f%%); ", 100 * frac, 100 * tol::kDominance) +
        fmt("fitted p for m = 2,3,4: %.2f, %.2f, %.2f", p[0], p[1], p[2]);
    return frac >= tol::kDominance && increasing;
  });

  criterion(9, "bad-parameter volume proxy", [](std::string& d) {
    const Exponent i1 = Exponent::unit(0), i2 = Exponent::unit(1);
    VolumeOptions opt;
    opt.samples = 20000;
    opt.grid = 41;
    opt.jobs = kJobs;
    const auto definite =
        volume_sweep(ActionPolynomial(2, {{i1 + i1, 1.0}, {i2 + i2, 1.0}}), 0.5, {1e-4, 1e-2, 1.0, 3.9}, opt);
    int bad = 0;
    for (const auto& r : definite) bad += r.bad;
    const auto rows =
        volume_sweep(ActionPolynomial::monomial(1, i1 + i1 + i1, 1.0), 0.1, {1e-6, 1e-5, 1e-4, 1e-3}, opt);
    const auto fit = fit_volume_power_law(rows);
    const double lo = fit.slope - 1.959963984540054 * fit.slope_stderr;
    d = fmt("||I||^2 bad samples below margin: %.0f; I1^3 slope %.3f +- %.3f (95%% CI low %.3f)", bad, fit.slope,
            fit.slope_stderr, lo);
    return bad == 0 && fit.points == 4 && lo > 0.0;
  });

  criterion(10, "brick measure", [](std::string& d) {
    const int n = 2, k = 3, draws = 10000;
    const int dim = homogeneous_dimension(n, k);
    double worst = 0.0;
    std::vector<double> radial;
    for (int i = 0; i < draws; ++i) {
      const BrickSample b = sample_brick(n, 4, static_cast<std::uint64_t>(i));
      for (int j = 1; j <= 4; ++j) worst = std::max(worst, bombieri_norm(b.parts[static_cast<std::size_t>(j - 1)], j));
      radial.push_back(std::pow(bombieri_norm(b.parts[static_cast<std::size_t>(k - 1)], k), dim));
    }
    const double p = bnfkit::testing::ks_one_sample(radial, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value;
    const bool same = brick_to_json(sample_brick(3, 5, 42)).dump() == brick_to_json(sample_brick(3, 5, 42)).dump();
    d = fmt("max norm %.15f over 10^4 samples, radial KS p = %.3f (need > %.2f), ", worst, p, tol::kKsP) +
        (same ? "seed replay byte-identical" : "seed replay DIFFERS");
    return worst <= 1.0 + tol::kBrickNorm && p > tol::kKsP && same;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
