#include "bnfkit/arith/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace bnfkit {

namespace {

double dot(const Frequency& omega, const std::vector<int>& k) {
  double s = 0.0;
  for (int j = 0; j < omega.dof(); ++j) s += k[static_cast<std::size_t>(j)] * omega[j];
  return s;
}

int norm1(const std::vector<int>& k) {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

int norm_inf(const std::vector<int>& k) {
  int s = 0;
  for (int v : k) s = std::max(s, std::abs(v));
  return s;
}

bool first_nonzero_positive(const std::vector<int>& k) {
  for (int v : k)
    if (v != 0) return v > 0;
  return false;
}

// All k with ||k||_1 = r, first nonzero positive, in descending lex order.
void l1_shell(int n, int r, int slot, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (slot == n - 1) {
    for (int v : {r, -r}) {
      cur[static_cast<std::size_t>(slot)] = v;
      if (first_nonzero_positive(cur)) out.push_back(cur);
      if (r == 0) break;
    }
    return;
  }
  for (int v = r; v >= -r; --v) {
    cur[static_cast<std::size_t>(slot)] = v;
    l1_shell(n, r - std::abs(v), slot + 1, cur, out);
  }
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> k;
};

// Strict "better than" with the documented tie-break.
bool better(double value, const std::vector<int>& k, const Best& best) {
  if (best.k.empty()) return true;
  if (value != best.value) return value < best.value;
  const int a = norm_inf(k), b = norm_inf(best.k);
  if (a != b) return a < b;
  return k < best.k;
}

Best scan_slice(const Frequency& omega, double tau, int k_max, int first_lo, int first_hi) {
  const int n = omega.dof();
  const double wmax = omega.max_abs();
  Best best;
  std::vector<int> k(static_cast<std::size_t>(n), -k_max);
  for (int first = first_lo; first <= first_hi; ++first) {
    k[0] = first;
    for (int j = 1; j < n; ++j) k[static_cast<std::size_t>(j)] = -k_max;
    while (true) {
      if (first_nonzero_positive(k)) {
        const double kw = std::abs(dot(omega, k));
        const int ninf = norm_inf(k);
        const double value = kw <= kResonanceGuard * norm1(k) * wmax ? 0.0 : kw * std::pow(ninf, tau);
        if (better(value, k, best)) best = {value, k};
      }
      int j = n - 1;
      while (j >= 1 && k[static_cast<std::size_t>(j)] == k_max) k[static_cast<std::size_t>(j--)] = -k_max;
      if (j < 1) break;
      ++k[static_cast<std::size_t>(j)];
    }
  }
  return best;
}

}  // namespace

bool is_resonant(const Frequency& omega, const std::vector<int>& k) {
  if (static_cast<int>(k.size()) != omega.dof()) throw DimensionError("k and omega differ in length");
  return std::abs(dot(omega, k)) <= kResonanceGuard * norm1(k) * omega.max_abs();
}

std::optional<ResonanceHit> resonance_order(const Frequency& omega, int k_max) {
  if (k_max < 1) throw DomainError("resonance_order: cutoff must be >= 1");
  const int n = omega.dof();
  for (int r = 1; r <= k_max; ++r) {
    std::vector<std::vector<int>> shell;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    l1_shell(n, r, 0, cur, shell);
    for (const auto& k : shell)
      if (is_resonant(omega, k)) return ResonanceHit{r, k};
  }
  return std::nullopt;
}

DiophantineReport diophantine_gamma(const Frequency& omega, double tau, int k_max, int jobs) {
  if (!(tau > 0.0)) throw DomainError("diophantine_gamma: tau must be positive");
  if (k_max < 1) throw DomainError("diophantine_gamma: cutoff must be >= 1");
  if (omega.dof() < 1) throw DimensionError("diophantine_gamma: empty frequency");
  // The first coordinate is >= 0 after sign reduction.
  jobs = std::clamp(jobs, 1, k_max + 1);
  std::vector<Best> parts(static_cast<std::size_t>(jobs));
  std::vector<std::thread> threads;
  const int total = k_max + 1;
  for (int t = 0; t < jobs; ++t) {
    const int lo = t * total / jobs, hi = (t + 1) * total / jobs - 1;
    auto work = [&, t, lo, hi] { parts[static_cast<std::size_t>(t)] = scan_slice(omega, tau, k_max, lo, hi); };
    if (jobs == 1) {
      work();
    } else {
      threads.emplace_back(work);
    }
  }
  for (auto& th : threads) th.join();
  Best best;
  for (const auto& p : parts)
    if (!p.k.empty() && better(p.value, p.k, best)) best = p;

  DiophantineReport r;
  r.omega = omega;
  r.tau = tau;
  r.k_max = k_max;
  r.gamma = best.value;
  r.worst_k = best.k;
  r.resonance = resonance_order(omega, k_max);
  return r;
}

nlohmann::json diophantine_to_json(const DiophantineReport& r) {
  nlohmann::json j;
  j["schema"] = "bnfkit.diophantine/1";
  j["omega"] = r.omega.values();
  j["tau"] = r.tau;
  j["K"] = r.k_max;
  j["gamma_K"] = r.gamma;
  j["worst_k"] = r.worst_k;
  if (r.resonance) {
    j["resonance_order"] = r.resonance->order;
    j["resonance_k"] = r.resonance->k;
  } else {
    j["resonance_order"] = nullptr;
  }
  return j;
}

}  // namespace bnfkit
