#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "bnfkit/polyalg/phase_space.hpp"

namespace bnfkit {

/// |k·ω| ≤ kResonanceGuard · ||k||_1 · max_j |ω_j| counts as k·ω = 0.
inline constexpr double kResonanceGuard = 1e-12;

bool is_resonant(const Frequency& omega, const std::vector<int>& k);

struct ResonanceHit {
  int order = 0;  // ||k||_1
  std::vector<int> k;
};

/// Smallest ||k||_1 ≤ K with k·ω = 0 (within the guard). Shells are scanned
/// in increasing L1 norm; within a shell the lexicographically largest k with
/// positive first nonzero entry is reported first.
std::optional<ResonanceHit> resonance_order(const Frequency& omega, int k_max);

struct DiophantineReport {
  Frequency omega;
  double tau = 1.0;
  int k_max = 1;
  /// min over 0 < ||k||_∞ ≤ K of |k·ω| · ||k||_∞^τ (0 if some k is resonant).
  double gamma = 0.0;
  std::vector<int> worst_k;
  std::optional<ResonanceHit> resonance;
};

/// Exhaustive box scan with sign reduction (first nonzero entry positive).
/// Ties are broken by smaller ||k||_∞, then lexicographically smaller k. The
/// scan is split over `jobs` threads along the first coordinate.
DiophantineReport diophantine_gamma(const Frequency& omega, double tau, int k_max, int jobs = 1);

nlohmann::json diophantine_to_json(const DiophantineReport& r);

}  // namespace bnfkit
