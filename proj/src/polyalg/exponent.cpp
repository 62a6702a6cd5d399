#include "bnfkit/polyalg/exponent.hpp"

#include <algorithm>
#include <string>

#include "bnfkit/errors.hpp"

namespace bnfkit {

Exponent Exponent::from(std::span<const int> slots) {
  if (static_cast<int>(slots.size()) > kMaxSlots)
    throw DimensionError("exponent has " + std::to_string(slots.size()) + " slots, at most " +
                         std::to_string(kMaxSlots) + " supported");
  std::uint64_t bits = 0;
  int total = 0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s] < 0 || slots[s] > kMaxExponent) throw DomainError("exponent entry out of range");
    total += slots[s];
    bits |= static_cast<std::uint64_t>(slots[s]) << shift(static_cast<int>(s));
  }
  if (total > kMaxExponent) throw DomainError("total degree exceeds 255");
  return Exponent(bits);
}

std::vector<int> Exponent::slots(int count) const {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) out[static_cast<std::size_t>(s)] = (*this)[s];
  return out;
}

Exponent phase_exponent(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw DimensionError("phase exponent halves differ in length");
  std::vector<int> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return Exponent::from(all);
}

namespace {

void enumerate(int n, int slot, int remaining, std::vector<int>& cur, std::vector<Exponent>& out) {
  if (slot == n - 1) {
    cur[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(Exponent::from(cur));
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[static_cast<std::size_t>(slot)] = v;
    enumerate(n, slot + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<Exponent> homogeneous_exponents(int n, int k) {
  if (n < 1 || n > kMaxSlots) throw DimensionError("unsupported variable count");
  if (k < 0) throw DomainError("negative degree");
  std::vector<Exponent> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  enumerate(n, 0, k, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

double multinomial(Exponent l, int n) {
  double result = 1.0;
  int running = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 1; i <= l[j]; ++i) {
      ++running;
      result = result * running / i;
    }
  }
  return result;
}

double binomial(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace bnfkit
