#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace bnfkit {

/// Maximum number of degrees of freedom supported by the packed exponent.
inline constexpr int kMaxDof = 4;
inline constexpr int kMaxSlots = 2 * kMaxDof;
inline constexpr int kMaxExponent = 255;

/// Exponent vector packed into 64 bits, one byte per slot, slot 0 most
/// significant. Phase-space monomials ζ^a ζ̄^b use slots 0..n-1 for a and
/// n..2n-1 for b; action monomials I^l use slots 0..n-1.
///
/// Ordering is graded lexicographic: total degree first, then the slots
/// lexicographically.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr explicit Exponent(std::uint64_t bits) : bits_(bits) {}

  static Exponent from(std::span<const int> slots);
  static constexpr Exponent unit(int slot) { return Exponent(std::uint64_t{1} << shift(slot)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int operator[](int slot) const { return static_cast<int>((bits_ >> shift(slot)) & 0xFFu); }
  constexpr int degree() const {
    // Byte sum; exact while the total stays below 256.
    return static_cast<int>((bits_ * 0x0101010101010101ULL) >> 56);
  }
  std::vector<int> slots(int count) const;

  constexpr Exponent operator+(Exponent o) const { return Exponent(bits_ + o.bits_); }
  // Caller guarantees every slot of o is <= the matching slot of *this.
  constexpr Exponent operator-(Exponent o) const { return Exponent(bits_ - o.bits_); }

  constexpr bool operator==(const Exponent&) const = default;
  constexpr std::strong_ordering operator<=>(const Exponent& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    return bits_ <=> o.bits_;
  }

  static constexpr int shift(int slot) { return 8 * (kMaxSlots - 1 - slot); }

 private:
  std::uint64_t bits_ = 0;
};

struct ExponentHash {
  std::size_t operator()(Exponent e) const noexcept {
    std::uint64_t x = e.bits() + 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

/// Phase-space exponent (a, b) for n degrees of freedom.
Exponent phase_exponent(std::span<const int> a, std::span<const int> b);

/// Lift of an action exponent l to the phase-space monomial ζ^l ζ̄^l.
constexpr Exponent lift_action_exponent(Exponent l, int n) {
  return Exponent(l.bits() | (l.bits() >> (8 * n)));
}

/// (a, b) -> (b, a).
constexpr Exponent mirror_exponent(Exponent e, int n) {
  const int w = 8 * n;
  const std::uint64_t a = e.bits() >> (64 - w);
  const std::uint64_t b = (e.bits() >> (64 - 2 * w)) & ((std::uint64_t{1} << w) - 1);
  return Exponent((b << (64 - w)) | (a << (64 - 2 * w)));
}

/// True iff a == b for the phase-space exponent.
constexpr bool is_diagonal(Exponent e, int n) {
  for (int j = 0; j < n; ++j)
    if (e[j] != e[n + j]) return false;
  return true;
}

/// All action exponents of total degree k in n variables, graded-lex sorted.
std::vector<Exponent> homogeneous_exponents(int n, int k);

/// Multinomial coefficient k! / (l_1! ... l_n!) with k = |l|.
double multinomial(Exponent l, int n);

/// Binomial coefficient C(a, b) as double.
double binomial(int a, int b);

}  // namespace bnfkit
