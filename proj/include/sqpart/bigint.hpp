#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqpart {

/// Arbitrary-precision non-negative integer; little-endian 64-bit limbs without leading zeros.
class BigUnsigned {
 public:
  BigUnsigned() = default;
  BigUnsigned(std::uint64_t v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) limbs_.push_back(v);
  }
  static BigUnsigned from_limbs(std::span<const std::uint64_t> limbs);
  /// Parses a non-empty string of decimal digits; throws DomainError otherwise.
  static BigUnsigned from_decimal(std::string_view digits);

  std::span<const std::uint64_t> limbs() const noexcept { return limbs_; }
  bool is_zero() const noexcept { return limbs_.empty(); }
  std::uint64_t bit_length() const noexcept;

  std::string to_decimal() const;
  /// Natural log from the top 64 significant bits plus the bit length. Zero maps to -inf.
  double log() const;

  BigUnsigned& operator+=(const BigUnsigned& rhs);
  /// Requires *this >= rhs; throws DomainError otherwise.
  BigUnsigned& operator-=(const BigUnsigned& rhs);
  friend BigUnsigned operator+(BigUnsigned a, const BigUnsigned& b) { return a += b; }
  friend BigUnsigned operator-(BigUnsigned a, const BigUnsigned& b) { return a -= b; }

  friend std::strong_ordering operator<=>(const BigUnsigned& a, const BigUnsigned& b) noexcept;
  friend bool operator==(const BigUnsigned& a, const BigUnsigned& b) noexcept = default;

 private:
  void trim() noexcept;
  std::vector<std::uint64_t> limbs_;
};

/// Signed wrapper used where a difference of counts may be negative.
struct BigInteger {
  bool negative = false;
  BigUnsigned magnitude;

  static BigInteger difference(const BigUnsigned& a, const BigUnsigned& b);
  std::string to_decimal() const;
  friend bool operator==(const BigInteger&, const BigInteger&) = default;
};

}  // namespace sqpart
