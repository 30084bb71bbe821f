#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sqpart::twosquares {

/// Default ceiling on a membership table's limit (one bit per integer, so ~250 MB).
inline constexpr std::uint64_t kDefaultLimitCap = 2'000'000'000ULL;

/// Membership flags for S = {a^2 + b^2 : a, b >= 0} restricted to 1..limit.
///
/// Bits are packed LSB-first into 64-bit words; bit l corresponds to the integer l,
/// so bit 0 (the integer 0) is always clear. Immutable once built.
class MembershipTable {
 public:
  /// Builds the table by marking a^2 + b^2 for all 0 <= a <= b with a^2 + b^2 <= limit.
  /// Throws DomainError for limit == 0 and ResourceError for limit > cap.
  static MembershipTable sieve(std::uint64_t limit, std::uint64_t cap = kDefaultLimitCap);

  /// Wraps an externally produced bit vector (see read_bitset). `words` must cover 0..limit.
  static MembershipTable from_words(std::uint64_t limit, std::vector<std::uint64_t> words);

  std::uint64_t limit() const noexcept { return limit_; }

  bool contains(std::uint64_t n) const noexcept {
    return n <= limit_ && ((words_[n >> 6] >> (n & 63)) & 1U) != 0;
  }

  /// S(x) = #{l <= x : l in S}. Throws DomainError when x > limit.
  std::uint64_t count_up_to(std::uint64_t x) const;

  /// Members in increasing order.
  std::vector<std::uint64_t> members() const;
  std::vector<std::uint64_t> members_up_to(std::uint64_t x) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const MembershipTable&, const MembershipTable&) = default;

 private:
  MembershipTable(std::uint64_t limit, std::vector<std::uint64_t> words)
      : limit_(limit), words_(std::move(words)) {}

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_;
};

/// True iff every prime p = 3 (mod 4) divides n to an even power (trial division).
bool is_member_by_factorization(std::uint64_t n);

/// K * x / sqrt(log x), the leading-order count of members up to x. Requires x > e.
double landau_reference(double x, double K);

struct ConstantApproximation {
  double value = 0.0;
  double abs_error_bound = 0.0;
  int terms_used = 0;
};

/// Landau-Ramanujan constant to within target_abs_error, target in [1e-15, 0.1].
ConstantApproximation landau_ramanujan_constant(double target_abs_error);

/// Same computation with an explicit series length; exposed for convergence tests.
ConstantApproximation landau_ramanujan_constant_with_terms(int terms);

/// K at full double precision, computed once.
double landau_ramanujan_K();

/// (1/sqrt 2) * prod_{p = 3 mod 4, p <= prime_limit} (1 - p^-2)^(-1/2), the raw Euler product.
double landau_ramanujan_euler_product(std::uint64_t prime_limit);

// Serialization. The text form is one decimal member per line; the bitset form is an
// 8-byte little-endian limit followed by ceil((limit + 1) / 8) bytes, bit i of byte k
// flagging the integer 8k + i.
void write_members_text(const MembershipTable& table, std::ostream& out);
void write_bitset(const MembershipTable& table, std::ostream& out);
MembershipTable read_bitset(std::istream& in, std::uint64_t cap = kDefaultLimitCap);

}  // namespace sqpart::twosquares
