#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sqpart/bigint.hpp"
#include "sqpart/twosquares.hpp"

namespace sqpart::exactcount {

/// Default ceiling on n_max for the exact DP.
inline constexpr std::uint64_t kDefaultCountCap = 50'000;

/// Largest n accepted by enumeration_oracle.
inline constexpr std::uint64_t kOracleMaxN = 40;

/// A set of allowed parts, kept in the order the DP will process them.
class PartSet {
 public:
  /// Members of the table up to `up_to`, id "twosquares". Throws DomainError if up_to > limit.
  static PartSet from_table(const twosquares::MembershipTable& table, std::uint64_t up_to);
  /// Explicit parts; rejects 0 and duplicates. Order is preserved.
  static PartSet from_list(std::vector<std::uint64_t> parts, std::string id);
  static PartSet all_positive(std::uint64_t up_to);
  static PartSet odd(std::uint64_t up_to);

  const std::string& id() const noexcept { return id_; }
  std::span<const std::uint64_t> parts() const noexcept { return parts_; }
  bool contains(std::uint64_t part) const;

 private:
  PartSet(std::vector<std::uint64_t> parts, std::string id) : parts_(std::move(parts)), id_(std::move(id)) {}
  std::vector<std::uint64_t> parts_;
  std::string id_;
};

/// Exact restricted partition counts p_A(0..n_max). Immutable.
class PartitionTable {
 public:
  PartitionTable(std::string set_id, std::vector<BigUnsigned> counts);

  std::uint64_t n_max() const noexcept { return counts_.size() - 1; }
  const std::string& set_id() const noexcept { return set_id_; }
  /// Throws DomainError when m > n_max.
  const BigUnsigned& count(std::uint64_t m) const;
  double log_count(std::uint64_t m) const { return count(m).log(); }
  std::span<const BigUnsigned> counts() const noexcept { return counts_; }

  friend bool operator==(const PartitionTable&, const PartitionTable&) = default;

 private:
  std::string set_id_;
  std::vector<BigUnsigned> counts_;
};

/// Coin-style DP: for each part l (in PartSet order) and m = l..n_max, counts[m] += counts[m - l].
/// Parts above n_max are ignored. Throws ResourceError when n_max > cap.
PartitionTable partition_counts(std::uint64_t n_max, const PartSet& parts, std::uint64_t cap = kDefaultCountCap);

BigUnsigned partition_count(std::uint64_t n, const PartSet& parts, std::uint64_t cap = kDefaultCountCap);

/// counts[n + 1] - counts[n]; throws DomainError when n + 1 > n_max.
BigInteger difference_exact(std::uint64_t n, const PartitionTable& table);

/// Backtracking count over non-increasing part sequences; n <= kOracleMaxN.
std::uint64_t enumeration_oracle(std::uint64_t n, const PartSet& parts);

/// Newline-delimited decimal parts, strictly increasing, no zero.
PartSet read_part_set(std::istream& in, std::string id);

/// CSV with header "n,count", counts in decimal.
void write_csv(const PartitionTable& table, std::ostream& out);

// Binary form: "SQPT" magic, u32 version, u64 n_max, u32 id length + id bytes, then per
// entry a u32 limb count followed by that many u64 limbs; all little-endian.
void write_binary(const PartitionTable& table, std::ostream& out);
PartitionTable read_binary(std::istream& in, std::uint64_t cap = kDefaultCountCap);

}  // namespace sqpart::exactcount
