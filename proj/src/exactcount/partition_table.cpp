#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "sqpart/error.hpp"
#include "sqpart/exactcount.hpp"
#include "sqpart/simd/kernels.hpp"

namespace sqpart::exactcount {

namespace {

// Every restricted count is at most the unrestricted p(m) < exp(pi sqrt(2m/3)), so this many
// limbs always hold counts[m]; the kernels report any carry past it.
std::uint32_t limb_bound(std::uint64_t m) {
  const double bits = std::numbers::pi * std::sqrt(2.0 * static_cast<double>(m) / 3.0) / std::numbers::ln2;
  return static_cast<std::uint32_t>(bits / 64.0) + 1;
}

}  // namespace

PartSet PartSet::from_table(const twosquares::MembershipTable& table, std::uint64_t up_to) {
  if (up_to > table.limit()) {
    throw DomainError("membership table limit " + std::to_string(table.limit()) + " does not cover " +
                      std::to_string(up_to));
  }
  return PartSet(table.members_up_to(up_to), "twosquares");
}

PartSet PartSet::from_list(std::vector<std::uint64_t> parts, std::string id) {
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t p : parts) {
    if (p == 0) throw DomainError("part set contains 0");
    if (!seen.insert(p).second) throw DomainError("part set contains duplicate " + std::to_string(p));
  }
  return PartSet(std::move(parts), std::move(id));
}

PartSet PartSet::all_positive(std::uint64_t up_to) {
  std::vector<std::uint64_t> parts(up_to);
  for (std::uint64_t i = 0; i < up_to; ++i) parts[i] = i + 1;
  return PartSet(std::move(parts), "all");
}

PartSet PartSet::odd(std::uint64_t up_to) {
  std::vector<std::uint64_t> parts;
  for (std::uint64_t i = 1; i <= up_to; i += 2) parts.push_back(i);
  return PartSet(std::move(parts), "odd");
}

bool PartSet::contains(std::uint64_t part) const {
  return std::find(parts_.begin(), parts_.end(), part) != parts_.end();
}

PartitionTable::PartitionTable(std::string set_id, std::vector<BigUnsigned> counts)
    : set_id_(std::move(set_id)), counts_(std::move(counts)) {
  if (counts_.empty()) throw DomainError("partition table needs at least counts[0]");
}

const BigUnsigned& PartitionTable::count(std::uint64_t m) const {
  if (m >= counts_.size()) {
    throw DomainError("index " + std::to_string(m) + " beyond table n_max " + std::to_string(n_max()));
  }
  return counts_[m];
}

PartitionTable partition_counts(std::uint64_t n_max, const PartSet& parts, std::uint64_t cap) {
  if (n_max > cap) {
    throw ResourceError("n_max " + std::to_string(n_max) + " exceeds DP cap " + std::to_string(cap));
  }
  for (std::uint64_t p : parts.parts()) {
    if (p == 0) throw DomainError("part set contains 0");
  }
  const std::size_t stride = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::uint32_t> width(stride);
  for (std::size_t m = 0; m < stride; ++m) width[m] = limb_bound(m);
  const std::uint32_t height = width.back();

  std::vector<std::uint64_t> limbs(static_cast<std::size_t>(height) * stride, 0);
  limbs[0] = 1;
  const simd::LimbGrid grid{limbs.data(), stride};
  for (std::uint64_t part : parts.parts()) {
    if (part > n_max) continue;
    if (!simd::add_lagged(grid, static_cast<std::size_t>(part), static_cast<std::size_t>(n_max), width)) {
      throw NumericError("partition count overflowed its limb bound");
    }
  }

  std::vector<BigUnsigned> counts(stride);
  std::vector<std::uint64_t> scratch(height);
  for (std::size_t m = 0; m < stride; ++m) {
    for (std::uint32_t k = 0; k < width[m]; ++k) scratch[k] = limbs[k * stride + m];
    counts[m] = BigUnsigned::from_limbs(std::span(scratch).first(width[m]));
  }
  return PartitionTable(parts.id(), std::move(counts));
}

BigUnsigned partition_count(std::uint64_t n, const PartSet& parts, std::uint64_t cap) {
  return partition_counts(n, parts, cap).count(n);
}

BigInteger difference_exact(std::uint64_t n, const PartitionTable& table) {
  if (n + 1 > table.n_max()) {
    throw DomainError("difference at " + std::to_string(n) + " needs n_max >= " + std::to_string(n + 1));
  }
  return BigInteger::difference(table.count(n + 1), table.count(n));
}

namespace {

std::uint64_t count_descending(std::uint64_t remaining, std::span<const std::uint64_t> parts_desc,
                               std::size_t first) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t i = first; i < parts_desc.size(); ++i) {
    if (parts_desc[i] <= remaining) total += count_descending(remaining - parts_desc[i], parts_desc, i);
  }
  return total;
}

}  // namespace

std::uint64_t enumeration_oracle(std::uint64_t n, const PartSet& parts) {
  if (n > kOracleMaxN) throw DomainError("enumeration oracle limited to n <= 40");
  std::vector<std::uint64_t> desc;
  for (std::uint64_t p : parts.parts()) {
    if (p == 0) throw DomainError("part set contains 0");
    if (p <= n) desc.push_back(p);
  }
  std::sort(desc.begin(), desc.end(), std::greater<>());
  return count_descending(n, desc, 0);
}

}  // namespace sqpart::exactcount
