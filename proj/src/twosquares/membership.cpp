#include "sqpart/twosquares.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sqpart/error.hpp"

namespace sqpart::twosquares {

namespace {

std::size_t word_count(std::uint64_t limit) { return static_cast<std::size_t>(limit / 64 + 1); }

}  // namespace

MembershipTable MembershipTable::sieve(std::uint64_t limit, std::uint64_t cap) {
  if (limit == 0) throw DomainError("membership limit must be positive");
  if (limit > cap) {
    throw ResourceError("membership limit " + std::to_string(limit) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<std::uint64_t> words(word_count(limit), 0);
  for (std::uint64_t a = 0; 2 * a * a <= limit; ++a) {
    const std::uint64_t a2 = a * a;
    for (std::uint64_t b = a;; ++b) {
      const std::uint64_t v = a2 + b * b;
      if (v > limit) break;
      words[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
  }
  words[0] &= ~std::uint64_t{1};  // 0 = 0^2 + 0^2 is not a part
  return MembershipTable(limit, std::move(words));
}

MembershipTable MembershipTable::from_words(std::uint64_t limit, std::vector<std::uint64_t> words) {
  if (limit == 0) throw DomainError("membership limit must be positive");
  if (words.size() != word_count(limit)) throw DomainError("bit vector does not match limit");
  words[0] &= ~std::uint64_t{1};
  const unsigned tail = static_cast<unsigned>(limit & 63);
  if (tail != 63) words.back() &= (std::uint64_t{1} << (tail + 1)) - 1;
  return MembershipTable(limit, std::move(words));
}

std::uint64_t MembershipTable::count_up_to(std::uint64_t x) const {
  if (x > limit_) {
    throw DomainError("count requested up to " + std::to_string(x) + " beyond table limit " +
                      std::to_string(limit_));
  }
  const std::size_t full = static_cast<std::size_t>(x >> 6);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < full; ++i) total += static_cast<std::uint64_t>(std::popcount(words_[i]));
  const unsigned rem = static_cast<unsigned>(x & 63);
  const std::uint64_t mask = rem == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (rem + 1)) - 1;
  total += static_cast<std::uint64_t>(std::popcount(words_[full] & mask));
  return total;
}

std::vector<std::uint64_t> MembershipTable::members() const { return members_up_to(limit_); }

std::vector<std::uint64_t> MembershipTable::members_up_to(std::uint64_t x) const {
  if (x > limit_) x = limit_;
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w <= static_cast<std::size_t>(x >> 6); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const std::uint64_t v = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
      if (v > x) return out;
      out.push_back(v);
      bits &= bits - 1;
    }
  }
  return out;
}

bool is_member_by_factorization(std::uint64_t n) {
  if (n == 0) throw DomainError("membership query requires n >= 1");
  while ((n & 1U) == 0) n >>= 1;
  for (std::uint64_t p = 3; p <= n / p; p += 2) {
    if (n % p != 0) continue;
    int multiplicity = 0;
    do {
      n /= p;
      ++multiplicity;
    } while (n % p == 0);
    if (p % 4 == 3 && (multiplicity & 1) != 0) return false;
  }
  // What remains is 1 or a prime appearing once.
  return n % 4 != 3;
}

double landau_reference(double x, double K) {
  if (!(x > std::exp(1.0))) throw DomainError("landau_reference requires x > e");
  return K * x / std::sqrt(std::log(x));
}

}  // namespace sqpart::twosquares
