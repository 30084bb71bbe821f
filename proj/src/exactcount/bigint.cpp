#include "sqpart/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "sqpart/error.hpp"

namespace sqpart {

BigUnsigned BigUnsigned::from_limbs(std::span<const std::uint64_t> limbs) {
  BigUnsigned out;
  out.limbs_.assign(limbs.begin(), limbs.end());
  out.trim();
  return out;
}

BigUnsigned BigUnsigned::from_decimal(std::string_view digits) {
  if (digits.empty()) throw DomainError("empty decimal string");
  BigUnsigned out;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw DomainError("non-digit in decimal string");
    // out = out * 10 + digit
    std::uint64_t carry = static_cast<std::uint64_t>(ch - '0');
    for (auto& limb : out.limbs_) {
      const unsigned __int128 v = static_cast<unsigned __int128>(limb) * 10U + carry;
      limb = static_cast<std::uint64_t>(v);
      carry = static_cast<std::uint64_t>(v >> 64);
    }
    if (carry != 0) out.limbs_.push_back(carry);
  }
  return out;
}

void BigUnsigned::trim() noexcept {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::uint64_t BigUnsigned::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  return 64 * (limbs_.size() - 1) + static_cast<std::uint64_t>(std::bit_width(limbs_.back()));
}

std::string BigUnsigned::to_decimal() const {
  if (limbs_.empty()) return "0";
  constexpr std::uint64_t kChunk = 10'000'000'000'000'000'000ULL;  // 10^19
  std::vector<std::uint64_t> work(limbs_);
  std::vector<std::uint64_t> chunks;
  while (!work.empty()) {
    unsigned __int128 rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      const unsigned __int128 cur = (rem << 64) | work[i];
      work[i] = static_cast<std::uint64_t>(cur / kChunk);
      rem = cur % kChunk;
    }
    chunks.push_back(static_cast<std::uint64_t>(rem));
    while (!work.empty() && work.back() == 0) work.pop_back();
  }
  std::string out = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    const std::string part = std::to_string(chunks[i]);
    out.append(19 - part.size(), '0');
    out += part;
  }
  return out;
}

double BigUnsigned::log() const {
  if (limbs_.empty()) return -std::numeric_limits<double>::infinity();
  const std::uint64_t bits = bit_length();
  if (bits <= 64) return static_cast<double>(std::log(static_cast<long double>(limbs_[0])));
  const std::uint64_t shift = bits - 64;
  const std::size_t word = static_cast<std::size_t>(shift / 64);
  const unsigned offset = static_cast<unsigned>(shift % 64);
  std::uint64_t top = limbs_[word] >> offset;
  if (offset != 0 && word + 1 < limbs_.size()) top |= limbs_[word + 1] << (64 - offset);
  const long double ln2 = 0.693147180559945309417232121458176568L;
  return static_cast<double>(std::log(static_cast<long double>(top)) + static_cast<long double>(shift) * ln2);
}

BigUnsigned& BigUnsigned::operator+=(const BigUnsigned& rhs) {
  if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
  unsigned char carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    const std::uint64_t b = i < rhs.limbs_.size() ? rhs.limbs_[i] : 0;
    if (b == 0 && carry == 0 && i >= rhs.limbs_.size()) break;
    std::uint64_t s = 0;
    const bool c1 = __builtin_add_overflow(limbs_[i], b, &s);
    const bool c2 = __builtin_add_overflow(s, std::uint64_t{carry}, &s);
    limbs_[i] = s;
    carry = static_cast<unsigned char>(c1 || c2);
  }
  if (carry != 0) limbs_.push_back(1);
  return *this;
}

BigUnsigned& BigUnsigned::operator-=(const BigUnsigned& rhs) {
  if (*this < rhs) throw DomainError("unsigned subtraction would go negative");
  unsigned char borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    const std::uint64_t b = i < rhs.limbs_.size() ? rhs.limbs_[i] : 0;
    if (b == 0 && borrow == 0 && i >= rhs.limbs_.size()) break;
    std::uint64_t d = 0;
    const bool b1 = __builtin_sub_overflow(limbs_[i], b, &d);
    const bool b2 = __builtin_sub_overflow(d, std::uint64_t{borrow}, &d);
    limbs_[i] = d;
    borrow = static_cast<unsigned char>(b1 || b2);
  }
  trim();
  return *this;
}

std::strong_ordering operator<=>(const BigUnsigned& a, const BigUnsigned& b) noexcept {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

BigInteger BigInteger::difference(const BigUnsigned& a, const BigUnsigned& b) {
  if (a >= b) return {false, a - b};
  return {true, b - a};
}

std::string BigInteger::to_decimal() const {
  return (negative && !magnitude.is_zero() ? "-" : "") + magnitude.to_decimal();
}

}  // namespace sqpart
