#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/twosquares.hpp"

namespace sqpart::twosquares {

void write_members_text(const MembershipTable& table, std::ostream& out) {
  for (std::uint64_t v : table.members()) out << v << '\n';
}

void write_bitset(const MembershipTable& table, std::ostream& out) {
  std::array<char, 8> header{};
  for (int i = 0; i < 8; ++i) header[i] = static_cast<char>((table.limit() >> (8 * i)) & 0xFF);
  out.write(header.data(), header.size());
  const std::uint64_t n_bytes = table.limit() / 8 + 1;
  const auto words = table.words();
  std::string body(n_bytes, '\0');
  for (std::uint64_t k = 0; k < n_bytes; ++k) {
    body[k] = static_cast<char>((words[k / 8] >> (8 * (k % 8))) & 0xFF);
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

MembershipTable read_bitset(std::istream& in, std::uint64_t cap) {
  std::array<unsigned char, 8> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), header.size())) {
    throw FormatError("bitset file truncated in header");
  }
  std::uint64_t limit = 0;
  for (int i = 0; i < 8; ++i) limit |= std::uint64_t{header[i]} << (8 * i);
  if (limit == 0) throw FormatError("bitset file declares limit 0");
  if (limit > cap) throw ResourceError("bitset limit " + std::to_string(limit) + " exceeds cap");
  const std::uint64_t n_bytes = limit / 8 + 1;
  std::string body(n_bytes, '\0');
  if (!in.read(body.data(), static_cast<std::streamsize>(n_bytes))) {
    throw FormatError("bitset file truncated in body");
  }
  std::vector<std::uint64_t> words(limit / 64 + 1, 0);
  for (std::uint64_t k = 0; k < n_bytes; ++k) {
    words[k / 8] |= std::uint64_t{static_cast<unsigned char>(body[k])} << (8 * (k % 8));
  }
  return MembershipTable::from_words(limit, std::move(words));
}

}  // namespace sqpart::twosquares
