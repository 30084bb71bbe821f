#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/exactcount.hpp"

namespace sqpart::exactcount {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'Q', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class UInt>
void put_le(std::ostream& out, UInt v) {
  std::array<char, sizeof(UInt)> buf{};
  for (std::size_t i = 0; i < sizeof(UInt); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

template <class UInt>
UInt get_le(std::istream& in) {
  std::array<unsigned char, sizeof(UInt)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) throw FormatError("binary table truncated");
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

PartSet read_part_set(std::istream& in, std::string id) {
  std::vector<std::uint64_t> parts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::uint64_t v = 0;
    for (char ch : line) {
      if (ch < '0' || ch > '9') throw FormatError("line " + std::to_string(line_no) + ": not a decimal integer");
      if (v > (UINT64_MAX - 9) / 10) throw FormatError("line " + std::to_string(line_no) + ": part too large");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (v == 0) throw DomainError("line " + std::to_string(line_no) + ": part set contains 0");
    if (!parts.empty() && v <= parts.back()) {
      throw FormatError("line " + std::to_string(line_no) + ": parts must be strictly increasing");
    }
    parts.push_back(v);
  }
  return PartSet::from_list(std::move(parts), std::move(id));
}

void write_csv(const PartitionTable& table, std::ostream& out) {
  out << "n,count\n";
  for (std::uint64_t m = 0; m <= table.n_max(); ++m) out << m << ',' << table.count(m).to_decimal() << '\n';
}

void write_binary(const PartitionTable& table, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, table.n_max());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.set_id().size()));
  out.write(table.set_id().data(), static_cast<std::streamsize>(table.set_id().size()));
  for (const BigUnsigned& c : table.counts()) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.limbs().size()));
    for (std::uint64_t limb : c.limbs()) put_le<std::uint64_t>(out, limb);
  }
}

PartitionTable read_binary(std::istream& in, std::uint64_t cap) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("not a partition table file");
  if (get_le<std::uint32_t>(in) != kVersion) throw FormatError("unsupported partition table version");
  const auto n_max = get_le<std::uint64_t>(in);
  if (n_max > cap) throw ResourceError("stored table n_max " + std::to_string(n_max) + " exceeds cap");
  const auto id_len = get_le<std::uint32_t>(in);
  if (id_len > 4096) throw FormatError("set id too long");
  std::string id(id_len, '\0');
  if (!in.read(id.data(), id_len)) throw FormatError("binary table truncated");
  std::vector<BigUnsigned> counts;
  counts.reserve(n_max + 1);
  std::vector<std::uint64_t> limbs;
  for (std::uint64_t m = 0; m <= n_max; ++m) {
    const auto n_limbs = get_le<std::uint32_t>(in);
    if (n_limbs > 1u << 20) throw FormatError("implausible limb count");
    limbs.resize(n_limbs);
    for (auto& limb : limbs) limb = get_le<std::uint64_t>(in);
    counts.push_back(BigUnsigned::from_limbs(limbs));
  }
  return PartitionTable(std::move(id), std::move(counts));
}

}  // namespace sqpart::exactcount
