#include "weyllab/count_io.hpp"

#include <array>
#include <istream>
#include <iterator>
#include <ostream>
#include <vector>

#include "weyllab/error.hpp"

namespace weyllab {
namespace {

constexpr std::array<char, 4> kMagic{'W', 'L', 'C', 'T'};
constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) hash_ = (hash_ ^ p[i]) * kFnvPrime;
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  }
  template <typename T>
  void integer(T v) {
    std::array<unsigned char, sizeof(T)> buf{};
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(buf.data(), buf.size());
  }
  std::uint64_t hash() const { return hash_; }

private:
  std::ostream& out_;
  std::uint64_t hash_ = kFnvOffset;
};

class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw CorruptData("count table: truncated");
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) hash_ = (hash_ ^ p[i]) * kFnvPrime;
  }
  template <typename T>
  T integer() {
    std::array<unsigned char, sizeof(T)> buf{};
    bytes(buf.data(), buf.size());
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(buf[i]) << (8 * i));
    return v;
  }
  std::uint64_t hash() const { return hash_; }

private:
  std::istream& in_;
  std::uint64_t hash_ = kFnvOffset;
};

}  // namespace

void write_count_table(std::ostream& out, const CountTable& table) {
  Writer w(out);
  w.bytes(kMagic.data(), kMagic.size());
  w.integer<std::uint16_t>(kCountTableFormatVersion);
  w.integer<std::uint8_t>(table.part_bound ? 1 : 0);
  w.integer<std::uint32_t>(static_cast<std::uint32_t>(table.s));
  w.integer<std::uint32_t>(static_cast<std::uint32_t>(table.k));
  w.integer<std::uint64_t>(table.N);
  w.integer<std::uint64_t>(table.part_bound.value_or(0));
  w.integer<std::uint64_t>(table.counts.size());
  std::vector<unsigned char> mag;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    mag.clear();
    const BigInt v = table.counts.at(i);
    if (v != 0) export_bits(v, std::back_inserter(mag), 8, false);
    w.integer<std::uint16_t>(static_cast<std::uint16_t>(mag.size()));
    if (!mag.empty()) w.bytes(mag.data(), mag.size());
  }
  const std::uint64_t digest = w.hash();
  w.integer<std::uint64_t>(digest);
  if (!out) throw std::runtime_error("count table: write failed");
}

CountTable read_count_table(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw CorruptData("count table: bad magic");
  if (r.integer<std::uint16_t>() != kCountTableFormatVersion) {
    throw CorruptData("count table: unsupported version");
  }
  const auto has_bound = r.integer<std::uint8_t>();
  CountTable table;
  table.s = static_cast<int>(r.integer<std::uint32_t>());
  table.k = static_cast<int>(r.integer<std::uint32_t>());
  table.N = r.integer<std::uint64_t>();
  const auto bound = r.integer<std::uint64_t>();
  const auto length = r.integer<std::uint64_t>();
  if (has_bound > 1 || table.s < 1 || table.k < 1 || table.N < 1 || length != table.N + 1 ||
      length > kMaxCountTableLength || (has_bound == 1 && bound < 1) || (has_bound == 0 && bound != 0)) {
    throw CorruptData("count table: inconsistent header");
  }
  if (has_bound) table.part_bound = bound;

  std::vector<std::uint64_t> narrow(length);
  std::vector<BigInt> wide;
  std::vector<unsigned char> mag;
  for (std::uint64_t i = 0; i < length; ++i) {
    const auto n = r.integer<std::uint16_t>();
    mag.resize(n);
    if (n) r.bytes(mag.data(), n);
    if (n && mag.back() == 0) throw CorruptData("count table: non-canonical magnitude");
    if (n <= 8) {
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < n; ++b) v |= static_cast<std::uint64_t>(mag[b]) << (8 * b);
      if (wide.empty()) narrow[i] = v;
      else wide.emplace_back(v);
    } else {
      if (wide.empty()) wide.assign(narrow.begin(), narrow.begin() + static_cast<std::ptrdiff_t>(i));
      BigInt v;
      import_bits(v, mag.begin(), mag.end(), 8, false);
      wide.push_back(std::move(v));
    }
  }
  const std::uint64_t expected = r.hash();
  if (r.integer<std::uint64_t>() != expected) throw CorruptData("count table: digest mismatch");
  if (in.peek() != std::char_traits<char>::eof()) throw CorruptData("count table: trailing bytes");

  table.counts = wide.empty() ? CountSequence(std::move(narrow)) : CountSequence(std::move(wide));
  if (table.counts.at(0) != 0) throw CorruptData("count table: nonzero count at l = 0");
  return table;
}

void write_counts_csv(std::ostream& out, const CountTable& table) {
  out << "l,count\n";
  for (std::uint64_t l = 1; l <= table.N; ++l) {
    out << l << ',' << table.count(l).str() << '\n';
  }
}

std::string count_table_cache_name(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) {
  std::string name = "r_s" + std::to_string(s) + "_k" + std::to_string(k) + "_N" + std::to_string(N) + "_b";
  name += part_bound ? std::to_string(*part_bound) : std::string("none");
  return name + ".wlct";
}

}  // namespace weyllab
