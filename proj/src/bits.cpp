#include "fraisse/bits.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "fraisse/error.hpp"

namespace fraisse {

std::uint64_t splitmix64_word(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct BitSource::Impl {
  Kind kind;
  std::uint64_t seed = 0;
  std::string path;
  std::string text;
  std::vector<std::uint8_t> bits;
};

namespace {

std::vector<std::uint8_t> parse_bits(std::string_view s, bool allow_space, const std::string& what) {
  std::vector<std::uint8_t> out;
  for (char c : s) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!(allow_space && std::isspace(static_cast<unsigned char>(c)))) {
      throw invalid_input(what + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

}  // namespace

BitSource BitSource::prng(std::uint64_t seed) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::prng;
  impl->seed = seed;
  return BitSource(std::move(impl));
}

BitSource BitSource::ones() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ones;
  return BitSource(std::move(impl));
}

BitSource BitSource::zeros() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::zeros;
  return BitSource(std::move(impl));
}

BitSource BitSource::explicit_bits(std::string_view bits) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::explicit_bits;
  impl->bits = parse_bits(bits, false, "literal bit string");
  impl->text = std::string(bits);
  return BitSource(std::move(impl));
}

BitSource BitSource::cycle(std::string_view pattern) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::cycle;
  impl->bits = parse_bits(pattern, false, "cycle pattern");
  if (impl->bits.empty()) throw invalid_input("cycle pattern must be non-empty");
  impl->text = std::string(pattern);
  return BitSource(std::move(impl));
}

BitSource BitSource::file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::bits_unavailable, "bit source unavailable: cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::file;
  impl->path = path;
  impl->bits = parse_bits(content, true, "bit file " + path);
  return BitSource(std::move(impl));
}

BitSource BitSource::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw invalid_input("bit source spec needs a kind prefix: " + std::string(spec));
  auto head = spec.substr(0, colon);
  auto rest = spec.substr(colon + 1);
  if (head == "prng") {
    if (rest.empty()) throw invalid_input("prng seed missing");
    std::uint64_t seed = 0;
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw invalid_input("bad prng seed: " + std::string(rest));
      std::uint64_t d = static_cast<std::uint64_t>(c - '0');
      if (seed > (UINT64_MAX - d) / 10) throw invalid_input("prng seed out of range");
      seed = seed * 10 + d;
    }
    return prng(seed);
  }
  if (head == "file") return file(std::string(rest));
  if (head == "literal") {
    if (rest == "ones") return ones();
    if (rest == "zeros") return zeros();
    if (rest.starts_with("cycle:")) return cycle(rest.substr(6));
    return explicit_bits(rest);
  }
  throw invalid_input("unknown bit source kind: " + std::string(head));
}

int BitSource::bit(std::uint64_t j) const {
  int b = 0;
  const Impl& s = *impl_;
  switch (s.kind) {
    case Kind::prng:
      b = static_cast<int>((splitmix64_word(s.seed, j / 64) >> (j % 64)) & 1U);
      break;
    case Kind::ones: b = 1; break;
    case Kind::zeros: b = 0; break;
    case Kind::cycle: b = s.bits[j % s.bits.size()]; break;
    case Kind::explicit_bits:
    case Kind::file:
      if (j >= s.bits.size())
        throw Error(ErrorKind::prefix_exhausted, "prefix exhausted at j=" + std::to_string(j), j);
      b = s.bits[j];
      break;
  }
  return complemented_ ? 1 - b : b;
}

BitSource BitSource::complement() const { return BitSource(impl_, !complemented_); }

BitSource::Kind BitSource::kind() const { return impl_->kind; }
std::uint64_t BitSource::seed() const { return impl_->seed; }
const std::string& BitSource::path() const { return impl_->path; }
const std::string& BitSource::pattern() const { return impl_->text; }

std::optional<std::uint64_t> BitSource::length() const {
  if (impl_->kind == Kind::explicit_bits || impl_->kind == Kind::file) return impl_->bits.size();
  return std::nullopt;
}

bool BitSource::operator==(const BitSource& other) const {
  const Impl& a = *impl_;
  const Impl& b = *other.impl_;
  return complemented_ == other.complemented_ && a.kind == b.kind && a.seed == b.seed &&
         a.path == b.path && a.bits == b.bits;
}

}  // namespace fraisse
