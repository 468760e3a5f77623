#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fraisse {

std::uint64_t splitmix64_word(std::uint64_t seed, std::uint64_t index);

// Random-access oracle bit string. Immutable and shareable.
class BitSource {
 public:
  enum class Kind { prng, file, ones, zeros, explicit_bits, cycle };

  static BitSource prng(std::uint64_t seed);
  static BitSource ones();
  static BitSource zeros();
  // Finite: reading past the end is a prefix_exhausted error.
  static BitSource explicit_bits(std::string_view bits);
  // Periodic repetition of a non-empty pattern.
  static BitSource cycle(std::string_view pattern);
  // Loads the whole file; '0'/'1' characters, whitespace ignored.
  static BitSource file(const std::string& path);
  // Shorthand: prng:SEED, file:PATH, literal:ones|zeros|cycle:BITS|BITS.
  static BitSource parse(std::string_view spec);

  int bit(std::uint64_t j) const;
  BitSource complement() const;

  Kind kind() const;
  bool complemented() const { return complemented_; }
  std::uint64_t seed() const;
  const std::string& path() const;
  // Pattern text for explicit and cycle sources.
  const std::string& pattern() const;
  std::optional<std::uint64_t> length() const;

  bool operator==(const BitSource& other) const;

 private:
  struct Impl;
  explicit BitSource(std::shared_ptr<const Impl> impl, bool complemented = false)
      : impl_(std::move(impl)), complemented_(complemented) {}
  std::shared_ptr<const Impl> impl_;
  bool complemented_ = false;
};

}  // namespace fraisse
