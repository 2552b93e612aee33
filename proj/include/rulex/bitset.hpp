#pragma once

// Fixed-size bitset over 64-bit blocks, used for coverage bookkeeping in the
// greedy set cover.

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rulex {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size)
      : size_(size), blocks_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  void set(std::size_t i) {
    check(i);
    blocks_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  bool test(std::size_t i) const {
    check(i);
    return (blocks_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  /// Number of bits set in *this but not in mask. Sizes must match.
  std::size_t count_and_not(const Bitset& mask) const {
    if (mask.size_ != size_) throw std::invalid_argument("bitset size mismatch");
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(blocks_[i] & ~mask.blocks_[i]));
    return c;
  }

  void or_with(const Bitset& other) {
    if (other.size_ != size_) throw std::invalid_argument("bitset size mismatch");
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
  }

  bool operator==(const Bitset&) const = default;

 private:
  void check(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("bitset index out of range");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace rulex
