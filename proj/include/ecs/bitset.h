// Copyright 2026 The ECS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECS_BITSET_H_
#define ECS_BITSET_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ecs {

// Fixed-size bitset whose size is chosen at runtime. Used for cluster
// membership over instances and for transaction id-lists during mining.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  size_t size() const { return size_; }

  void Set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void Reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool Test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void SetAll() {
    for (auto& w : words_) w = ~uint64_t{0};
    TrimTail();
  }

  size_t Count() const {
    size_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool None() const {
    for (uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  bool Any() const { return !None(); }

  // Number of bits set in both `*this` and `other`.
  size_t IntersectionCount(const Bitset& other) const {
    size_t n = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
      n += std::popcount(words_[i] & other.words_[i]);
    }
    return n;
  }

  bool Intersects(const Bitset& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  bool IsSubsetOf(const Bitset& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  Bitset& operator&=(const Bitset& other) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  Bitset Complement() const {
    Bitset out = *this;
    for (auto& w : out.words_) w = ~w;
    out.TrimTail();
    return out;
  }

  // Indices of set bits in increasing order.
  std::vector<int> ToIndices() const {
    std::vector<int> out;
    out.reserve(Count());
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w != 0) {
        out.push_back(static_cast<int>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  static Bitset FromIndices(size_t size, const std::vector<int>& indices) {
    Bitset b(size);
    for (int i : indices) b.Set(static_cast<size_t>(i));
    return b;
  }

  const std::vector<uint64_t>& words() const { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend auto operator<=>(const Bitset&, const Bitset&) = default;

 private:
  void TrimTail() {
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (uint64_t{1} << (size_ % 64)) - 1;
    }
  }

  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL ^ b.size();
    for (uint64_t w : b.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace ecs

#endif  // ECS_BITSET_H_
