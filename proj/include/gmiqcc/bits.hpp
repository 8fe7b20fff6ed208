// Copyright 2026 The gmiqcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "gmiqcc/errors.hpp"

namespace gmiqcc {

// Largest register supported by the packed representation.
inline constexpr std::size_t kMaxQubits = 128;

// Fixed-capacity bit vector of length n_qubits. Bit q belongs to qubit q and
// carries weight 2^q when the vector is read as an unsigned integer, which is
// the order used for every deterministic sort in the library.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = kMaxQubits / kWordBits;

  BitString() = default;

  explicit BitString(std::size_t n_qubits) : n_(static_cast<std::uint32_t>(n_qubits)) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
      throw InvalidArgument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                            "], got " + std::to_string(n_qubits));
    }
  }

  // Parses '0'/'1' characters; character index 0 is qubit 0.
  static BitString from_string(std::string_view bits) {
    BitString out(bits.size());
    for (std::size_t q = 0; q < bits.size(); ++q) {
      if (bits[q] == '1') {
        out.set(q);
      } else if (bits[q] != '0') {
        throw DataError("bit string may contain only '0' and '1': \"" + std::string(bits) + "\"");
      }
    }
    return out;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t q) const { return (words_[q / kWordBits] >> (q % kWordBits)) & 1U; }
  void set(std::size_t q, bool value = true) {
    const Word mask = Word{1} << (q % kWordBits);
    if (value) {
      words_[q / kWordBits] |= mask;
    } else {
      words_[q / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t q) { words_[q / kWordBits] ^= Word{1} << (q % kWordBits); }

  bool any() const { return (words_[0] | words_[1]) != 0; }
  bool none() const { return !any(); }

  std::size_t popcount() const {
    return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
  }
  bool parity() const { return std::popcount(words_[0] ^ words_[1]) & 1; }

  // Index of the lowest set bit; size() when empty.
  std::size_t lowest_set() const {
    for (std::size_t w = 0; w < kWords; ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return n_;
  }

  const std::array<Word, kWords>& words() const { return words_; }

  std::string str() const {
    std::string out(n_, '0');
    for (std::size_t q = 0; q < n_; ++q) {
      if (test(q)) out[q] = '1';
    }
    return out;
  }

  BitString& operator^=(const BitString& o) {
    words_[0] ^= o.words_[0];
    words_[1] ^= o.words_[1];
    return *this;
  }
  BitString& operator&=(const BitString& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend BitString operator&(BitString a, const BitString& b) { return a &= b; }

  // popcount(a AND b) mod 2 without materializing the intersection.
  friend bool and_parity(const BitString& a, const BitString& b) {
    const Word w = (a.words_[0] & b.words_[0]) ^ (a.words_[1] & b.words_[1]);
    return std::popcount(w) & 1;
  }
  friend std::size_t and_popcount(const BitString& a, const BitString& b) {
    return static_cast<std::size_t>(std::popcount(a.words_[0] & b.words_[0]) +
                                    std::popcount(a.words_[1] & b.words_[1]));
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  // Integer order (high word first); length only breaks ties between sizes.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.words_[1] <=> b.words_[1]; c != 0) return c;
    if (auto c = a.words_[0] <=> b.words_[0]; c != 0) return c;
    return a.n_ <=> b.n_;
  }

  std::size_t hash() const {
    // splitmix64 finalizer over both words
    auto mix = [](Word v) {
      v += 0x9e3779b97f4a7c15ULL;
      v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
      v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
      return v ^ (v >> 31);
    };
    return static_cast<std::size_t>(mix(words_[0] ^ mix(words_[1] ^ n_)));
  }

 private:
  std::array<Word, kWords> words_{};
  std::uint32_t n_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace gmiqcc
