// Copyright 2026 The Tempoforge Authors.
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

// Platform-stable randomness. std::mt19937_64 is fully specified by the
// standard, but the std distributions and std::shuffle are not, so every
// derived draw is implemented here.

#ifndef TEMPOFORGE_RANDOM_H_
#define TEMPOFORGE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace tempoforge {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over a sequence of fields, finalized with SplitMix64. Fields are
// length-prefixed so ("ab","c") and ("a","bc") hash differently.
class StableHasher {
 public:
  StableHasher& Add(std::string_view s) {
    Add(static_cast<uint64_t>(s.size()));
    for (unsigned char c : s) Byte(c);
    return *this;
  }
  StableHasher& Add(uint64_t v) {
    for (int i = 0; i < 8; ++i) Byte(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  StableHasher& Add(int64_t v) { return Add(static_cast<uint64_t>(v)); }
  StableHasher& Add(int v) { return Add(static_cast<uint64_t>(v)); }
  uint64_t Digest() const { return SplitMix64(state_); }

 private:
  void Byte(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

template <typename... Parts>
uint64_t StableHash(const Parts&... parts) {
  StableHasher h;
  (h.Add(parts), ...);
  return h.Digest();
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform over [lo, hi], inclusive.
  int64_t UniformInt(int64_t lo, int64_t hi) {
    const uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    if (range == 0) return static_cast<int64_t>(Next());
    const uint64_t threshold = (0 - range) % range;
    uint64_t x;
    do {
      x = Next();
    } while (x < threshold);
    return static_cast<int64_t>(static_cast<uint64_t>(lo) + x % range);
  }

  size_t Index(size_t n) {
    return static_cast<size_t>(UniformInt(0, static_cast<int64_t>(n) - 1));
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double UniformReal() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return UniformReal() < p;
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tempoforge

#endif  // TEMPOFORGE_RANDOM_H_
