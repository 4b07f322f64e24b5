// Copyright 2026 The crossdet Authors
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

#ifndef CROSSDET_COMMON_HPP_
#define CROSSDET_COMMON_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace crossdet {

// Error category, mapped to process exit codes at the CLI boundary.
enum class ErrorKind {
  kUsage = 1,     // bad arguments or malformed requests
  kData = 2,      // malformed input files, contract violations on data
  kInternal = 3,  // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static Error usage(const std::string& m) { return Error(ErrorKind::kUsage, m); }
  static Error data(const std::string& m) { return Error(ErrorKind::kData, m); }
  static Error internal(const std::string& m) { return Error(ErrorKind::kInternal, m); }

 private:
  ErrorKind kind_;
};

// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
// <random> distributions so that streams are identical across platforms and
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
    std::uint64_t v = next();
    while (v > limit) v = next();
    return v % bound;
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a base seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  Rng r(seed ^ (tag * 0xd6e8feb86659fd93ull + 0x2545f4914f6cdd1dull));
  return r.next();
}

// Seeded FNV-1a over bytes; the workhorse string hash for feature hashing
// and Markov chain logits.
inline std::uint64_t fnv1a64(std::uint64_t seed, std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline double hash_to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Runs body(i) for i in [0, n). With threads <= 1 the loop is sequential.
// Each index writes only its own output slot, so results do not depend on
// the thread count.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Shortest round-trip decimal rendering; "inf"/"-inf"/"nan" for non-finite
// values. Used for all TSV/CSV output so files are byte-stable.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Inverse of format_double for the formats this toolkit writes.
double parse_double(std::string_view text);

}  // namespace crossdet

#endif  // CROSSDET_COMMON_HPP_
