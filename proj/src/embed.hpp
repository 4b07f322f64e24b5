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

#ifndef CROSSDET_EMBED_HPP_
#define CROSSDET_EMBED_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crossdet {

struct EmbedderConfig {
  int dimension = 256;
  int ngram_lo = 1;
  int ngram_hi = 2;
  std::uint64_t hash_seed = 0x9e3779b97f4a7c15ull;

  // dimension >= 16, 1 <= ngram_lo <= ngram_hi <= 3.
  void validate() const;
  bool operator==(const EmbedderConfig&) const = default;
};

// Dense vector with its Euclidean norm cached at construction.
class Embedding {
 public:
  Embedding() = default;
  static Embedding from_values(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t dimension() const { return values_.size(); }
  double norm() const { return norm_; }

 private:
  std::vector<double> values_;
  double norm_ = 0;
};

// One vector per token position: every n-gram in the configured range that
// ends at the position contributes +/-1 (signed hash) at a hashed index.
std::vector<Embedding> embed_token_sequence(std::span<const std::string> tokens,
                                            const EmbedderConfig& cfg);

// Componentwise arithmetic mean. Throws on an empty list or mixed
// dimensions.
Embedding mean_pool(std::span<const Embedding> vectors);

// mean_pool over the per-token vectors of the tokenized text.
Embedding embed_text(std::string_view text, const EmbedderConfig& cfg);
Embedding embed_tokens(std::span<const std::string> tokens,
                       const EmbedderConfig& cfg);

struct Cosine {
  double value = 0;          // pinned to 0 when degenerate
  bool degenerate = false;   // set when either input has zero norm
};

Cosine cosine(const Embedding& a, const Embedding& b);

}  // namespace crossdet

#endif  // CROSSDET_EMBED_HPP_
