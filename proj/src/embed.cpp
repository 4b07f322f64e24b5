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

#include "embed.hpp"

#include <cmath>

#include "common.hpp"
#include "textfeat.hpp"

namespace crossdet {

void EmbedderConfig::validate() const {
  if (dimension < 16) throw Error::usage("embedding dimension must be >= 16");
  if (ngram_lo < 1 || ngram_lo > ngram_hi || ngram_hi > 3) {
    throw Error::usage("ngram range must satisfy 1 <= lo <= hi <= 3");
  }
}

Embedding Embedding::from_values(std::vector<double> values) {
  Embedding e;
  double sq = 0;
  for (double v : values) sq += v * v;
  e.values_ = std::move(values);
  e.norm_ = std::sqrt(sq);
  return e;
}

std::vector<Embedding> embed_token_sequence(std::span<const std::string> tokens,
                                            const EmbedderConfig& cfg) {
  cfg.validate();
  if (tokens.empty()) throw Error::data("cannot embed an empty token list");

  const std::size_t dim = static_cast<std::size_t>(cfg.dimension);
  std::vector<Embedding> out;
  out.reserve(tokens.size());
  std::string ngram;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    std::vector<double> values(dim, 0.0);
    const int max_n = std::min<int>(cfg.ngram_hi, static_cast<int>(pos) + 1);
    for (int n = cfg.ngram_lo; n <= max_n; ++n) {
      // n-gram ending at pos, tokens joined with a separator byte that
      // cannot appear inside a token.
      ngram.clear();
      for (std::size_t j = pos + 1 - n; j <= pos; ++j) {
        if (!ngram.empty()) ngram.push_back('\x1f');
        ngram += tokens[j];
      }
      const std::uint64_t h = fnv1a64(cfg.hash_seed, ngram);
      const std::size_t index = h % dim;
      const double sign = ((h >> 32) & 1) ? 1.0 : -1.0;
      values[index] += sign;
    }
    out.push_back(Embedding::from_values(std::move(values)));
  }
  return out;
}

Embedding mean_pool(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw Error::data("mean_pool of an empty vector list");
  const std::size_t dim = vectors.front().dimension();
  std::vector<double> acc(dim, 0.0);
  for (const Embedding& v : vectors) {
    if (v.dimension() != dim) {
      throw Error::data("mean_pool over mixed dimensions (" +
                        std::to_string(dim) + " vs " +
                        std::to_string(v.dimension()) + ")");
    }
    const auto& values = v.values();
    for (std::size_t k = 0; k < dim; ++k) acc[k] += values[k];
  }
  const double n = static_cast<double>(vectors.size());
  for (double& v : acc) v /= n;
  return Embedding::from_values(std::move(acc));
}

Embedding embed_tokens(std::span<const std::string> tokens,
                       const EmbedderConfig& cfg) {
  const auto per_token = embed_token_sequence(tokens, cfg);
  return mean_pool(per_token);
}

Embedding embed_text(std::string_view text, const EmbedderConfig& cfg) {
  return embed_tokens(tokenize(text).tokens, cfg);
}

Cosine cosine(const Embedding& a, const Embedding& b) {
  if (a.dimension() != b.dimension()) {
    throw Error::data("cosine over mixed dimensions");
  }
  if (a.norm() == 0.0 || b.norm() == 0.0) return {0.0, true};
  double dot = 0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) dot += av[k] * bv[k];
  return {dot / (a.norm() * b.norm()), false};
}

}  // namespace crossdet
