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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"

using namespace crossdet;

namespace {

EmbedderConfig small_cfg() {
  EmbedderConfig cfg;
  cfg.dimension = 32;
  return cfg;
}

std::vector<std::string> tokens(std::initializer_list<const char*> words) {
  return {words.begin(), words.end()};
}

}  // namespace

TEST_CASE("single token produces exactly one vector with one contribution") {
  const auto vectors = embed_token_sequence(tokens({"alpha"}), small_cfg());
  REQUIRE(vectors.size() == 1);
  double sum_abs = 0;
  for (double v : vectors[0].values()) sum_abs += std::abs(v);
  CHECK(sum_abs == doctest::Approx(1.0));  // only the unigram contributes
  CHECK(vectors[0].norm() == doctest::Approx(1.0));
}

TEST_CASE("embedding is deterministic and seed-sensitive") {
  const auto words = tokens({"one", "two", "three", "four", "five", "six",
                             "seven", "eight", "nine", "ten"});
  const auto a = embed_token_sequence(words, small_cfg());
  const auto b = embed_token_sequence(words, small_cfg());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].values() == b[i].values());
  }

  EmbedderConfig other = small_cfg();
  other.hash_seed = 0x1234;
  const auto c = embed_token_sequence(words, other);
  bool any_changed = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].values() != c[i].values()) any_changed = true;
  }
  CHECK(any_changed);
}

TEST_CASE("mean_pool identity, symmetry, and hand-computed mean") {
  const auto one = Embedding::from_values({1, 2, 3});
  const std::vector<Embedding> single = {one};
  CHECK(mean_pool(single).values() == one.values());

  const auto neg = Embedding::from_values({-1, -2, -3});
  const std::vector<Embedding> pair = {one, neg};
  for (double v : mean_pool(pair).values()) CHECK(v == doctest::Approx(0.0));

  const std::vector<Embedding> three = {
      Embedding::from_values({1, 0, 2}),
      Embedding::from_values({4, 3, -1}),
      Embedding::from_values({1, 3, 2}),
  };
  const auto pooled = mean_pool(three);
  CHECK(pooled.values()[0] == doctest::Approx(2.0));
  CHECK(pooled.values()[1] == doctest::Approx(2.0));
  CHECK(pooled.values()[2] == doctest::Approx(1.0));
}

TEST_CASE("mean_pool rejects empty input and mixed dimensions") {
  const std::vector<Embedding> empty;
  CHECK_THROWS_AS(mean_pool(empty), Error);
  const std::vector<Embedding> mixed = {Embedding::from_values({1, 2}),
                                        Embedding::from_values({1, 2, 3})};
  CHECK_THROWS_AS(mean_pool(mixed), Error);
}

TEST_CASE("mean_pool is permutation invariant") {
  Rng rng(5);
  std::vector<Embedding> vectors;
  for (int i = 0; i < 6; ++i) {
    std::vector<double> v(8);
    for (auto& x : v) x = rng.unit() * 2 - 1;
    vectors.push_back(Embedding::from_values(std::move(v)));
  }
  const auto base = mean_pool(vectors);
  std::reverse(vectors.begin(), vectors.end());
  const auto reversed = mean_pool(vectors);
  for (std::size_t k = 0; k < base.dimension(); ++k) {
    CHECK(base.values()[k] == doctest::Approx(reversed.values()[k]).epsilon(1e-12));
  }
}

TEST_CASE("cosine identities") {
  const auto v = Embedding::from_values({0.5, -1.5, 2.0, 0.25});
  CHECK(cosine(v, v).value == doctest::Approx(1.0).epsilon(1e-12));

  const auto e1 = Embedding::from_values({1, 0});
  const auto e2 = Embedding::from_values({0, 1});
  CHECK(cosine(e1, e2).value == doctest::Approx(0.0));

  // Hand computation: dot = 1*2 + 2*(-1) + 0*3 + (-2)*1 = -2,
  // |a| = 3, |b| = sqrt(15).
  const auto a = Embedding::from_values({1, 2, 0, -2});
  const auto b = Embedding::from_values({2, -1, 3, 1});
  const double expected = -2.0 / (3.0 * std::sqrt(15.0));
  CHECK(cosine(a, b).value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero-norm cosine is 0 and flagged, not an error") {
  const auto zero = Embedding::from_values({0, 0, 0});
  const auto v = Embedding::from_values({1, 2, 3});
  const auto result = cosine(zero, v);
  CHECK(result.value == 0.0);
  CHECK(result.degenerate);
  CHECK_FALSE(cosine(v, v).degenerate);
}

TEST_CASE("cosine is symmetric and scale invariant") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> av(16), bv(16);
    for (auto& x : av) x = rng.unit() * 2 - 1;
    for (auto& x : bv) x = rng.unit() * 2 - 1;
    const auto a = Embedding::from_values(av);
    const auto b = Embedding::from_values(bv);
    CHECK(cosine(a, b).value == doctest::Approx(cosine(b, a).value).epsilon(1e-12));
    const double alpha = 0.1 + rng.unit() * 5;
    std::vector<double> scaled = av;
    for (auto& x : scaled) x *= alpha;
    CHECK(cosine(Embedding::from_values(scaled), b).value ==
          doctest::Approx(cosine(a, b).value).epsilon(1e-9));
  }
}

TEST_CASE("embed_text of a one-token text equals the token vector") {
  const auto cfg = small_cfg();
  const auto direct = embed_token_sequence(tokens({"alpha"}), cfg);
  const auto text = embed_text("Alpha.", cfg);
  CHECK(text.values() == direct[0].values());
}

TEST_CASE("embed_text rejects text with no tokens") {
  CHECK_THROWS_AS(embed_text("...", small_cfg()), Error);
}

TEST_CASE("swapping sentences changes only boundary-crossing n-grams") {
  const auto cfg = small_cfg();
  const std::string s1 = "red fox runs";
  const std::string s2 = "green bird sings";
  const auto v12 = embed_text(s1 + ". " + s2 + ".", cfg);
  const auto v21 = embed_text(s2 + ". " + s1 + ".", cfg);

  // A position vector minus the unigram of its own token isolates the
  // bigram contribution ending there.
  auto bigram_vector = [&](const char* first, const char* second) {
    const auto pair = embed_token_sequence(tokens({first, second}), cfg);
    const auto uni = embed_token_sequence(tokens({second}), cfg);
    std::vector<double> out(pair[1].values());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= uni[0].values()[k];
    return out;
  };
  const auto cross12 = bigram_vector("runs", "green");
  const auto cross21 = bigram_vector("sings", "red");

  // v12 - v21 == (cross12 - cross21) / n_tokens: every other n-gram is
  // shared between the two orderings.
  const double n = 6.0;
  for (std::size_t k = 0; k < v12.dimension(); ++k) {
    const double expected = (cross12[k] - cross21[k]) / n;
    CHECK(v12.values()[k] - v21.values()[k] ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("embedder config validation") {
  EmbedderConfig bad;
  bad.dimension = 4;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = EmbedderConfig{};
  bad.ngram_lo = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = EmbedderConfig{};
  bad.ngram_hi = 5;
  CHECK_THROWS_AS(bad.validate(), Error);
}
