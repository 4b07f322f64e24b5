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

#ifndef CROSSDET_TEXTFEAT_HPP_
#define CROSSDET_TEXTFEAT_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crossdet {

// Half-open token-index range [begin, end) of one sentence.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct TokenizedText {
  std::vector<std::string> tokens;       // lowercased word tokens
  std::vector<SentenceSpan> sentences;   // contiguous cover of all tokens
  std::vector<int> syllable_counts;      // per token, >= 1
};

// Words are maximal alphanumeric+apostrophe runs (bytes >= 0x80 count as
// word characters), lowercased over ASCII. Sentences end at '.', '!' or
// '?' followed by whitespace or end of text; text without a terminator is
// one sentence. Syllables are vowel groups (a e i o u), minimum 1.
// Throws Error::data when the text has no word tokens.
TokenizedText tokenize(std::string_view text);

struct FeatureVector {
  double avg_word_length = 0;
  double avg_sentence_length = 0;
  double function_word_density = 0;
  double flesch_reading_ease = 0;
  double type_token_ratio = 0;
  double hapax_ratio = 0;

  static constexpr std::size_t kCount = 6;
  std::array<double, kCount> as_array() const;
  static FeatureVector from_array(const std::array<double, kCount>& values);
  static const std::array<const char*, kCount>& field_names();
};

FeatureVector extract_features(const TokenizedText& tokenized);
FeatureVector extract_features(std::string_view text);

// The fixed built-in English function-word list (see function_words.md in
// the repo docs).
std::span<const std::string_view> function_words();

// Per-feature mean and population standard deviation.
struct NormalizationStats {
  std::array<double, FeatureVector::kCount> mean{};
  std::array<double, FeatureVector::kCount> stddev{};
  std::size_t fitted_count = 0;
};

NormalizationStats fit_normalizer(std::span<const FeatureVector> features);

// z-scores each component; components with zero fitted variance map to 0.
FeatureVector normalize(const FeatureVector& fv, const NormalizationStats& stats);

}  // namespace crossdet

#endif  // CROSSDET_TEXTFEAT_HPP_
