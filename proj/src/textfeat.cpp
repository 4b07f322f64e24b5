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

#include "textfeat.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "common.hpp"

namespace crossdet {

namespace {

// Locale-free character classes; bytes >= 0x80 (UTF-8 continuation or
// lead bytes) are treated as word characters.
bool is_word_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '\'' || c >= 0x80;
}

bool is_space_char(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Unicode code points = bytes that are not UTF-8 continuation bytes.
std::size_t codepoint_count(std::string_view token) {
  std::size_t n = 0;
  for (unsigned char c : token) {
    if ((c & 0xc0) != 0x80) ++n;
  }
  return n;
}

int count_syllables(std::string_view token) {
  int groups = 0;
  bool in_group = false;
  for (char c : token) {
    if (is_vowel(c)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  return groups > 0 ? groups : 1;
}

constexpr std::string_view kFunctionWords[] = {
    "a",         "about",      "above",     "across",    "after",
    "again",     "against",    "all",       "almost",    "along",
    "also",      "although",   "am",        "among",     "an",
    "and",       "another",    "any",       "anybody",   "anyone",
    "anything",  "are",        "around",    "as",        "at",
    "be",        "because",    "been",      "before",    "behind",
    "being",     "below",      "between",   "beyond",    "both",
    "but",       "by",         "can",       "could",     "did",
    "do",        "does",       "doing",     "down",      "during",
    "each",      "either",     "enough",    "every",     "everybody",
    "everyone",  "everything", "few",       "for",       "from",
    "had",       "has",        "have",      "having",    "he",
    "her",       "hers",       "herself",   "him",       "himself",
    "his",       "how",        "i",         "if",        "in",
    "into",      "is",         "it",        "its",       "itself",
    "just",      "less",       "like",      "many",      "may",
    "me",        "might",      "mine",      "more",      "most",
    "much",      "must",       "my",        "myself",    "near",
    "neither",   "never",      "no",        "nobody",    "none",
    "nor",       "not",        "nothing",   "now",       "of",
    "off",       "on",         "once",      "one",       "only",
    "onto",      "or",         "other",     "our",       "ours",
    "ourselves", "out",        "over",      "own",       "per",
    "quite",     "rather",     "shall",     "she",       "should",
    "since",     "so",         "some",      "somebody",  "someone",
    "something", "such",       "than",      "that",      "the",
    "their",     "theirs",     "them",      "themselves","then",
    "there",     "these",      "they",      "this",      "those",
    "through",   "to",         "too",       "under",     "until",
    "up",        "upon",       "us",        "very",      "was",
    "we",        "were",       "what",      "when",      "where",
    "which",     "while",      "who",       "whom",      "whose",
    "why",       "will",       "with",      "within",    "without",
    "would",     "you",        "your",      "yours",     "yourself",
    "yourselves"};

const std::unordered_set<std::string_view>& function_word_set() {
  static const std::unordered_set<std::string_view> set(
      std::begin(kFunctionWords), std::end(kFunctionWords));
  return set;
}

}  // namespace

std::span<const std::string_view> function_words() {
  return std::span<const std::string_view>(kFunctionWords);
}

TokenizedText tokenize(std::string_view text) {
  TokenizedText out;
  std::string current;
  std::size_t sentence_begin = 0;

  auto flush_token = [&] {
    if (!current.empty()) {
      out.tokens.push_back(current);
      current.clear();
    }
  };
  auto close_sentence = [&] {
    if (out.tokens.size() > sentence_begin) {
      out.sentences.push_back({sentence_begin, out.tokens.size()});
      sentence_begin = out.tokens.size();
    }
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_char(c)) {
      current.push_back(c >= 'A' && c <= 'Z'
                            ? static_cast<char>(c - 'A' + 'a')
                            : static_cast<char>(c));
      continue;
    }
    flush_token();
    if (c == '.' || c == '!' || c == '?') {
      const bool at_end = i + 1 == text.size();
      if (at_end || is_space_char(static_cast<unsigned char>(text[i + 1]))) {
        close_sentence();
      }
    }
  }
  flush_token();
  close_sentence();

  if (out.tokens.empty()) {
    throw Error::data("text contains no word tokens");
  }
  out.syllable_counts.reserve(out.tokens.size());
  for (const std::string& token : out.tokens) {
    out.syllable_counts.push_back(count_syllables(token));
  }
  return out;
}

std::array<double, FeatureVector::kCount> FeatureVector::as_array() const {
  return {avg_word_length,     avg_sentence_length, function_word_density,
          flesch_reading_ease, type_token_ratio,    hapax_ratio};
}

FeatureVector FeatureVector::from_array(
    const std::array<double, kCount>& values) {
  FeatureVector fv;
  fv.avg_word_length = values[0];
  fv.avg_sentence_length = values[1];
  fv.function_word_density = values[2];
  fv.flesch_reading_ease = values[3];
  fv.type_token_ratio = values[4];
  fv.hapax_ratio = values[5];
  return fv;
}

const std::array<const char*, FeatureVector::kCount>&
FeatureVector::field_names() {
  static const std::array<const char*, kCount> names = {
      "avg_word_length",     "avg_sentence_length", "function_word_density",
      "flesch_reading_ease", "type_token_ratio",    "hapax_ratio"};
  return names;
}

FeatureVector extract_features(const TokenizedText& tokenized) {
  const double n_tokens = static_cast<double>(tokenized.tokens.size());
  const double n_sentences = static_cast<double>(tokenized.sentences.size());

  std::size_t total_chars = 0;
  long total_syllables = 0;
  std::size_t function_hits = 0;
  std::unordered_map<std::string_view, int> counts;
  counts.reserve(tokenized.tokens.size());
  for (std::size_t i = 0; i < tokenized.tokens.size(); ++i) {
    const std::string& token = tokenized.tokens[i];
    total_chars += codepoint_count(token);
    total_syllables += tokenized.syllable_counts[i];
    if (function_word_set().count(token) > 0) ++function_hits;
    ++counts[token];
  }
  std::size_t hapaxes = 0;
  for (const auto& [token, count] : counts) {
    if (count == 1) ++hapaxes;
  }

  FeatureVector fv;
  fv.avg_word_length = static_cast<double>(total_chars) / n_tokens;
  fv.avg_sentence_length = n_tokens / n_sentences;
  fv.function_word_density = static_cast<double>(function_hits) / n_tokens;
  fv.flesch_reading_ease = 206.835 - 1.015 * (n_tokens / n_sentences) -
                           84.6 * (static_cast<double>(total_syllables) / n_tokens);
  fv.type_token_ratio = static_cast<double>(counts.size()) / n_tokens;
  fv.hapax_ratio = static_cast<double>(hapaxes) / n_tokens;
  return fv;
}

FeatureVector extract_features(std::string_view text) {
  return extract_features(tokenize(text));
}

NormalizationStats fit_normalizer(std::span<const FeatureVector> features) {
  if (features.empty()) {
    throw Error::data("cannot fit a normalizer on an empty feature list");
  }
  NormalizationStats stats;
  stats.fitted_count = features.size();
  const double n = static_cast<double>(features.size());
  for (const FeatureVector& fv : features) {
    const auto values = fv.as_array();
    for (std::size_t k = 0; k < FeatureVector::kCount; ++k) {
      stats.mean[k] += values[k];
    }
  }
  for (std::size_t k = 0; k < FeatureVector::kCount; ++k) stats.mean[k] /= n;
  for (const FeatureVector& fv : features) {
    const auto values = fv.as_array();
    for (std::size_t k = 0; k < FeatureVector::kCount; ++k) {
      const double d = values[k] - stats.mean[k];
      stats.stddev[k] += d * d;
    }
  }
  for (std::size_t k = 0; k < FeatureVector::kCount; ++k) {
    stats.stddev[k] = std::sqrt(stats.stddev[k] / n);
  }
  return stats;
}

FeatureVector normalize(const FeatureVector& fv,
                        const NormalizationStats& stats) {
  const auto values = fv.as_array();
  std::array<double, FeatureVector::kCount> out{};
  for (std::size_t k = 0; k < FeatureVector::kCount; ++k) {
    out[k] = stats.stddev[k] > 0.0
                 ? (values[k] - stats.mean[k]) / stats.stddev[k]
                 : 0.0;
  }
  return FeatureVector::from_array(out);
}

}  // namespace crossdet
