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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>

#include "common.hpp"

namespace crossdet {

namespace {

// Mixed-register English words, function words included so that
// function-word density carries signal in generated text.
constexpr std::string_view kBuiltinVocabulary[] = {
    "the",       "a",         "an",       "and",      "but",      "or",
    "of",        "in",        "on",       "with",     "for",      "from",
    "to",        "by",        "as",       "at",       "this",     "that",
    "these",     "its",       "their",    "has",      "have",     "was",
    "were",      "is",        "are",      "will",     "would",    "can",
    "could",     "not",       "more",     "most",     "other",    "such",
    "river",     "stone",     "bridge",   "valley",   "meadow",   "harvest",
    "farmer",    "village",   "market",   "journey",  "morning",  "evening",
    "winter",    "summer",    "garden",   "forest",   "mountain", "shadow",
    "lantern",   "letter",    "story",    "window",   "door",     "road",
    "weather",   "harbor",    "island",   "ocean",    "signal",   "engine",
    "machine",   "pattern",   "number",   "measure",  "theory",   "science",
    "method",    "result",    "question", "answer",   "language", "history",
    "memory",    "moment",    "people",   "family",   "friend",   "teacher",
    "student",   "doctor",    "quiet",    "bright",   "heavy",    "light",
    "narrow",    "broad",     "ancient",  "modern",   "simple",   "complex",
    "gentle",    "sudden",    "walks",    "moves",    "carries",  "follows",
    "gathers",   "watches",   "listens",  "remembers","discovers","explains",
    "describes", "suggests",  "improves", "changes",  "grows",    "falls",
    "rises",     "turns",     "returns",  "remains",  "becomes",  "appears",
    "slowly",    "quickly",   "carefully","quietly",  "together", "often",
    "rarely",    "already",   "perhaps",  "almost",   "beyond",   "across",
    "between",   "around",    "beneath",  "toward",   "against",  "during",
    "before",    "after",     "under",    "over",     "near",     "along"};

double sample_logit(std::uint64_t chain_seed, std::string_view context,
                    std::string_view word) {
  std::string key;
  key.reserve(context.size() + word.size() + 1);
  key += context;
  key.push_back('\x1f');
  key += word;
  // Gumbel-distributed logits keep O(1) gaps between a context's top
  // candidates, so temperature has real leverage: 0.2 is close to argmax
  // decoding, 1.5 samples broadly.
  const std::uint64_t h = fnv1a64(chain_seed, key);
  const double u =
      (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;  // in (0, 1)
  return -std::log(-std::log(u));
}

class MarkovSampler {
 public:
  MarkovSampler(const GeneratorSpec& spec) : spec_(spec) {}

  std::string_view next_word(Rng& rng, std::span<const std::string> history) {
    const std::string context = make_context(history);
    logits_.resize(spec_.vocabulary.size());
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec_.vocabulary.size(); ++i) {
      logits_[i] = sample_logit(spec_.seed, context, spec_.vocabulary[i]);
      max_logit = std::max(max_logit, logits_[i]);
    }
    double total = 0;
    for (double& w : logits_) {
      w = std::exp((w - max_logit) / spec_.temperature);
      total += w;
    }
    double u = rng.unit() * total;
    for (std::size_t i = 0; i < logits_.size(); ++i) {
      u -= logits_[i];
      if (u <= 0) return spec_.vocabulary[i];
    }
    return spec_.vocabulary.back();
  }

 private:
  std::string make_context(std::span<const std::string> history) const {
    std::string context;
    const int order = spec_.chain_order;
    for (int k = order; k >= 1; --k) {
      if (!context.empty()) context.push_back('\x1e');
      if (history.size() >= static_cast<std::size_t>(k)) {
        context += history[history.size() - k];
      } else {
        context.push_back('^');
      }
    }
    return context;
  }

  const GeneratorSpec& spec_;
  std::vector<double> logits_;
};

std::string capitalized(std::string_view word) {
  std::string out(word);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

std::string generate_article_text(const GeneratorSpec& spec, Rng& rng) {
  MarkovSampler sampler(spec);
  const int span = spec.max_sentences - spec.min_sentences + 1;
  const int sentences =
      spec.min_sentences + static_cast<int>(rng.below(span));

  std::string text;
  std::vector<std::string> history;
  for (int s = 0; s < sentences; ++s) {
    const double raw_len = spec.sentence_length_mean +
                           (2.0 * rng.unit() - 1.0) * spec.sentence_length_spread;
    const int length = std::max(2, static_cast<int>(std::llround(raw_len)));
    for (int w = 0; w < length; ++w) {
      std::string word;
      if (history.empty()) {
        word = spec.vocabulary[rng.below(spec.vocabulary.size())];
      } else {
        word = std::string(sampler.next_word(rng, history));
      }
      if (!text.empty()) text.push_back(' ');
      text += (w == 0) ? capitalized(word) : word;
      history.push_back(std::move(word));
      if (history.size() > 2) history.erase(history.begin());
    }
    text.push_back('.');
  }
  return text;
}

}  // namespace

void GeneratorSpec::validate() const {
  if (chain_order != 1 && chain_order != 2) {
    throw Error::usage("chain_order must be 1 or 2");
  }
  if (vocabulary.size() < 50) {
    throw Error::data("vocabulary too small for chain order " +
                      std::to_string(chain_order) + ": " +
                      std::to_string(vocabulary.size()) +
                      " words (need at least 50)");
  }
  if (!(temperature > 0)) throw Error::usage("temperature must be positive");
  if (!(sentence_length_mean > 0) || !(sentence_length_spread >= 0)) {
    throw Error::usage("sentence length parameters must be positive");
  }
  if (min_sentences < 1 || max_sentences < min_sentences) {
    throw Error::usage("article length range is empty");
  }
}

DomainBlueprint DomainBlueprint::basic(std::string domain_id,
                                       double human_temperature,
                                       double ai_temperature,
                                       std::uint64_t seed) {
  std::vector<std::string> vocabulary;
  vocabulary.reserve(std::size(kBuiltinVocabulary));
  for (std::string_view w : kBuiltinVocabulary) vocabulary.emplace_back(w);
  return basic_with_vocabulary(std::move(domain_id), std::move(vocabulary),
                               human_temperature, ai_temperature, seed);
}

DomainBlueprint DomainBlueprint::basic_with_vocabulary(
    std::string domain_id, std::vector<std::string> vocabulary,
    double human_temperature, double ai_temperature, std::uint64_t seed) {
  DomainBlueprint bp;
  bp.domain_id = std::move(domain_id);
  bp.human.vocabulary = std::move(vocabulary);
  bp.human.temperature = human_temperature;
  bp.human.sentence_length_mean = 17.0;
  bp.human.sentence_length_spread = 6.0;
  bp.human.seed = seed;
  bp.ai = bp.human;  // shared vocabulary and chain seed
  bp.ai.temperature = ai_temperature;
  bp.ai.sentence_length_mean = 13.0;
  bp.ai.sentence_length_spread = 2.0;
  return bp;
}

Corpus generate_corpus(const DomainBlueprint& blueprint, int n_human, int n_ai,
                       std::uint64_t seed) {
  if (n_human < 1 || n_ai < 1) {
    throw Error::usage("article counts must be at least 1");
  }
  blueprint.human.validate();
  blueprint.ai.validate();

  std::vector<Article> articles;
  articles.reserve(static_cast<std::size_t>(n_human + n_ai));
  char id_buffer[64];
  for (int i = 0; i < n_human; ++i) {
    Rng rng(mix_seed(seed, 0x48000000ull + static_cast<std::uint64_t>(i)));
    std::snprintf(id_buffer, sizeof(id_buffer), "%s-h-%04d",
                  blueprint.domain_id.c_str(), i + 1);
    articles.push_back({id_buffer, generate_article_text(blueprint.human, rng),
                        Label::kHuman, blueprint.domain_id});
  }
  for (int i = 0; i < n_ai; ++i) {
    Rng rng(mix_seed(seed, 0x41000000ull + static_cast<std::uint64_t>(i)));
    std::snprintf(id_buffer, sizeof(id_buffer), "%s-a-%04d",
                  blueprint.domain_id.c_str(), i + 1);
    articles.push_back({id_buffer, generate_article_text(blueprint.ai, rng),
                        Label::kAi, blueprint.domain_id});
  }
  return Corpus(blueprint.domain_id, std::move(articles));
}

std::span<const std::string_view> builtin_vocabulary() {
  return std::span<const std::string_view>(kBuiltinVocabulary);
}

std::vector<std::string> load_vocabulary(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::vector<std::string> load_vocabulary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::data("cannot open vocabulary file '" + path + "'");
  return load_vocabulary(in);
}

}  // namespace crossdet
