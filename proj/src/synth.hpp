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

#ifndef CROSSDET_SYNTH_HPP_
#define CROSSDET_SYNTH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"

namespace crossdet {

// Seeded Markov text source. Lower temperature concentrates each context's
// next-word distribution, which lowers lexical diversity and tightens
// style; that is what gives the synthetic "AI" class its detectable gap.
struct GeneratorSpec {
  std::vector<std::string> vocabulary;  // >= 50 words
  int chain_order = 1;                  // 1 or 2
  double temperature = 1.0;
  double sentence_length_mean = 16.0;
  double sentence_length_spread = 5.0;  // uniform half-width
  int min_sentences = 6;
  int max_sentences = 12;
  std::uint64_t seed = 0;  // seeds the chain's transition logits

  void validate() const;
};

struct DomainBlueprint {
  std::string domain_id;
  GeneratorSpec human;
  GeneratorSpec ai;

  // Conventional pairing: shared vocabulary and chain, the AI side with
  // the given (lower) temperature and a tighter sentence-length spread.
  static DomainBlueprint basic(std::string domain_id, double human_temperature,
                               double ai_temperature, std::uint64_t seed);
  static DomainBlueprint basic_with_vocabulary(
      std::string domain_id, std::vector<std::string> vocabulary,
      double human_temperature, double ai_temperature, std::uint64_t seed);
};

// n_human Human-labeled plus n_ai AI-labeled articles, domain-tagged,
// byte-identical across runs for a fixed seed.
Corpus generate_corpus(const DomainBlueprint& blueprint, int n_human, int n_ai,
                       std::uint64_t seed);

std::span<const std::string_view> builtin_vocabulary();

// One word per line; blank lines ignored.
std::vector<std::string> load_vocabulary(std::istream& in);
std::vector<std::string> load_vocabulary_file(const std::string& path);

}  // namespace crossdet

#endif  // CROSSDET_SYNTH_HPP_
