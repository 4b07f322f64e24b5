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

#ifndef CROSSDET_ROUTER_HPP_
#define CROSSDET_ROUTER_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "embed.hpp"

namespace crossdet {

// How block-to-document similarity varies with block size, summarized at
// ten block-size fractions. Component 10 covers the whole document and is
// always 1; it anchors the scale.
struct SignificanceProfile {
  std::array<double, 10> values{};
  int budget = 0;
  std::uint64_t seed = 0;
};

struct DomainSignature {
  std::string domain_id;
  std::array<double, 10> centroid{};
  std::size_t support = 0;  // articles averaged
};

struct RouterModel {
  std::vector<DomainSignature> signatures;  // unique domain ids
  // Build-time parameters, stored so routing can default to them.
  EmbedderConfig embedder;
  int budget = 100;

  void validate() const;
};

// For block-size index i in 1..10: block size m_i = max(1, round(i/10 * l))
// over the article's l sentences; up to `budget` distinct random sentence
// subsets per size (all of them when there are no more than `budget`);
// component = mean of (cosine(block embedding, document embedding)+1)/2.
SignificanceProfile significance_profile(const Article& article, int budget,
                                         std::uint64_t seed,
                                         const EmbedderConfig& cfg);

// Componentwise mean of the articles' profiles.
DomainSignature build_signature(std::span<const Article> articles,
                                const std::string& domain_id, int budget,
                                std::uint64_t seed, const EmbedderConfig& cfg,
                                int threads = 1);

// Groups a domain-tagged corpus by tag and builds one signature per
// domain, ordered by ascending domain id.
RouterModel build_router(const Corpus& corpus, int budget, std::uint64_t seed,
                         const EmbedderConfig& cfg, int threads = 1);

struct RouteResult {
  std::string domain_id;
  // (domain id, euclidean distance), in the router's signature order.
  std::vector<std::pair<std::string, double>> distances;
};

// Nearest characteristic vector; distance ties go to the ascending
// domain id.
RouteResult route(const Article& article, const RouterModel& router,
                  int budget, std::uint64_t seed, const EmbedderConfig& cfg);

std::vector<RouteResult> route_corpus(const Corpus& corpus,
                                      const RouterModel& router, int budget,
                                      std::uint64_t seed,
                                      const EmbedderConfig& cfg,
                                      int threads = 1);

}  // namespace crossdet

#endif  // CROSSDET_ROUTER_HPP_
