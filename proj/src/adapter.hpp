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

#ifndef CROSSDET_ADAPTER_HPP_
#define CROSSDET_ADAPTER_HPP_

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "embed.hpp"
#include "ranker.hpp"
#include "textfeat.hpp"

namespace crossdet {

// Cached per-article inputs of the similarity kernel: z-scored feature
// components and the pooled embedding.
struct ArticleRep {
  std::array<double, FeatureVector::kCount> features{};
  Embedding embedding;
};

ArticleRep make_article_rep(std::string_view text,
                            const NormalizationStats& stats,
                            const EmbedderConfig& cfg);

// Feature kernel 1/(1 + euclidean distance) plus cosine remapped to
// [0, 1]; both terms on commensurate scales, result in (0, 2].
double rep_similarity(const ArticleRep& a, const ArticleRep& b);
double pairwise_similarity(const Article& a, const Article& b,
                           const NormalizationStats& stats,
                           const EmbedderConfig& cfg);

// Symmetric pairwise similarity over a corpus; the diagonal holds
// self-similarity and is excluded from every aggregate.
class SimilarityMatrix {
 public:
  static SimilarityMatrix build(const Corpus& corpus,
                                const NormalizationStats& stats,
                                const EmbedderConfig& cfg, int threads = 1);

  std::size_t size() const { return ids_.size(); }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * ids_.size() + j];
  }
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

// A reference-set member: enough to recompute its representation and to
// recognize the same article at detection time.
struct ReferenceArticle {
  std::string id;
  std::string text_sha256;
  std::string text;
  ArticleRep rep;
};

struct RatioResult {
  double avg_human = 0;  // mean similarity to S_H
  double avg_ai = 0;     // mean similarity to S_M
  double ratio = 0;      // +infinity when avg_ai == 0 < avg_human

  // ratio = avgH/avgM; +inf when only avgM is zero; 1 when both are zero.
  static RatioResult from_averages(double avg_human, double avg_ai);
};

struct RocPoint {
  double fpr = 0;
  double tpr = 0;
  double threshold = 0;
};

// Per-domain fitted artifact: reference sets, ratio threshold, and the ROC
// operating points the threshold was chosen from.
struct CalibrationProfile {
  std::string domain_id;
  int k = 0;
  std::vector<ReferenceArticle> s_human;  // |s_human| == k
  std::vector<ReferenceArticle> s_ai;     // |s_ai| == k
  double delta = 0;
  double achieved_f1 = 0;
  std::vector<RocPoint> roc_points;
  NormalizationStats normalization;  // fitted on the calibration sample
  EmbedderConfig embedder;

  void validate() const;
};

// Top-k indices by confidence among Human-predicted and AI-predicted
// articles; ties broken by ascending article id. Throws when either
// predicted class has fewer than k members (the error reports both
// counts).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_reference_sets(std::span<const Article> articles,
                      std::span<const Prediction> predictions, int k);

// Mean similarity of the article to each reference set; self-similarity
// (same id and text hash) is excluded from the average.
RatioResult human_llm_ratio(const Article& article,
                            std::span<const ReferenceArticle> s_human,
                            std::span<const ReferenceArticle> s_ai,
                            const NormalizationStats& stats,
                            const EmbedderConfig& cfg);

struct ThresholdFit {
  double delta = 0;
  double f1 = 0;
  std::vector<RocPoint> roc_points;  // FPR-sorted, one per candidate
};

// Sweeps every distinct ratio value plus +infinity as a candidate
// threshold (classify Human iff ratio >= t), maximizing F1 of the Human
// class; F1 ties go to the larger threshold.
ThresholdFit best_f1_threshold(std::span<const double> ratios,
                               std::span<const Label> truths);

// The fine-tuning procedure: build S_H/S_M from predicted labels, compute
// every article's ratio, and fit delta against the true labels.
CalibrationProfile calibrate(const Corpus& sample,
                             std::span<const Prediction> predictions,
                             const std::string& domain_id, int k,
                             const NormalizationStats& stats,
                             const EmbedderConfig& cfg, int threads = 1);

struct Detection {
  Label label = Label::kHuman;
  RatioResult ratio;
};

// Human iff ratio >= delta; an infinite ratio beats any finite delta.
Detection detect_full(const Article& article, const CalibrationProfile& profile,
                      const NormalizationStats& stats,
                      const EmbedderConfig& cfg);
Label detect(const Article& article, const CalibrationProfile& profile,
             const NormalizationStats& stats, const EmbedderConfig& cfg);

std::vector<Detection> detect_corpus(const Corpus& corpus,
                                     const CalibrationProfile& profile,
                                     int threads = 1);

}  // namespace crossdet

#endif  // CROSSDET_ADAPTER_HPP_
