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

#ifndef CROSSDET_RANKER_HPP_
#define CROSSDET_RANKER_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "embed.hpp"
#include "textfeat.hpp"

namespace crossdet {

struct Prediction {
  Label label = Label::kHuman;
  double confidence = 0;  // 2*logistic(|raw_score|) - 1, in [0, 1)
  double raw_score = 0;
};

struct TrainConfig {
  double margin = 1.0;
  double learning_rate = 0.05;
  int epochs = 40;
  int pairs_per_epoch = 256;
  std::uint64_t seed = 1;
};

// Linear scorer over the concatenation of normalized feature components
// and the pooled text embedding. Human-positive orientation: raw scores
// >= 0 mean Human.
struct RankerModel {
  std::vector<double> weights;  // dimension FeatureVector::kCount + D
  double bias = 0;
  double margin = 1.0;
  std::uint64_t seed = 0;
  EmbedderConfig embedder;
  NormalizationStats normalization;

  std::size_t dimension() const { return weights.size(); }
};

// max(0, -y*(s1 - s2) + margin). y must be +1 or -1.
double margin_ranking_loss(double s1, double s2, int y, double margin);

// Gradient of margin_ranking_loss(w.x1+b, w.x2+b, y, margin) with respect
// to (w, b). grad_w must have x1.size() entries.
void pair_loss_gradient(std::span<const double> weights, double bias,
                        std::span<const double> x1, std::span<const double> x2,
                        int y, double margin, std::span<double> grad_w,
                        double& grad_b);

// Normalized features concatenated with the pooled embedding.
std::vector<double> build_representation(std::string_view text,
                                         const NormalizationStats& stats,
                                         const EmbedderConfig& cfg);

struct LinearTrainResult {
  std::vector<double> weights;
  double bias = 0;
  double initial_loss = 0;  // mean pair loss of the schedule at the start
  double final_loss = 0;    // same schedule, trained weights
};

// Sequential SGD over seeded (human, ai) score pairs with y = +1. The
// sampled pair schedule is fixed up front; the returned weights never do
// worse than the start on that schedule. The bias is centered afterwards
// so that the midpoint of the class mean scores sits at zero.
LinearTrainResult train_linear_ranker(
    std::span<const std::vector<double>> human_points,
    std::span<const std::vector<double>> ai_points, const TrainConfig& cfg);

RankerModel train_ranker(const Corpus& corpus, const NormalizationStats& stats,
                         const EmbedderConfig& embedder, const TrainConfig& cfg,
                         int threads = 1);

double score_representation(const RankerModel& model,
                            std::span<const double> representation);
Prediction predict_representation(const RankerModel& model,
                                  std::span<const double> representation);
Prediction predict(const RankerModel& model, const Article& article);

// Batch predict; slot i belongs to article i.
std::vector<Prediction> predict_corpus(const RankerModel& model,
                                       const Corpus& corpus, int threads = 1);

// Reads line-delimited JSON records {id, label, confidence} so that an
// external classifier's outputs can stand in for this model's.
std::map<std::string, Prediction> load_external_predictions(std::istream& in);
std::map<std::string, Prediction> load_external_predictions_file(
    const std::string& path);

}  // namespace crossdet

#endif  // CROSSDET_RANKER_HPP_
