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

#include "ranker.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "common.hpp"

namespace crossdet {

double margin_ranking_loss(double s1, double s2, int y, double margin) {
  if (y != 1 && y != -1) throw Error::usage("y must be +1 or -1");
  const double raw = -static_cast<double>(y) * (s1 - s2) + margin;
  return raw > 0.0 ? raw : 0.0;
}

void pair_loss_gradient(std::span<const double> weights, double bias,
                        std::span<const double> x1, std::span<const double> x2,
                        int y, double margin, std::span<double> grad_w,
                        double& grad_b) {
  if (x1.size() != weights.size() || x2.size() != weights.size() ||
      grad_w.size() != weights.size()) {
    throw Error::internal("pair_loss_gradient dimension mismatch");
  }
  double s1 = bias, s2 = bias;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s1 += weights[k] * x1[k];
    s2 += weights[k] * x2[k];
  }
  // The bias cancels in s1 - s2, so its gradient is always zero.
  grad_b = 0.0;
  const bool active = -static_cast<double>(y) * (s1 - s2) + margin > 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    grad_w[k] = active ? -static_cast<double>(y) * (x1[k] - x2[k]) : 0.0;
  }
}

std::vector<double> build_representation(std::string_view text,
                                         const NormalizationStats& stats,
                                         const EmbedderConfig& cfg) {
  const auto tokenized = tokenize(text);
  const auto normalized = normalize(extract_features(tokenized), stats);
  const auto embedding = embed_tokens(tokenized.tokens, cfg);

  std::vector<double> rep;
  rep.reserve(FeatureVector::kCount + embedding.dimension());
  for (double v : normalized.as_array()) rep.push_back(v);
  rep.insert(rep.end(), embedding.values().begin(), embedding.values().end());
  return rep;
}

namespace {

double dot_score(std::span<const double> w, double b,
                 std::span<const double> x) {
  double s = b;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * x[k];
  return s;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LinearTrainResult train_linear_ranker(
    std::span<const std::vector<double>> human_points,
    std::span<const std::vector<double>> ai_points, const TrainConfig& cfg) {
  if (human_points.empty() || ai_points.empty()) {
    throw Error::data("training requires at least one article of each class");
  }
  if (cfg.margin <= 0) throw Error::usage("margin must be positive");
  if (cfg.learning_rate <= 0 || cfg.epochs <= 0 || cfg.pairs_per_epoch <= 0) {
    throw Error::usage("learning_rate, epochs, and pairs_per_epoch must be positive");
  }
  const std::size_t dim = human_points.front().size();
  for (const auto& p : human_points) {
    if (p.size() != dim) throw Error::internal("ragged training vectors");
  }
  for (const auto& p : ai_points) {
    if (p.size() != dim) throw Error::internal("ragged training vectors");
  }

  // Fixed pair schedule: every epoch draws from both classes by
  // construction.
  Rng rng(cfg.seed);
  const std::size_t total_pairs =
      static_cast<std::size_t>(cfg.epochs) *
      static_cast<std::size_t>(cfg.pairs_per_epoch);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> schedule;
  schedule.reserve(total_pairs);
  for (std::size_t t = 0; t < total_pairs; ++t) {
    schedule.emplace_back(
        static_cast<std::uint32_t>(rng.below(human_points.size())),
        static_cast<std::uint32_t>(rng.below(ai_points.size())));
  }

  std::vector<double> w(dim, 0.0);
  auto schedule_loss = [&](std::span<const double> weights) {
    double total = 0;
    for (const auto& [hi, ai] : schedule) {
      const double s1 = dot_score(weights, 0.0, human_points[hi]);
      const double s2 = dot_score(weights, 0.0, ai_points[ai]);
      total += margin_ranking_loss(s1, s2, +1, cfg.margin);
    }
    return total / static_cast<double>(schedule.size());
  };

  LinearTrainResult result;
  result.initial_loss = schedule_loss(w);

  for (const auto& [hi, ai] : schedule) {
    const auto& xh = human_points[hi];
    const auto& xa = ai_points[ai];
    const double s1 = dot_score(w, 0.0, xh);
    const double s2 = dot_score(w, 0.0, xa);
    if (-(s1 - s2) + cfg.margin > 0.0) {
      for (std::size_t k = 0; k < dim; ++k) {
        w[k] += cfg.learning_rate * (xh[k] - xa[k]);
      }
    }
  }

  result.final_loss = schedule_loss(w);
  if (result.final_loss > result.initial_loss) {
    // The zero vector scored better on the schedule; keep it.
    std::fill(w.begin(), w.end(), 0.0);
    result.final_loss = result.initial_loss;
  }

  // Center the decision threshold between the class mean scores.
  double mean_h = 0, mean_a = 0;
  for (const auto& p : human_points) mean_h += dot_score(w, 0.0, p);
  for (const auto& p : ai_points) mean_a += dot_score(w, 0.0, p);
  mean_h /= static_cast<double>(human_points.size());
  mean_a /= static_cast<double>(ai_points.size());
  result.bias = -(mean_h + mean_a) / 2.0;
  result.weights = std::move(w);
  return result;
}

RankerModel train_ranker(const Corpus& corpus, const NormalizationStats& stats,
                         const EmbedderConfig& embedder, const TrainConfig& cfg,
                         int threads) {
  embedder.validate();
  std::vector<std::vector<double>> reps(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    reps[i] = build_representation(corpus.articles()[i].text, stats, embedder);
  });

  std::vector<std::vector<double>> human_points, ai_points;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& label = corpus.articles()[i].label;
    if (!label) continue;
    (*label == Label::kHuman ? human_points : ai_points)
        .push_back(std::move(reps[i]));
  }
  auto trained = train_linear_ranker(human_points, ai_points, cfg);

  RankerModel model;
  model.weights = std::move(trained.weights);
  model.bias = trained.bias;
  model.margin = cfg.margin;
  model.seed = cfg.seed;
  model.embedder = embedder;
  model.normalization = stats;
  return model;
}

double score_representation(const RankerModel& model,
                            std::span<const double> representation) {
  if (representation.size() != model.weights.size()) {
    throw Error::internal("representation dimension " +
                          std::to_string(representation.size()) +
                          " does not match model dimension " +
                          std::to_string(model.weights.size()));
  }
  return dot_score(model.weights, model.bias, representation);
}

Prediction predict_representation(const RankerModel& model,
                                  std::span<const double> representation) {
  const double raw = score_representation(model, representation);
  Prediction p;
  p.raw_score = raw;
  p.label = raw >= 0.0 ? Label::kHuman : Label::kAi;
  p.confidence = 2.0 * logistic(std::abs(raw)) - 1.0;
  return p;
}

Prediction predict(const RankerModel& model, const Article& article) {
  const auto rep =
      build_representation(article.text, model.normalization, model.embedder);
  return predict_representation(model, rep);
}

std::vector<Prediction> predict_corpus(const RankerModel& model,
                                       const Corpus& corpus, int threads) {
  std::vector<Prediction> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    out[i] = predict(model, corpus.articles()[i]);
  });
  return out;
}

std::map<std::string, Prediction> load_external_predictions(std::istream& in) {
  std::map<std::string, Prediction> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": malformed prediction record: " + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string() || !record.contains("label") ||
        !record.contains("confidence") ||
        !record["confidence"].is_number()) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": prediction record needs id, label, confidence");
    }
    const std::string id = record["id"].get<std::string>();
    const auto label = record["label"].is_string()
                           ? parse_label(record["label"].get<std::string>())
                           : std::nullopt;
    if (!label) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": unknown label for id '" + id + "'");
    }
    const double confidence = record["confidence"].get<double>();
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": confidence " + format_double(confidence) +
                        " out of [0, 1] for id '" + id + "'");
    }
    Prediction p;
    p.label = *label;
    p.confidence = confidence;
    // Invert the confidence mapping so |raw| round-trips; confidence 1
    // maps to an infinite magnitude.
    const double magnitude =
        confidence < 1.0 ? std::log((1.0 + confidence) / (1.0 - confidence))
                         : std::numeric_limits<double>::infinity();
    p.raw_score = p.label == Label::kHuman ? magnitude : -magnitude;
    auto [it, inserted] = table.emplace(id, p);
    if (!inserted) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": duplicate prediction for id '" + id + "'");
    }
  }
  return table;
}

std::map<std::string, Prediction> load_external_predictions_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::data("cannot open predictions file '" + path + "'");
  return load_external_predictions(in);
}

}  // namespace crossdet
