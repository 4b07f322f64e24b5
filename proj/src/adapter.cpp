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

#include "adapter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "common.hpp"
#include "sha256.hpp"

namespace crossdet {

ArticleRep make_article_rep(std::string_view text,
                            const NormalizationStats& stats,
                            const EmbedderConfig& cfg) {
  const auto tokenized = tokenize(text);
  ArticleRep rep;
  rep.features = normalize(extract_features(tokenized), stats).as_array();
  rep.embedding = embed_tokens(tokenized.tokens, cfg);
  return rep;
}

double rep_similarity(const ArticleRep& a, const ArticleRep& b) {
  double sq = 0;
  for (std::size_t k = 0; k < a.features.size(); ++k) {
    const double d = a.features[k] - b.features[k];
    sq += d * d;
  }
  const double feature_term = 1.0 / (1.0 + std::sqrt(sq));
  const double embedding_term = (cosine(a.embedding, b.embedding).value + 1.0) / 2.0;
  return feature_term + embedding_term;
}

double pairwise_similarity(const Article& a, const Article& b,
                           const NormalizationStats& stats,
                           const EmbedderConfig& cfg) {
  return rep_similarity(make_article_rep(a.text, stats, cfg),
                        make_article_rep(b.text, stats, cfg));
}

SimilarityMatrix SimilarityMatrix::build(const Corpus& corpus,
                                         const NormalizationStats& stats,
                                         const EmbedderConfig& cfg,
                                         int threads) {
  const std::size_t n = corpus.size();
  std::vector<ArticleRep> reps(n);
  parallel_for(n, threads, [&](std::size_t i) {
    reps[i] = make_article_rep(corpus.articles()[i].text, stats, cfg);
  });

  SimilarityMatrix m;
  m.ids_.reserve(n);
  for (const auto& a : corpus.articles()) m.ids_.push_back(a.id);
  m.values_.assign(n * n, 0.0);
  // Upper triangle, mirrored, so the matrix is exactly symmetric.
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double s = rep_similarity(reps[i], reps[j]);
      m.values_[i * n + j] = s;
      m.values_[j * n + i] = s;
    }
  });
  return m;
}

RatioResult RatioResult::from_averages(double avg_human, double avg_ai) {
  RatioResult r;
  r.avg_human = avg_human;
  r.avg_ai = avg_ai;
  if (avg_ai > 0.0) {
    r.ratio = avg_human / avg_ai;
  } else if (avg_human > 0.0) {
    r.ratio = std::numeric_limits<double>::infinity();
  } else {
    r.ratio = 1.0;
  }
  return r;
}

void CalibrationProfile::validate() const {
  if (k < 1) throw Error::data("profile k must be positive");
  if (s_human.size() != static_cast<std::size_t>(k) ||
      s_ai.size() != static_cast<std::size_t>(k)) {
    throw Error::data("profile reference sets must each hold k = " +
                      std::to_string(k) + " articles (got " +
                      std::to_string(s_human.size()) + " and " +
                      std::to_string(s_ai.size()) + ")");
  }
  for (const auto& h : s_human) {
    for (const auto& a : s_ai) {
      if (h.id == a.id) {
        throw Error::data("profile reference sets overlap on id '" + h.id + "'");
      }
    }
  }
  bool delta_found = false;
  for (const auto& p : roc_points) {
    if (p.threshold == delta) delta_found = true;
  }
  if (!roc_points.empty() && !delta_found) {
    throw Error::data("profile delta is not one of the swept thresholds");
  }
  embedder.validate();
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_reference_sets(std::span<const Article> articles,
                      std::span<const Prediction> predictions, int k) {
  if (articles.size() != predictions.size()) {
    throw Error::internal("articles/predictions length mismatch");
  }
  if (k < 1) throw Error::usage("k must be positive");

  std::vector<std::size_t> human_idx, ai_idx;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    (predictions[i].label == Label::kHuman ? human_idx : ai_idx).push_back(i);
  }
  if (human_idx.size() < static_cast<std::size_t>(k) ||
      ai_idx.size() < static_cast<std::size_t>(k)) {
    throw Error::data(
        "not enough predicted articles for k = " + std::to_string(k) +
        ": predicted Human " + std::to_string(human_idx.size()) +
        ", predicted AI " + std::to_string(ai_idx.size()) +
        "; retry with k <= " +
        std::to_string(std::min(human_idx.size(), ai_idx.size())));
  }

  auto by_confidence_then_id = [&](std::size_t a, std::size_t b) {
    if (predictions[a].confidence != predictions[b].confidence) {
      return predictions[a].confidence > predictions[b].confidence;
    }
    return articles[a].id < articles[b].id;
  };
  std::sort(human_idx.begin(), human_idx.end(), by_confidence_then_id);
  std::sort(ai_idx.begin(), ai_idx.end(), by_confidence_then_id);
  human_idx.resize(static_cast<std::size_t>(k));
  ai_idx.resize(static_cast<std::size_t>(k));
  return {std::move(human_idx), std::move(ai_idx)};
}

namespace {

// Mean similarity of `rep` to the reference set, skipping the article
// itself when it is a member.
double mean_similarity(const ArticleRep& rep, const std::string& id,
                       const std::string& text_sha,
                       std::span<const ReferenceArticle> refs) {
  double total = 0;
  std::size_t n = 0;
  for (const ReferenceArticle& ref : refs) {
    if (ref.id == id && ref.text_sha256 == text_sha) continue;
    total += rep_similarity(rep, ref.rep);
    ++n;
  }
  if (n == 0) {
    throw Error::data(
        "reference set is empty after excluding the article itself");
  }
  return total / static_cast<double>(n);
}

RatioResult ratio_for_rep(const ArticleRep& rep, const std::string& id,
                          const std::string& text_sha,
                          std::span<const ReferenceArticle> s_human,
                          std::span<const ReferenceArticle> s_ai) {
  if (s_human.empty() || s_ai.empty()) {
    throw Error::data("reference sets must be non-empty");
  }
  const double avg_h = mean_similarity(rep, id, text_sha, s_human);
  const double avg_a = mean_similarity(rep, id, text_sha, s_ai);
  return RatioResult::from_averages(avg_h, avg_a);
}

}  // namespace

RatioResult human_llm_ratio(const Article& article,
                            std::span<const ReferenceArticle> s_human,
                            std::span<const ReferenceArticle> s_ai,
                            const NormalizationStats& stats,
                            const EmbedderConfig& cfg) {
  const auto rep = make_article_rep(article.text, stats, cfg);
  return ratio_for_rep(rep, article.id, sha256_hex(article.text), s_human,
                       s_ai);
}

ThresholdFit best_f1_threshold(std::span<const double> ratios,
                               std::span<const Label> truths) {
  if (ratios.size() != truths.size()) {
    throw Error::usage("ratios and truths must have equal length");
  }
  if (ratios.empty()) throw Error::data("cannot fit a threshold on no data");
  long positives = 0;
  for (Label t : truths) positives += (t == Label::kHuman) ? 1 : 0;
  const long negatives = static_cast<long>(truths.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw Error::data("threshold fitting requires both classes in the truths");
  }

  // Sort ratios descending and sweep; after absorbing a group of equal
  // values, that value is a candidate threshold t and the articles seen so
  // far are exactly those with ratio >= t.
  std::vector<std::size_t> order(ratios.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ratios[a] > ratios[b];
  });

  ThresholdFit fit;
  fit.delta = std::numeric_limits<double>::infinity();
  fit.f1 = -1.0;

  long tp = 0, fp = 0;
  auto consider = [&](double threshold) {
    const double precision =
        tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall =
        static_cast<double>(tp) / static_cast<double>(positives);
    const double f1 = precision + recall > 0.0
                          ? 2.0 * precision * recall / (precision + recall)
                          : 0.0;
    fit.roc_points.push_back(
        {static_cast<double>(fp) / static_cast<double>(negatives),
         static_cast<double>(tp) / static_cast<double>(positives), threshold});
    // Strict improvement only: the sweep visits thresholds in descending
    // order, so F1 ties keep the larger threshold.
    if (f1 > fit.f1) {
      fit.f1 = f1;
      fit.delta = threshold;
    }
  };

  // The +infinity candidate exists even when no ratio is infinite.
  const bool has_infinite_ratio =
      !order.empty() && std::isinf(ratios[order.front()]);
  if (!has_infinite_ratio) {
    consider(std::numeric_limits<double>::infinity());
  }

  std::size_t i = 0;
  while (i < order.size()) {
    const double value = ratios[order[i]];
    while (i < order.size() && ratios[order[i]] == value) {
      if (truths[order[i]] == Label::kHuman) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    consider(value);
  }

  std::sort(fit.roc_points.begin(), fit.roc_points.end(),
            [](const RocPoint& a, const RocPoint& b) {
              if (a.fpr != b.fpr) return a.fpr < b.fpr;
              if (a.tpr != b.tpr) return a.tpr < b.tpr;
              return a.threshold > b.threshold;
            });
  return fit;
}

CalibrationProfile calibrate(const Corpus& sample,
                             std::span<const Prediction> predictions,
                             const std::string& domain_id, int k,
                             const NormalizationStats& stats,
                             const EmbedderConfig& cfg, int threads) {
  if (sample.size() != predictions.size()) {
    throw Error::usage("sample and predictions must be parallel");
  }
  for (const auto& article : sample.articles()) {
    if (!article.label) {
      throw Error::data("calibration sample article '" + article.id +
                        "' is unlabeled");
    }
  }

  const auto [human_sel, ai_sel] =
      select_reference_sets(sample.articles(), predictions, k);

  std::vector<ArticleRep> reps(sample.size());
  std::vector<std::string> hashes(sample.size());
  parallel_for(sample.size(), threads, [&](std::size_t i) {
    reps[i] = make_article_rep(sample.articles()[i].text, stats, cfg);
    hashes[i] = sha256_hex(sample.articles()[i].text);
  });

  CalibrationProfile profile;
  profile.domain_id = domain_id;
  profile.k = k;
  profile.normalization = stats;
  profile.embedder = cfg;
  auto collect = [&](const std::vector<std::size_t>& indices) {
    std::vector<ReferenceArticle> refs;
    refs.reserve(indices.size());
    for (std::size_t i : indices) {
      refs.push_back({sample.articles()[i].id, hashes[i],
                      sample.articles()[i].text, reps[i]});
    }
    return refs;
  };
  profile.s_human = collect(human_sel);
  profile.s_ai = collect(ai_sel);

  std::vector<double> ratios(sample.size());
  parallel_for(sample.size(), threads, [&](std::size_t i) {
    ratios[i] = ratio_for_rep(reps[i], sample.articles()[i].id, hashes[i],
                              profile.s_human, profile.s_ai)
                    .ratio;
  });
  std::vector<Label> truths;
  truths.reserve(sample.size());
  for (const auto& article : sample.articles()) truths.push_back(*article.label);

  auto fit = best_f1_threshold(ratios, truths);
  profile.delta = fit.delta;
  profile.achieved_f1 = fit.f1;
  profile.roc_points = std::move(fit.roc_points);
  profile.validate();
  return profile;
}

Detection detect_full(const Article& article,
                      const CalibrationProfile& profile,
                      const NormalizationStats& stats,
                      const EmbedderConfig& cfg) {
  Detection d;
  d.ratio = human_llm_ratio(article, profile.s_human, profile.s_ai, stats, cfg);
  // >= per the detection rule; an infinite ratio clears any finite delta.
  d.label = d.ratio.ratio >= profile.delta ? Label::kHuman : Label::kAi;
  return d;
}

Label detect(const Article& article, const CalibrationProfile& profile,
             const NormalizationStats& stats, const EmbedderConfig& cfg) {
  return detect_full(article, profile, stats, cfg).label;
}

std::vector<Detection> detect_corpus(const Corpus& corpus,
                                     const CalibrationProfile& profile,
                                     int threads) {
  std::vector<Detection> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    out[i] = detect_full(corpus.articles()[i], profile, profile.normalization,
                         profile.embedder);
  });
  return out;
}

}  // namespace crossdet
