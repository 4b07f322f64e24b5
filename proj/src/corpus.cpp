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

#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "common.hpp"

namespace crossdet {

namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::string_view label_name(Label label) {
  return label == Label::kHuman ? "human" : "ai";
}

std::optional<Label> parse_label(std::string_view text) {
  const std::string lowered = lower_ascii(text);
  if (lowered == "human") return Label::kHuman;
  if (lowered == "ai") return Label::kAi;
  return std::nullopt;
}

Corpus::Corpus(std::string name, std::vector<Article> articles)
    : name_(std::move(name)), articles_(std::move(articles)) {
  std::unordered_map<std::string_view, std::size_t> seen;
  seen.reserve(articles_.size());
  for (std::size_t i = 0; i < articles_.size(); ++i) {
    const Article& a = articles_[i];
    if (a.id.empty()) {
      throw Error::data("corpus '" + name_ + "': article " +
                        std::to_string(i + 1) + " has an empty id");
    }
    auto [it, inserted] = seen.emplace(a.id, i);
    if (!inserted) {
      throw Error::data("corpus '" + name_ + "': duplicate id '" + a.id +
                        "' (articles " + std::to_string(it->second + 1) +
                        " and " + std::to_string(i + 1) + ")");
    }
    if (is_blank(a.text)) {
      throw Error::data("corpus '" + name_ + "': article '" + a.id +
                        "' has empty text");
    }
  }
}

Corpus Corpus::load(std::istream& in, std::string name) {
  std::vector<Article> articles;
  std::unordered_map<std::string, std::size_t> id_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": malformed record: " + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string() || !record.contains("text") ||
        !record["text"].is_string()) {
      throw Error::data("line " + std::to_string(line_no) +
                        ": record must be an object with string fields "
                        "'id' and 'text'");
    }
    Article article;
    article.id = record["id"].get<std::string>();
    article.text = record["text"].get<std::string>();
    if (article.id.empty()) {
      throw Error::data("line " + std::to_string(line_no) + ": empty id");
    }
    if (is_blank(article.text)) {
      throw Error::data("line " + std::to_string(line_no) + ": article '" +
                        article.id + "' has empty text");
    }
    auto [it, inserted] = id_lines.emplace(article.id, line_no);
    if (!inserted) {
      throw Error::data("duplicate id '" + article.id + "' on lines " +
                        std::to_string(it->second) + " and " +
                        std::to_string(line_no));
    }
    if (record.contains("label") && !record["label"].is_null()) {
      if (!record["label"].is_string()) {
        throw Error::data("line " + std::to_string(line_no) +
                          ": label must be a string");
      }
      const std::string raw = record["label"].get<std::string>();
      const auto parsed = parse_label(raw);
      if (!parsed) {
        throw Error::data("line " + std::to_string(line_no) +
                          ": unknown label '" + raw +
                          "' (expected \"human\" or \"ai\")");
      }
      article.label = *parsed;
    }
    if (record.contains("domain") && !record["domain"].is_null()) {
      if (!record["domain"].is_string()) {
        throw Error::data("line " + std::to_string(line_no) +
                          ": domain must be a string");
      }
      article.domain = record["domain"].get<std::string>();
    }
    articles.push_back(std::move(article));
  }
  return Corpus(std::move(name), std::move(articles));
}

Corpus Corpus::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::data("cannot open corpus file '" + path + "'");
  try {
    return load(in, std::filesystem::path(path).stem().string());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void Corpus::save(std::ostream& out) const {
  for (const Article& a : articles_) {
    nlohmann::json record;
    record["id"] = a.id;
    record["text"] = a.text;
    if (a.label) record["label"] = std::string(label_name(*a.label));
    if (!a.domain.empty()) record["domain"] = a.domain;
    out << record.dump() << '\n';
  }
}

void Corpus::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::data("cannot write corpus file '" + path + "'");
  save(out);
  if (!out) throw Error::data("write failed for '" + path + "'");
}

std::size_t Corpus::labeled_count() const {
  return static_cast<std::size_t>(
      std::count_if(articles_.begin(), articles_.end(),
                    [](const Article& a) { return a.label.has_value(); }));
}

std::size_t Corpus::count_with_label(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(articles_.begin(), articles_.end(), [&](const Article& a) {
        return a.label && *a.label == label;
      }));
}

namespace {

void shuffle_indices(std::vector<std::size_t>& indices, Rng& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec) {
  if (corpus.empty()) throw Error::data("cannot split an empty corpus");
  if (!(spec.train_fraction > 0.0) || spec.train_fraction > 1.0) {
    throw Error::usage("train_fraction must be in (0, 1]");
  }
  const std::size_t n = corpus.size();
  const std::size_t want = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(n)));

  std::vector<std::size_t> chosen;
  Rng rng(spec.seed);
  if (spec.stratified) {
    std::vector<std::size_t> human_idx, ai_idx;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& label = corpus.articles()[i].label;
      if (!label) {
        throw Error::data(
            "stratified split requested but article '" +
            corpus.articles()[i].id + "' is unlabeled");
      }
      (*label == Label::kHuman ? human_idx : ai_idx).push_back(i);
    }
    // Per-class targets by largest remainder, so the total matches `want`
    // and each class stays within one article of its exact proportion.
    const double exact_h = spec.train_fraction * human_idx.size();
    const double exact_a = spec.train_fraction * ai_idx.size();
    std::size_t take_h = static_cast<std::size_t>(std::floor(exact_h));
    std::size_t take_a = static_cast<std::size_t>(std::floor(exact_a));
    std::size_t leftover = want - take_h - take_a;  // 0, 1, or 2
    const double frac_h = exact_h - std::floor(exact_h);
    const double frac_a = exact_a - std::floor(exact_a);
    const bool human_first = frac_h >= frac_a;  // ties favor Human
    for (std::size_t g = 0; g < leftover; ++g) {
      const bool to_human = (g == 0) == human_first;
      if (to_human && take_h < human_idx.size()) {
        ++take_h;
      } else if (take_a < ai_idx.size()) {
        ++take_a;
      } else {
        ++take_h;
      }
    }
    shuffle_indices(human_idx, rng);
    shuffle_indices(ai_idx, rng);
    chosen.assign(human_idx.begin(), human_idx.begin() + take_h);
    chosen.insert(chosen.end(), ai_idx.begin(), ai_idx.begin() + take_a);
  } else {
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    shuffle_indices(indices, rng);
    chosen.assign(indices.begin(), indices.begin() + want);
  }

  std::sort(chosen.begin(), chosen.end());
  std::vector<Article> train, test;
  train.reserve(chosen.size());
  test.reserve(n - chosen.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < chosen.size() && chosen[next] == i) {
      train.push_back(corpus.articles()[i]);
      ++next;
    } else {
      test.push_back(corpus.articles()[i]);
    }
  }
  return {Corpus(corpus.name() + ".train", std::move(train)),
          Corpus(corpus.name() + ".test", std::move(test))};
}

}  // namespace crossdet
