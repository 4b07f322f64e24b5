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

#ifndef CROSSDET_CORPUS_HPP_
#define CROSSDET_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crossdet {

enum class Label { kHuman, kAi };

// "human" / "ai"
std::string_view label_name(Label label);
// Case-insensitive; nullopt for unknown strings.
std::optional<Label> parse_label(std::string_view text);

struct Article {
  std::string id;
  std::string text;
  std::optional<Label> label;
  std::string domain;  // empty = untagged
};

// Ordered collection of articles with unique, non-empty ids and non-blank
// texts. Immutable after construction.
class Corpus {
 public:
  Corpus() = default;
  // Validates ids and texts; throws Error on violation.
  Corpus(std::string name, std::vector<Article> articles);

  // Reads line-delimited JSON records {id, text, label?, domain?}.
  // Labels are matched case-insensitively; blank lines are skipped.
  static Corpus load(std::istream& in, std::string name);
  static Corpus load_file(const std::string& path);

  // One JSON object per line; labels lowercase.
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;

  const std::string& name() const { return name_; }
  const std::vector<Article>& articles() const { return articles_; }
  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }

  // Number of articles carrying a label.
  std::size_t labeled_count() const;
  std::size_t count_with_label(Label label) const;

 private:
  std::string name_;
  std::vector<Article> articles_;
};

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Seeded Fisher-Yates partition into (train, test). The train part holds
// round(train_fraction * n) articles; stratified mode keeps each class
// within one article of its exact proportion. Both parts preserve the
// input's relative order.
std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace crossdet

#endif  // CROSSDET_CORPUS_HPP_
