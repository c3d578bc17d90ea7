#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ordo {

// Lowercased word tokens; ASCII punctuation split, pure-digit and
// single-character tokens dropped.
std::vector<std::string> tokenize(std::string_view text);

// Bundled base English stop list.
const std::unordered_set<std::string>& base_stop_words();
// Base list plus the scholarly-structure additions (abstract, introduction,
// chapter, figure, fig, table).
const std::unordered_set<std::string>& default_stop_words();

class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string lemma(std::string_view token) const = 0;
};

// Deterministic normalizer: irregular-form dictionary plus suffix rules run
// to a fixpoint, so lemma(lemma(t)) == lemma(t).
class RuleLemmatizer : public Lemmatizer {
 public:
  std::string lemma(std::string_view token) const override;
};

struct PreprocessConfig {
  std::unordered_set<std::string> stop_words;
  std::shared_ptr<const Lemmatizer> lemmatizer;

  static PreprocessConfig defaults();
};

// Full token pipeline for one text: tokenize, stop-filter, lemmatize,
// stop-filter again on the lemma. Never throws; may return empty.
std::vector<std::string> extract_terms(std::string_view text, const PreprocessConfig& config);

}  // namespace ordo
