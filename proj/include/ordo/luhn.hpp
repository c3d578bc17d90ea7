#pragma once

#include <string>
#include <vector>

#include "ordo/corpus.hpp"
#include "ordo/lda.hpp"

namespace ordo {

// Sentence boundaries at .!? followed by whitespace and an upper-case or
// quote/paren opener, with an abbreviation exception list.
std::vector<std::string> split_sentences(const std::string& raw_text);

struct LuhnConfig {
  int small_doc_sentences = 25;  // docs at most this long use min_frequency
  int min_frequency = 2;
  double large_doc_fraction = 0.001;  // of total tokens, floored at min_frequency
  int max_gap = 4;                    // insignificant words allowed inside a cluster
};

struct Summary {
  std::string doc_id;
  double ratio = 0.0;
  std::vector<std::string> sentences;      // original order
  std::vector<std::size_t> sentence_indices;  // 0-based positions in the source
};

Summary luhn_summarize(const Document& doc, double ratio,
                       const PreprocessConfig& preprocess = PreprocessConfig::defaults(),
                       const LuhnConfig& config = {});

// Parallel corpus of summary documents, re-preprocessed; gold positions
// preserved.
Corpus summarize_corpus(const Corpus& corpus, double ratio,
                        const PreprocessConfig& preprocess = PreprocessConfig::defaults(),
                        const LuhnConfig& config = {}, int workers = 1);

struct SweepRow {
  std::string corpus;
  std::string doc_id;
  double ratio = 0.0;
  double entropy_full = 0.0;
  double entropy_summary = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

// For each ratio: summarize, refit the topic model (same p, same seed), and
// report per-document entropy differences against the full-document fit.
std::vector<SweepRow> entropy_summary_sweep(const Corpus& corpus,
                                            const std::vector<double>& ratios,
                                            const LdaConfig& lda_config,
                                            const PreprocessConfig& preprocess =
                                                PreprocessConfig::defaults(),
                                            const LuhnConfig& config = {});

}  // namespace ordo
