#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordo/corpus.hpp"

namespace ordo {

struct LdaConfig {
  double topics_ratio = 0.20;
  int num_topics = 0;    // 0 = choose from ratio
  double alpha = 0.0;    // 0 = 50/p
  double beta = 0.01;
  int iterations = 500;
  int loglik_interval = 10;
  std::uint64_t seed = 0;
};

// p = min(n_docs, max(2, round(ratio * n_docs)))
int choose_num_topics(int n_docs, double ratio);

struct TopicModel {
  int num_topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;
  std::vector<double> topic_word;  // num_topics x |V|, rows sum to 1
  std::vector<double> loglik_checkpoints;

  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(topic_word).subspan(k * vocabulary.size(),
                                                       vocabulary.size());
  }
};

struct DocTopicMatrix {
  int num_topics = 0;
  std::vector<std::string> row_ids;
  std::vector<double> values;  // rows() x num_topics, rows sum to 1

  std::size_t rows() const { return row_ids.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(
        i * static_cast<std::size_t>(num_topics), static_cast<std::size_t>(num_topics));
  }
};

// Collapsed Gibbs sampling; deterministic for a fixed seed.
std::pair<TopicModel, DocTopicMatrix> fit_lda(const DocTermMatrix& dtm, int num_topics,
                                              std::uint64_t seed, int iterations,
                                              double alpha, double beta,
                                              int loglik_interval = 10);
std::pair<TopicModel, DocTopicMatrix> fit_lda(const DocTermMatrix& dtm,
                                              const LdaConfig& config);

// Argmax topic; ties break toward the lowest index.
int dominant_topic(std::span<const double> doc_topic_row);

// Top-k (word, probability) tuples per topic.
void write_topic_csv(const TopicModel& model, std::ostream& out, int top_k = 10);

}  // namespace ordo
