#include "ordo/lda.hpp"

#include <algorithm>
#include <cmath>

#include "ordo/csv.hpp"
#include "ordo/error.hpp"
#include "ordo/rng.hpp"

namespace ordo {

int choose_num_topics(int n_docs, double ratio) {
  if (n_docs < 2) throw Error("corpus too small: need at least 2 documents");
  if (ratio <= 0.0 || ratio > 1.0) throw Error("topics ratio out of range (0,1]");
  int p = static_cast<int>(std::lround(ratio * n_docs));
  p = std::max(2, p);
  return std::min(p, n_docs);
}

namespace {

struct GibbsState {
  int num_docs = 0;
  int num_topics = 0;
  int vocab_size = 0;
  std::vector<int> doc_of_token;
  std::vector<int> word_of_token;
  std::vector<int> topic_of_token;
  std::vector<int> doc_topic;    // num_docs x num_topics
  std::vector<int> topic_word;   // num_topics x vocab_size
  std::vector<int> topic_total;  // num_topics
  std::vector<int> doc_length;   // num_docs
};

double log_likelihood(const GibbsState& state, double alpha, double beta) {
  const int p = state.num_topics;
  const int v = state.vocab_size;
  std::vector<double> phi(static_cast<std::size_t>(p) * v);
  for (int k = 0; k < p; ++k) {
    const double denom = state.topic_total[k] + v * beta;
    for (int w = 0; w < v; ++w) {
      phi[static_cast<std::size_t>(k) * v + w] =
          (state.topic_word[static_cast<std::size_t>(k) * v + w] + beta) / denom;
    }
  }
  double ll = 0.0;
  for (std::size_t t = 0; t < state.topic_of_token.size(); ++t) {
    const int d = state.doc_of_token[t];
    const int w = state.word_of_token[t];
    const double theta_denom = state.doc_length[d] + p * alpha;
    double prob = 0.0;
    for (int k = 0; k < p; ++k) {
      const double theta =
          (state.doc_topic[static_cast<std::size_t>(d) * p + k] + alpha) / theta_denom;
      prob += theta * phi[static_cast<std::size_t>(k) * v + w];
    }
    ll += std::log(prob);
  }
  return ll;
}

}  // namespace

std::pair<TopicModel, DocTopicMatrix> fit_lda(const DocTermMatrix& dtm, int num_topics,
                                              std::uint64_t seed, int iterations,
                                              double alpha, double beta,
                                              int loglik_interval) {
  const int n = static_cast<int>(dtm.rows());
  const int v = static_cast<int>(dtm.cols());
  if (n < 1 || v < 1) throw Error("empty document-term matrix");
  if (num_topics < 1) throw Error("topic count must be at least 1");
  if (iterations < 1) throw Error("iteration count must be at least 1");
  if (beta <= 0.0) throw Error("beta must be positive");
  const int p = num_topics;
  const double eff_alpha = alpha > 0.0 ? alpha : 50.0 / p;

  GibbsState state;
  state.num_docs = n;
  state.num_topics = p;
  state.vocab_size = v;
  state.doc_topic.assign(static_cast<std::size_t>(n) * p, 0);
  state.topic_word.assign(static_cast<std::size_t>(p) * v, 0);
  state.topic_total.assign(p, 0);
  state.doc_length.assign(n, 0);

  for (int d = 0; d < n; ++d) {
    const auto row = dtm.row(d);
    for (int w = 0; w < v; ++w) {
      for (std::uint32_t c = 0; c < row[w]; ++c) {
        state.doc_of_token.push_back(d);
        state.word_of_token.push_back(w);
      }
      state.doc_length[d] += static_cast<int>(row[w]);
    }
  }
  const std::size_t n_tokens = state.doc_of_token.size();
  if (n_tokens == 0) throw Error("document reduced to empty term list: all rows zero");
  state.topic_of_token.assign(n_tokens, 0);

  Rng rng(seed);
  for (std::size_t t = 0; t < n_tokens; ++t) {
    const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p)));
    state.topic_of_token[t] = k;
    ++state.doc_topic[static_cast<std::size_t>(state.doc_of_token[t]) * p + k];
    ++state.topic_word[static_cast<std::size_t>(k) * v + state.word_of_token[t]];
    ++state.topic_total[k];
  }

  TopicModel model;
  model.num_topics = p;
  model.alpha = eff_alpha;
  model.beta = beta;
  model.iterations = iterations;
  model.seed = seed;
  model.vocabulary = dtm.vocabulary;

  std::vector<double> cumulative(p, 0.0);
  for (int sweep = 1; sweep <= iterations; ++sweep) {
    for (std::size_t t = 0; t < n_tokens; ++t) {
      const int d = state.doc_of_token[t];
      const int w = state.word_of_token[t];
      const int old_k = state.topic_of_token[t];
      --state.doc_topic[static_cast<std::size_t>(d) * p + old_k];
      --state.topic_word[static_cast<std::size_t>(old_k) * v + w];
      --state.topic_total[old_k];

      double total = 0.0;
      for (int k = 0; k < p; ++k) {
        const double phi = (state.topic_word[static_cast<std::size_t>(k) * v + w] + beta) /
                           (state.topic_total[k] + v * beta);
        total += phi * (state.doc_topic[static_cast<std::size_t>(d) * p + k] + eff_alpha);
        cumulative[k] = total;
      }
      const double u = rng.next_double01() * total;
      int new_k = p - 1;
      for (int k = 0; k < p; ++k) {
        if (u < cumulative[k]) {
          new_k = k;
          break;
        }
      }
      state.topic_of_token[t] = new_k;
      ++state.doc_topic[static_cast<std::size_t>(d) * p + new_k];
      ++state.topic_word[static_cast<std::size_t>(new_k) * v + w];
      ++state.topic_total[new_k];
    }
    if (loglik_interval > 0 &&
        (sweep % loglik_interval == 0 || sweep == iterations)) {
      model.loglik_checkpoints.push_back(log_likelihood(state, eff_alpha, beta));
    }
  }

  model.topic_word.resize(static_cast<std::size_t>(p) * v);
  for (int k = 0; k < p; ++k) {
    const double denom = state.topic_total[k] + v * beta;
    for (int w = 0; w < v; ++w) {
      model.topic_word[static_cast<std::size_t>(k) * v + w] =
          (state.topic_word[static_cast<std::size_t>(k) * v + w] + beta) / denom;
    }
  }

  DocTopicMatrix doc_topic;
  doc_topic.num_topics = p;
  doc_topic.row_ids = dtm.row_ids;
  doc_topic.values.resize(static_cast<std::size_t>(n) * p);
  for (int d = 0; d < n; ++d) {
    const double denom = state.doc_length[d] + p * eff_alpha;
    for (int k = 0; k < p; ++k) {
      doc_topic.values[static_cast<std::size_t>(d) * p + k] =
          (state.doc_topic[static_cast<std::size_t>(d) * p + k] + eff_alpha) / denom;
    }
  }
  return {std::move(model), std::move(doc_topic)};
}

std::pair<TopicModel, DocTopicMatrix> fit_lda(const DocTermMatrix& dtm,
                                              const LdaConfig& config) {
  const int p = config.num_topics > 0
                    ? std::min<int>(config.num_topics, static_cast<int>(dtm.rows()))
                    : choose_num_topics(static_cast<int>(dtm.rows()), config.topics_ratio);
  return fit_lda(dtm, p, config.seed, config.iterations, config.alpha, config.beta,
                 config.loglik_interval);
}

int dominant_topic(std::span<const double> doc_topic_row) {
  if (doc_topic_row.empty()) throw Error("invalid probability distribution: empty");
  double sum = 0.0;
  for (double x : doc_topic_row) {
    if (x < 0.0) throw Error("invalid probability distribution: negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error("invalid probability distribution: does not sum to 1");
  }
  int best = 0;
  for (std::size_t k = 1; k < doc_topic_row.size(); ++k) {
    if (doc_topic_row[k] > doc_topic_row[best]) best = static_cast<int>(k);
  }
  return best;
}

void write_topic_csv(const TopicModel& model, std::ostream& out, int top_k) {
  csv::Writer writer(out);
  writer.field("topic").field("rank").field("word").field("probability");
  writer.end_row();
  const std::size_t v = model.vocabulary.size();
  for (int k = 0; k < model.num_topics; ++k) {
    std::vector<std::size_t> order(v);
    for (std::size_t w = 0; w < v; ++w) order[w] = w;
    const auto row = model.row(static_cast<std::size_t>(k));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return model.vocabulary[a] < model.vocabulary[b];
    });
    const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(top_k), v);
    for (std::size_t r = 0; r < limit; ++r) {
      writer.field(k).field(static_cast<int>(r + 1)).field(model.vocabulary[order[r]]);
      writer.field(row[order[r]]);
      writer.end_row();
    }
  }
}

}  // namespace ordo
