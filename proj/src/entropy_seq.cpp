#include "ordo/entropy_seq.hpp"

#include <cmath>

#include "ordo/error.hpp"
#include "ordo/rng.hpp"

namespace ordo {

namespace {

void validate_distribution(std::span<const double> dist) {
  if (dist.empty()) throw Error("invalid probability distribution: empty");
  double sum = 0.0;
  for (double x : dist) {
    if (x < 0.0) throw Error("invalid probability distribution: negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error("invalid probability distribution: does not sum to 1");
  }
}

}  // namespace

double entropy(std::span<const double> dist) {
  validate_distribution(dist);
  double h = 0.0;
  for (double x : dist) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double kld_uniform(std::span<const double> dist) {
  return std::log(static_cast<double>(dist.size())) - entropy(dist);
}

DivergenceKind divergence_from_string(std::string_view name) {
  if (name == "entropy") return DivergenceKind::entropy;
  if (name == "kld_uniform" || name == "kld") return DivergenceKind::kld_uniform;
  throw Error("unknown divergence kind: " + std::string(name));
}

std::string_view to_string(DivergenceKind kind) {
  return kind == DivergenceKind::entropy ? "entropy" : "kld_uniform";
}

ExtremeDirection direction_from_string(std::string_view name) {
  if (name == "most_first") return ExtremeDirection::most_first;
  if (name == "least_first") return ExtremeDirection::least_first;
  throw Error("unknown direction: " + std::string(name));
}

std::string_view to_string(ExtremeDirection direction) {
  return direction == ExtremeDirection::most_first ? "most_first" : "least_first";
}

Ordering entropy_sequence(const Corpus& corpus, DivergenceKind kind,
                          ExtremeDirection direction, const LdaConfig& config) {
  const std::size_t n = corpus.size();
  if (n < 2) throw Error("corpus too small: need at least 2 documents to order");

  Ordering ordering;
  ordering.method = std::string(to_string(kind)) + "/" +
                    std::string(to_string(direction));
  ordering.positions.reserve(n);
  ordering.trace.reserve(n);

  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

  for (std::uint64_t iteration = 0; remaining.size() > 1; ++iteration) {
    Corpus subset;
    subset.name = corpus.name;
    subset.genre = corpus.genre;
    for (std::size_t row : remaining) subset.documents.push_back(corpus.documents[row]);

    const DocTermMatrix dtm = build_doc_term_matrix(subset);
    const int p = config.num_topics > 0
                      ? std::min<int>(config.num_topics, static_cast<int>(remaining.size()))
                      : choose_num_topics(static_cast<int>(remaining.size()),
                                          config.topics_ratio);
    const auto [model, doc_topic] =
        fit_lda(dtm, p, derive_seed(config.seed, iteration), config.iterations,
                config.alpha, config.beta, config.loglik_interval);

    TraceStep trace;
    trace.fitted_topics = p;
    std::size_t best = remaining.size();
    double best_score = 0.0;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const double score = kind == DivergenceKind::entropy
                               ? entropy(doc_topic.row(r))
                               : kld_uniform(doc_topic.row(r));
      const int gold = corpus.documents[remaining[r]].gold_position;
      trace.candidate_scores.emplace_back(gold, score);
      const bool better =
          best == remaining.size() ||
          (direction == ExtremeDirection::most_first ? score > best_score
                                                     : score < best_score) ||
          (score == best_score &&
           gold < corpus.documents[remaining[best]].gold_position);
      if (better) {
        best = r;
        best_score = score;
      }
    }
    trace.chosen = corpus.documents[remaining[best]].gold_position;
    trace.score = best_score;
    ordering.positions.push_back(trace.chosen);
    ordering.trace.push_back(std::move(trace));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }

  TraceStep last;
  last.chosen = corpus.documents[remaining.front()].gold_position;
  last.score = 0.0;
  last.fitted_topics = 0;
  ordering.positions.push_back(last.chosen);
  ordering.trace.push_back(std::move(last));
  return ordering;
}

Ordering seq_by_entropy(const Corpus& corpus, ExtremeDirection direction,
                        const LdaConfig& config) {
  return entropy_sequence(corpus, DivergenceKind::entropy, direction, config);
}

Ordering seq_by_kld(const Corpus& corpus, ExtremeDirection direction,
                    const LdaConfig& config) {
  return entropy_sequence(corpus, DivergenceKind::kld_uniform, direction, config);
}

}  // namespace ordo
