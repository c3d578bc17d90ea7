#include "ordo/greedy_seq.hpp"

#include <limits>

#include "ordo/error.hpp"

namespace ordo {

GreedyScheme greedy_scheme_from_string(std::string_view name) {
  if (name == "most_similar_all") return GreedyScheme::most_similar_all;
  if (name == "most_similar_recent") return GreedyScheme::most_similar_recent;
  if (name == "least_similar_all") return GreedyScheme::least_similar_all;
  throw Error("unknown greedy scheme: " + std::string(name));
}

std::string_view to_string(GreedyScheme scheme) {
  switch (scheme) {
    case GreedyScheme::most_similar_all: return "most_similar_all";
    case GreedyScheme::most_similar_recent: return "most_similar_recent";
    case GreedyScheme::least_similar_all: return "least_similar_all";
  }
  return "most_similar_all";
}

Ordering greedy_sequence(const SimilarityMatrix& sim, std::span<const int> gold,
                         GreedyScheme scheme) {
  const std::size_t n = sim.size();
  if (n < 2) throw Error("corpus too small: need at least 2 documents to order");
  if (gold.size() != n) throw Error("gold positions do not match matrix size");

  const bool maximize = scheme != GreedyScheme::least_similar_all;

  Ordering ordering;
  ordering.method = std::string(to_string(scheme));
  ordering.positions.reserve(n);
  ordering.trace.reserve(n);

  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> chosen_rows;
  chosen_rows.reserve(n);

  for (std::size_t step = 0; step < n; ++step) {
    TraceStep trace;
    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      double score;
      if (step == 0) {
        // mean off-diagonal similarity
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) total += sim.at(i, j);
        }
        score = total / static_cast<double>(n - 1);
      } else if (scheme == GreedyScheme::most_similar_recent) {
        score = sim.at(i, chosen_rows.back());
      } else {
        double total = 0.0;
        for (std::size_t j : chosen_rows) total += sim.at(i, j);
        score = total / static_cast<double>(chosen_rows.size());
      }
      trace.candidate_scores.emplace_back(gold[i], score);
      const bool better =
          best == n ||
          (maximize ? score > best_score : score < best_score) ||
          (score == best_score && gold[i] < gold[best]);
      if (better) {
        best = i;
        best_score = score;
      }
    }
    chosen[best] = true;
    chosen_rows.push_back(best);
    trace.chosen = gold[best];
    trace.score = best_score;
    ordering.positions.push_back(gold[best]);
    ordering.trace.push_back(std::move(trace));
  }
  return ordering;
}

Ordering seq_most_similar_all(const SimilarityMatrix& sim, std::span<const int> gold) {
  return greedy_sequence(sim, gold, GreedyScheme::most_similar_all);
}

Ordering seq_most_similar_recent(const SimilarityMatrix& sim, std::span<const int> gold) {
  return greedy_sequence(sim, gold, GreedyScheme::most_similar_recent);
}

Ordering seq_least_similar_all(const SimilarityMatrix& sim, std::span<const int> gold) {
  return greedy_sequence(sim, gold, GreedyScheme::least_similar_all);
}

}  // namespace ordo
