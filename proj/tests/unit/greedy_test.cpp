#include <numeric>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ordo/error.hpp"
#include "ordo/greedy_seq.hpp"
#include "ordo/rng.hpp"

using ordo::GreedyScheme;
using ordo::Ordering;
using ordo::SimilarityMatrix;

namespace {

// Independent step-by-step reference: recompute every candidate score from
// the definition at each step and take the extreme, ties to lowest gold.
std::vector<int> reference_sequence(const SimilarityMatrix& sim,
                                    const std::vector<int>& gold,
                                    GreedyScheme scheme) {
  const std::size_t n = sim.size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> chosen;
  std::vector<int> out;
  const bool maximize = scheme != GreedyScheme::least_similar_all;
  while (chosen.size() < n) {
    double best_score = 0.0;
    std::size_t best_row = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      double score = 0.0;
      if (chosen.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) score += sim.at(i, j);
        }
        score /= static_cast<double>(n - 1);
      } else if (scheme == GreedyScheme::most_similar_recent) {
        score = sim.at(i, chosen.back());
      } else {
        for (std::size_t j : chosen) score += sim.at(i, j);
        score /= static_cast<double>(chosen.size());
      }
      const bool better =
          best_row == n || (maximize ? score > best_score : score < best_score) ||
          (score == best_score && gold[i] < gold[best_row]);
      if (better) {
        best_score = score;
        best_row = i;
      }
    }
    used[best_row] = true;
    chosen.push_back(best_row);
    out.push_back(gold[best_row]);
  }
  return out;
}

SimilarityMatrix hand_matrix() {
  SimilarityMatrix sim;
  sim.doc_ids = {"d1", "d2", "d3"};
  sim.values = {1.0, 0.8, 0.3,
                0.8, 1.0, 0.5,
                0.3, 0.5, 1.0};
  return sim;
}

}  // namespace

TEST_SUITE("greedy") {

TEST_CASE("hand example: three documents") {
  const SimilarityMatrix sim = hand_matrix();
  const std::vector<int> gold = {1, 2, 3};

  // d2 has the highest mean similarity (0.65), then d1 (0.8 to d2)
  const Ordering all = ordo::greedy_sequence(sim, gold, GreedyScheme::most_similar_all);
  CHECK(all.positions == std::vector<int>{2, 1, 3});
  CHECK(all.trace[0].score == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(all.trace[1].score == doctest::Approx(0.8).epsilon(1e-12));

  const Ordering recent =
      ordo::greedy_sequence(sim, gold, GreedyScheme::most_similar_recent);
  CHECK(recent.positions == std::vector<int>{2, 1, 3});

  // d3 has the lowest mean similarity (0.4), then d1 (0.3 to d3)
  const Ordering least =
      ordo::greedy_sequence(sim, gold, GreedyScheme::least_similar_all);
  CHECK(least.positions == std::vector<int>{3, 1, 2});
}

TEST_CASE("matches the step-by-step reference on random matrices") {
  std::uint64_t seed = 1000;
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      ordo::Rng rng(seed++);
      const SimilarityMatrix sim = testsupport::random_similarity(n, rng);
      std::vector<int> gold(n);
      std::iota(gold.begin(), gold.end(), 1);
      for (GreedyScheme scheme :
           {GreedyScheme::most_similar_all, GreedyScheme::most_similar_recent,
            GreedyScheme::least_similar_all}) {
        CAPTURE(n);
        CAPTURE(rep);
        CAPTURE(ordo::to_string(scheme));
        const Ordering ordering = ordo::greedy_sequence(sim, gold, scheme);
        CHECK(ordering.positions == reference_sequence(sim, gold, scheme));
      }
    }
  }
}

TEST_CASE("output is a permutation with a full trace") {
  ordo::Rng rng(42);
  const SimilarityMatrix sim = testsupport::random_similarity(9, rng);
  std::vector<int> gold(9);
  std::iota(gold.begin(), gold.end(), 1);
  const Ordering ordering =
      ordo::greedy_sequence(sim, gold, GreedyScheme::most_similar_all);
  std::vector<int> sorted = ordering.positions;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == gold);
  REQUIRE(ordering.trace.size() == 9);
  CHECK(ordering.trace[0].candidate_scores.size() == 9);
  CHECK(ordering.trace[8].candidate_scores.size() == 1);
  CHECK(ordering.method == "most_similar_all");
}

TEST_CASE("deterministic and tie-break to lowest gold index") {
  SimilarityMatrix uniform;
  uniform.doc_ids = {"a", "b", "c", "d"};
  uniform.values.assign(16, 0.5);
  for (std::size_t i = 0; i < 4; ++i) uniform.values[i * 4 + i] = 1.0;
  const std::vector<int> gold = {1, 2, 3, 4};
  for (GreedyScheme scheme :
       {GreedyScheme::most_similar_all, GreedyScheme::most_similar_recent,
        GreedyScheme::least_similar_all}) {
    const Ordering ordering = ordo::greedy_sequence(uniform, gold, scheme);
    CHECK(ordering.positions == gold);
  }

  ordo::Rng rng(5);
  const SimilarityMatrix sim = testsupport::random_similarity(6, rng);
  const std::vector<int> gold6 = {1, 2, 3, 4, 5, 6};
  const Ordering first =
      ordo::greedy_sequence(sim, gold6, GreedyScheme::least_similar_all);
  const Ordering second =
      ordo::greedy_sequence(sim, gold6, GreedyScheme::least_similar_all);
  CHECK(first.positions == second.positions);
}

TEST_CASE("row order does not affect the gold sequence") {
  ordo::Rng rng(77);
  const std::size_t n = 6;
  const SimilarityMatrix sim = testsupport::random_similarity(n, rng);
  std::vector<int> gold(n);
  std::iota(gold.begin(), gold.end(), 1);

  // rotate the rows while keeping each row's gold label attached
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 2) % n;
  SimilarityMatrix shuffled;
  shuffled.doc_ids.resize(n);
  shuffled.values.assign(n * n, 0.0);
  std::vector<int> gold_shuffled(n);
  for (std::size_t i = 0; i < n; ++i) {
    shuffled.doc_ids[i] = sim.doc_ids[perm[i]];
    gold_shuffled[i] = gold[perm[i]];
    for (std::size_t j = 0; j < n; ++j) {
      shuffled.values[i * n + j] = sim.at(perm[i], perm[j]);
    }
  }
  for (GreedyScheme scheme :
       {GreedyScheme::most_similar_all, GreedyScheme::most_similar_recent,
        GreedyScheme::least_similar_all}) {
    const Ordering base = ordo::greedy_sequence(sim, gold, scheme);
    const Ordering moved = ordo::greedy_sequence(shuffled, gold_shuffled, scheme);
    CHECK(base.positions == moved.positions);
  }
}

TEST_CASE("errors") {
  SimilarityMatrix one;
  one.doc_ids = {"solo"};
  one.values = {1.0};
  const std::vector<int> gold1 = {1};
  CHECK_THROWS_WITH_AS(
      ordo::greedy_sequence(one, gold1, GreedyScheme::most_similar_all),
      doctest::Contains("corpus too small"), ordo::Error);

  ordo::Rng rng(1);
  const SimilarityMatrix sim = testsupport::random_similarity(3, rng);
  const std::vector<int> wrong = {1, 2};
  CHECK_THROWS_WITH_AS(
      ordo::greedy_sequence(sim, wrong, GreedyScheme::most_similar_all),
      doctest::Contains("gold positions do not match"), ordo::Error);
}

TEST_CASE("scheme conversions") {
  CHECK(ordo::greedy_scheme_from_string("most_similar_recent") ==
        GreedyScheme::most_similar_recent);
  CHECK(ordo::to_string(GreedyScheme::least_similar_all) == "least_similar_all");
  CHECK_THROWS_WITH_AS(ordo::greedy_scheme_from_string("nearest"),
                       doctest::Contains("unknown greedy scheme"), ordo::Error);
}

}
