#pragma once

#include <span>
#include <string_view>

#include "ordo/ordering.hpp"
#include "ordo/similarity.hpp"

namespace ordo {

enum class GreedyScheme { most_similar_all, most_similar_recent, least_similar_all };

GreedyScheme greedy_scheme_from_string(std::string_view name);
std::string_view to_string(GreedyScheme scheme);

// Greedy selection over a similarity matrix. gold[i] is the gold index of
// row i; ties break toward the lowest gold index.
Ordering greedy_sequence(const SimilarityMatrix& sim, std::span<const int> gold,
                         GreedyScheme scheme);

Ordering seq_most_similar_all(const SimilarityMatrix& sim, std::span<const int> gold);
Ordering seq_most_similar_recent(const SimilarityMatrix& sim, std::span<const int> gold);
Ordering seq_least_similar_all(const SimilarityMatrix& sim, std::span<const int> gold);

}  // namespace ordo
