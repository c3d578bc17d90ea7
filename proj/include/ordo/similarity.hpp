#pragma once

#include <atomic>
#include <cstdint>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordo/corpus.hpp"

namespace ordo {

enum class Measure { cosine, jaccard, relative_probability };

Measure measure_from_string(std::string_view name);
std::string_view to_string(Measure measure);

// dot(a,b) / (|a||b|) over term-frequency vectors; throws on a zero vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
// |A ∩ B| / |A ∪ B| over term sets.
double jaccard_similarity(const std::set<std::string>& a, const std::set<std::string>& b);
// 1 − Σ|f_i(a) − f_i(b)| over normalized term frequencies; range [−1, 1].
double relative_probability_similarity(std::span<const double> a, std::span<const double> b);

struct SimilarityMatrix {
  Measure measure = Measure::cosine;
  std::vector<std::string> doc_ids;
  std::vector<double> values;  // n x n row-major

  std::size_t size() const { return doc_ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

SimilarityMatrix similarity_matrix(const DocTermMatrix& dtm, Measure measure,
                                   int workers = 1);

void write_similarity_csv(const SimilarityMatrix& matrix, std::ostream& out);

// Number of pairwise evaluations performed by similarity_matrix since
// process start; lets tests pin the n(n−1)/2 construction cost.
std::atomic<std::uint64_t>& pair_evaluation_count();

}  // namespace ordo
