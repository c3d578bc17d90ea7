#include "ordo/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "ordo/csv.hpp"
#include "ordo/error.hpp"
#include "ordo/kernels.hpp"
#include "ordo/parallel.hpp"

namespace ordo {

Measure measure_from_string(std::string_view name) {
  if (name == "cosine") return Measure::cosine;
  if (name == "jaccard") return Measure::jaccard;
  if (name == "relative_probability") return Measure::relative_probability;
  throw Error("unknown similarity measure: " + std::string(name));
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::cosine: return "cosine";
    case Measure::jaccard: return "jaccard";
    case Measure::relative_probability: return "relative_probability";
  }
  return "cosine";
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double aa = kernels::dot(a, a);
  const double bb = kernels::dot(b, b);
  if (aa == 0.0 || bb == 0.0) throw Error("undefined cosine: zero vector");
  return kernels::dot(a, b) / (std::sqrt(aa) * std::sqrt(bb));
}

double jaccard_similarity(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t both = 0;
  for (const auto& term : a) both += b.count(term);
  const std::size_t either = a.size() + b.size() - both;
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

namespace {

std::vector<double> normalized(std::span<const double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (total == 0.0) throw Error("cannot normalize zero vector");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= total;
  return out;
}

}  // namespace

double relative_probability_similarity(std::span<const double> a,
                                       std::span<const double> b) {
  const std::vector<double> pa = normalized(a);
  const std::vector<double> pb = normalized(b);
  return 1.0 - kernels::sum_abs_diff(pa, pb);
}

std::atomic<std::uint64_t>& pair_evaluation_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

SimilarityMatrix similarity_matrix(const DocTermMatrix& dtm, Measure measure,
                                   int workers) {
  const std::size_t n = dtm.rows();
  SimilarityMatrix matrix;
  matrix.measure = measure;
  matrix.doc_ids = dtm.row_ids;
  matrix.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) matrix.values[i * n + i] = 1.0;

  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = dtm.row_as_doubles(i);

  std::vector<std::vector<double>> probs;
  if (measure == Measure::relative_probability) {
    probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) probs[i] = normalized(rows[i]);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    double value = 0.0;
    try {
      switch (measure) {
        case Measure::cosine:
          value = cosine_similarity(rows[i], rows[j]);
          break;
        case Measure::jaccard: {
          const auto counts = kernels::binary_overlap(rows[i], rows[j]);
          value = counts.either == 0
                      ? 1.0
                      : static_cast<double>(counts.both) /
                            static_cast<double>(counts.either);
          break;
        }
        case Measure::relative_probability:
          value = 1.0 - kernels::sum_abs_diff(probs[i], probs[j]);
          break;
      }
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (documents " + matrix.doc_ids[i] +
                  ", " + matrix.doc_ids[j] + ")");
    }
    pair_evaluation_count().fetch_add(1);
    matrix.values[i * n + j] = value;
    matrix.values[j * n + i] = value;
  });
  return matrix;
}

void write_similarity_csv(const SimilarityMatrix& matrix, std::ostream& out) {
  csv::Writer writer(out);
  writer.field("");
  for (const auto& id : matrix.doc_ids) writer.field(id);
  writer.end_row();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    writer.field(matrix.doc_ids[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) writer.field(matrix.at(i, j));
    writer.end_row();
  }
}

}  // namespace ordo
