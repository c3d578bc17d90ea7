#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ordo/corpus.hpp"
#include "ordo/error.hpp"
#include "ordo/similarity.hpp"

using ordo::Measure;

namespace {

ordo::Corpus three_doc_corpus() {
  ordo::Corpus corpus;
  corpus.name = "tiny";
  const std::vector<std::vector<std::string>> term_lists = {
      {"soil", "seed", "soil", "water"},
      {"soil", "seed", "seed"},
      {"pest", "leaf", "leaf", "leaf"}};
  for (std::size_t i = 0; i < term_lists.size(); ++i) {
    ordo::Document doc;
    doc.id = "d" + std::to_string(i + 1);
    doc.gold_position = static_cast<int>(i + 1);
    doc.terms = term_lists[i];
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace

TEST_SUITE("similarity") {

TEST_CASE("cosine hand values") {
  const std::vector<double> a = {1, 0};
  const std::vector<double> b = {1, 1};
  CHECK(ordo::cosine_similarity(a, b) ==
        doctest::Approx(0.7071067811865475).epsilon(1e-12));
  CHECK(ordo::cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> zero = {0, 0};
  CHECK_THROWS_WITH_AS(ordo::cosine_similarity(a, zero),
                       doctest::Contains("undefined cosine"), ordo::Error);
}

TEST_CASE("cosine is scale invariant") {
  const std::vector<double> a = {3, 1, 2};
  const std::vector<double> b = {1, 4, 2};
  std::vector<double> a2 = a;
  std::vector<double> b3 = b;
  for (auto& x : a2) x *= 2.0;
  for (auto& x : b3) x *= 3.0;
  CHECK(ordo::cosine_similarity(a2, b3) ==
        doctest::Approx(ordo::cosine_similarity(a, b)).epsilon(1e-12));
}

TEST_CASE("jaccard hand values") {
  const std::set<std::string> abc = {"a", "b", "c"};
  const std::set<std::string> bcd = {"b", "c", "d"};
  CHECK(ordo::jaccard_similarity(abc, bcd) == 0.5);
  CHECK(ordo::jaccard_similarity(abc, abc) == 1.0);
  CHECK(ordo::jaccard_similarity(abc, {"x", "y"}) == 0.0);
}

TEST_CASE("relative probability hand values") {
  const std::vector<double> a = {2, 0};
  const std::vector<double> same = {4, 0};
  CHECK(ordo::relative_probability_similarity(a, same) == 1.0);

  const std::vector<double> disjoint_a = {1, 1, 0, 0};
  const std::vector<double> disjoint_b = {0, 0, 1, 1};
  CHECK(ordo::relative_probability_similarity(disjoint_a, disjoint_b) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  const std::vector<double> point = {1, 0};
  const std::vector<double> even = {1, 1};
  // 1 - (|1 - 0.5| + |0 - 0.5|) = 0
  CHECK(ordo::relative_probability_similarity(point, even) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("similarity matrix structure and pair-count cost") {
  const ordo::Corpus corpus = three_doc_corpus();
  const ordo::DocTermMatrix dtm = ordo::build_doc_term_matrix(corpus);
  const auto before = ordo::pair_evaluation_count().load();
  const ordo::SimilarityMatrix matrix =
      ordo::similarity_matrix(dtm, Measure::cosine, 2);
  const auto after = ordo::pair_evaluation_count().load();
  CHECK(after - before == 3);  // n(n-1)/2 with n=3

  REQUIRE(matrix.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(matrix.at(i, i) == 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      // mirrored assignment, so equality is exact
      CHECK(matrix.at(i, j) == matrix.at(j, i));
    }
  }
}

TEST_CASE("matrix jaccard equals set-based jaccard") {
  const ordo::Corpus corpus = three_doc_corpus();
  const ordo::DocTermMatrix dtm = ordo::build_doc_term_matrix(corpus);
  const ordo::SimilarityMatrix matrix =
      ordo::similarity_matrix(dtm, Measure::jaccard, 1);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const std::set<std::string> a(corpus.documents[i].terms.begin(),
                                    corpus.documents[i].terms.end());
      const std::set<std::string> b(corpus.documents[j].terms.begin(),
                                    corpus.documents[j].terms.end());
      CHECK(matrix.at(i, j) == doctest::Approx(ordo::jaccard_similarity(a, b))
                                   .epsilon(1e-12));
    }
  }
  // d1 {soil,seed,water} vs d2 {soil,seed}: 2 shared of 3
  CHECK(matrix.at(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // d3 shares nothing
  CHECK(matrix.at(0, 2) == 0.0);
}

TEST_CASE("parallel matrix is bitwise equal to serial") {
  ordo::Corpus corpus = testsupport::make_drift_corpus(10, 5);
  ordo::preprocess_corpus(corpus, ordo::PreprocessConfig::defaults(), 2);
  const ordo::DocTermMatrix dtm = ordo::build_doc_term_matrix(corpus);
  for (Measure measure :
       {Measure::cosine, Measure::jaccard, Measure::relative_probability}) {
    const auto serial = ordo::similarity_matrix(dtm, measure, 1);
    const auto parallel = ordo::similarity_matrix(dtm, measure, 4);
    CHECK(serial.values == parallel.values);
  }
}

TEST_CASE("measure conversions") {
  CHECK(ordo::measure_from_string("cosine") == Measure::cosine);
  CHECK(ordo::measure_from_string("relative_probability") ==
        Measure::relative_probability);
  CHECK(ordo::to_string(Measure::jaccard) == "jaccard");
  CHECK_THROWS_WITH_AS(ordo::measure_from_string("euclid"),
                       doctest::Contains("unknown similarity measure"),
                       ordo::Error);
}

TEST_CASE("error context names the documents involved") {
  ordo::DocTermMatrix dtm;
  dtm.vocabulary = {"alpha", "beta"};
  dtm.row_ids = {"d1", "d2", "d3"};
  dtm.counts = {2, 1, 0, 0, 1, 3};  // middle row is all zeros
  CHECK_THROWS_WITH_AS(ordo::similarity_matrix(dtm, Measure::cosine, 1),
                       doctest::Contains("documents"), ordo::Error);
  CHECK_THROWS_WITH_AS(ordo::similarity_matrix(dtm, Measure::cosine, 1),
                       doctest::Contains("d2"), ordo::Error);
}

}
