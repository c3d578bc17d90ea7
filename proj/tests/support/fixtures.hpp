#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ordo/corpus.hpp"
#include "ordo/rng.hpp"
#include "ordo/similarity.hpp"

namespace testsupport {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Pronounceable consonant-vowel trigrams, unique, chosen so the
// preprocessing pipeline passes them through unchanged.
std::vector<std::string> synthetic_vocabulary(std::size_t count);

// Corpus with planted topical drift: document i draws its tokens from a
// vocabulary window starting at i*step, so neighbours share
// (window-step)/window of their word pool and documents two apart share
// (window-2*step)/window.
ordo::Corpus make_drift_corpus(int n_docs, std::uint64_t seed, int window = 50,
                               int step = 20, int tokens_per_doc = 150,
                               int words_per_sentence = 8);

// Writes one text file per document plus a manifest.
void write_corpus_dir(const ordo::Corpus& corpus, const std::filesystem::path& dir);

// Two groups of documents over disjoint vocabularies; terms are populated
// directly (no preprocessing needed).
ordo::Corpus make_two_group_corpus(int docs_per_group, int tokens_per_doc,
                                   std::uint64_t seed);

// The first n_broad documents mix both vocabulary groups evenly; the rest
// stay inside a single group.
ordo::Corpus make_breadth_corpus(int n_broad, int n_narrow_per_group,
                                 int tokens_per_doc, std::uint64_t seed);

// Random symmetric matrix with unit diagonal.
ordo::SimilarityMatrix random_similarity(std::size_t n, ordo::Rng& rng);

}  // namespace testsupport
