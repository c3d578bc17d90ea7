#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordo/text.hpp"

namespace ordo {

enum class Genre {
  biography,
  novel,
  wikipedia,
  course,
  dissertation,
  journal,
  textbook,
  other,
};

Genre genre_from_string(std::string_view name);
std::string_view to_string(Genre genre);

struct Document {
  std::string id;
  int gold_position = 0;  // 1-based rank in the intended order
  std::string raw_text;
  std::vector<std::string> sentences;
  std::vector<std::string> terms;
};

struct Corpus {
  std::string name;
  Genre genre = Genre::other;
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  std::vector<int> gold_positions() const;
  std::vector<std::string> doc_ids() const;
};

struct DocTermMatrix {
  std::vector<std::string> vocabulary;  // sorted, unique
  std::vector<std::string> row_ids;
  std::vector<std::uint32_t> counts;  // rows() x cols(), row-major

  std::size_t rows() const { return row_ids.size(); }
  std::size_t cols() const { return vocabulary.size(); }
  std::uint32_t at(std::size_t i, std::size_t j) const { return counts[i * cols() + j]; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return std::span<const std::uint32_t>(counts).subspan(i * cols(), cols());
  }
  std::vector<double> row_as_doubles(std::size_t i) const;
};

struct LoadOptions {
  std::optional<std::filesystem::path> manifest;
};

// Reads a directory of UTF-8 text files (or the documents a manifest lists)
// into a corpus with gold positions 1..n. Warns to stderr when n < 6.
Corpus load_corpus(const std::filesystem::path& dir, const LoadOptions& options = {});

// Splits one text into heading-delimited documents; the preamble before the
// first heading is discarded.
std::vector<Document> split_chapters(const std::string& raw_text,
                                     const std::string& heading_pattern);

// Populates doc.terms.
void preprocess_document(Document& doc, const PreprocessConfig& config);
void preprocess_corpus(Corpus& corpus, const PreprocessConfig& config, int workers = 1);

DocTermMatrix build_doc_term_matrix(const Corpus& corpus);

}  // namespace ordo
