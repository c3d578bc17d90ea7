#include "fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cctype>
#include <fstream>

#include "json.hpp"
#include "ordo/error.hpp"

namespace testsupport {

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const int id = counter.fetch_add(1);
  path_ = std::filesystem::temp_directory_path() /
          ("ordo_test_" + std::to_string(::getpid()) + "_" + std::to_string(id));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<std::string> synthetic_vocabulary(std::size_t count) {
  static const char consonants[] = {'b', 'd', 'f', 'k', 'm', 'p', 'q', 'v', 'x', 'z'};
  static const char vowels[] = {'a', 'o', 'u', 'i'};
  std::vector<std::string> syllables;
  for (char c : consonants) {
    for (char v : vowels) {
      syllables.push_back(std::string() + c + v);
    }
  }
  const std::size_t s = syllables.size();
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    words.push_back(syllables[i % s] + syllables[(i / s) % s] +
                    syllables[(i / (s * s)) % s]);
  }
  return words;
}

ordo::Corpus make_drift_corpus(int n_docs, std::uint64_t seed, int window, int step,
                               int tokens_per_doc, int words_per_sentence) {
  const std::size_t vocab_size =
      static_cast<std::size_t>((n_docs - 1) * step + window);
  const std::vector<std::string> vocab = synthetic_vocabulary(vocab_size);

  ordo::Corpus corpus;
  corpus.name = "drift";
  corpus.genre = ordo::Genre::other;
  for (int d = 0; d < n_docs; ++d) {
    ordo::Rng rng(ordo::derive_seed(seed, static_cast<std::uint64_t>(d)));
    std::vector<std::string> tokens;
    tokens.reserve(tokens_per_doc);
    for (int t = 0; t < tokens_per_doc; ++t) {
      const std::size_t offset =
          static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(window)));
      tokens.push_back(vocab[static_cast<std::size_t>(d * step) + offset]);
    }
    std::string text;
    for (int t = 0; t < tokens_per_doc; t += words_per_sentence) {
      std::string sentence;
      for (int w = t; w < t + words_per_sentence && w < tokens_per_doc; ++w) {
        if (!sentence.empty()) sentence += ' ';
        sentence += tokens[w];
      }
      sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
      if (!text.empty()) text += ' ';
      text += sentence + '.';
    }
    ordo::Document doc;
    doc.id = (d + 1 < 10 ? "d0" : "d") + std::to_string(d + 1);
    doc.gold_position = d + 1;
    doc.raw_text = std::move(text);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

void write_corpus_dir(const ordo::Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["name"] = corpus.name;
  manifest["genre"] = std::string(ordo::to_string(corpus.genre));
  manifest["documents"] = nlohmann::json::array();
  for (const auto& doc : corpus.documents) {
    const std::string filename = doc.id + ".txt";
    std::ofstream out(dir / filename, std::ios::binary);
    out << doc.raw_text << '\n';
    if (!out) throw ordo::Error("cannot write fixture file: " + filename);
    manifest["documents"].push_back({{"id", doc.id},
                                     {"path", filename},
                                     {"gold_position", doc.gold_position}});
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) throw ordo::Error("cannot write fixture manifest");
}

ordo::Corpus make_two_group_corpus(int docs_per_group, int tokens_per_doc,
                                   std::uint64_t seed) {
  const std::vector<std::string> vocab = synthetic_vocabulary(40);
  ordo::Corpus corpus;
  corpus.name = "twogroup";
  int position = 1;
  for (int group = 0; group < 2; ++group) {
    for (int d = 0; d < docs_per_group; ++d) {
      ordo::Rng rng(ordo::derive_seed(seed, static_cast<std::uint64_t>(position)));
      ordo::Document doc;
      doc.id = (group == 0 ? "a" : "b") + std::to_string(d + 1);
      doc.gold_position = position++;
      for (int t = 0; t < tokens_per_doc; ++t) {
        const std::size_t offset =
            static_cast<std::size_t>(rng.next_below(20));
        doc.terms.push_back(vocab[static_cast<std::size_t>(group * 20) + offset]);
      }
      corpus.documents.push_back(std::move(doc));
    }
  }
  return corpus;
}

ordo::Corpus make_breadth_corpus(int n_broad, int n_narrow_per_group,
                                 int tokens_per_doc, std::uint64_t seed) {
  const std::vector<std::string> vocab = synthetic_vocabulary(40);
  ordo::Corpus corpus;
  corpus.name = "breadth";
  int position = 1;
  for (int d = 0; d < n_broad; ++d) {
    ordo::Rng rng(ordo::derive_seed(seed, static_cast<std::uint64_t>(position)));
    ordo::Document doc;
    doc.id = "broad" + std::to_string(d + 1);
    doc.gold_position = position++;
    for (int t = 0; t < tokens_per_doc; ++t) {
      doc.terms.push_back(vocab[static_cast<std::size_t>(rng.next_below(40))]);
    }
    corpus.documents.push_back(std::move(doc));
  }
  for (int group = 0; group < 2; ++group) {
    for (int d = 0; d < n_narrow_per_group; ++d) {
      ordo::Rng rng(ordo::derive_seed(seed, static_cast<std::uint64_t>(position)));
      ordo::Document doc;
      doc.id = (group == 0 ? "na" : "nb") + std::to_string(d + 1);
      doc.gold_position = position++;
      for (int t = 0; t < tokens_per_doc; ++t) {
        const std::size_t offset = static_cast<std::size_t>(rng.next_below(20));
        doc.terms.push_back(vocab[static_cast<std::size_t>(group * 20) + offset]);
      }
      corpus.documents.push_back(std::move(doc));
    }
  }
  return corpus;
}

ordo::SimilarityMatrix random_similarity(std::size_t n, ordo::Rng& rng) {
  ordo::SimilarityMatrix matrix;
  matrix.measure = ordo::Measure::cosine;
  for (std::size_t i = 0; i < n; ++i) {
    matrix.doc_ids.push_back("r" + std::to_string(i + 1));
  }
  matrix.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    matrix.values[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.next_double01();
      matrix.values[i * n + j] = v;
      matrix.values[j * n + i] = v;
    }
  }
  return matrix;
}

}  // namespace testsupport
