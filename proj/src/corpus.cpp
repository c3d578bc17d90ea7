#include "ordo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ordo/error.hpp"
#include "ordo/parallel.hpp"

namespace ordo {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_blank(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

}  // namespace

Genre genre_from_string(std::string_view name) {
  if (name == "biography") return Genre::biography;
  if (name == "novel") return Genre::novel;
  if (name == "wikipedia") return Genre::wikipedia;
  if (name == "course") return Genre::course;
  if (name == "dissertation") return Genre::dissertation;
  if (name == "journal") return Genre::journal;
  if (name == "textbook") return Genre::textbook;
  if (name == "other") return Genre::other;
  throw Error("unknown genre: " + std::string(name));
}

std::string_view to_string(Genre genre) {
  switch (genre) {
    case Genre::biography: return "biography";
    case Genre::novel: return "novel";
    case Genre::wikipedia: return "wikipedia";
    case Genre::course: return "course";
    case Genre::dissertation: return "dissertation";
    case Genre::journal: return "journal";
    case Genre::textbook: return "textbook";
    case Genre::other: return "other";
  }
  return "other";
}

std::vector<int> Corpus::gold_positions() const {
  std::vector<int> gold;
  gold.reserve(documents.size());
  for (const auto& doc : documents) gold.push_back(doc.gold_position);
  return gold;
}

std::vector<std::string> Corpus::doc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(documents.size());
  for (const auto& doc : documents) ids.push_back(doc.id);
  return ids;
}

std::vector<double> DocTermMatrix::row_as_doubles(std::size_t i) const {
  std::vector<double> out(cols());
  const auto r = row(i);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<double>(r[j]);
  return out;
}

namespace {

Corpus load_from_manifest(const std::filesystem::path& manifest_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid manifest " + manifest_path.string() + ": " + e.what());
  }
  Corpus corpus;
  corpus.name = j.value("name", manifest_path.parent_path().filename().string());
  corpus.genre = genre_from_string(j.value("genre", "other"));
  if (!j.contains("documents") || !j["documents"].is_array()) {
    throw Error("invalid manifest " + manifest_path.string() + ": missing documents array");
  }
  const auto base = manifest_path.parent_path();
  struct Entry {
    std::string id;
    std::filesystem::path path;
    int gold = 0;
  };
  std::vector<Entry> entries;
  std::set<int> seen_gold;
  for (const auto& item : j["documents"]) {
    Entry entry;
    entry.id = item.value("id", "");
    entry.path = base / item.value("path", "");
    entry.gold = item.value("gold_position", 0);
    if (entry.id.empty()) entry.id = entry.path.filename().string();
    if (!seen_gold.insert(entry.gold).second) {
      throw Error("duplicate gold positions in manifest: " + std::to_string(entry.gold));
    }
    entries.push_back(std::move(entry));
  }
  if (entries.size() < 2) throw Error("corpus too small: " + corpus.name);
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.gold < b.gold; });
  int position = 1;
  for (const auto& entry : entries) {
    Document doc;
    doc.id = entry.id;
    doc.gold_position = position++;
    doc.raw_text = read_file(entry.path);
    if (is_blank(doc.raw_text)) {
      throw Error("empty document file: " + entry.path.string());
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& dir, const LoadOptions& options) {
  std::filesystem::path manifest;
  if (options.manifest) {
    manifest = *options.manifest;
  } else if (std::filesystem::exists(dir / "manifest.json")) {
    manifest = dir / "manifest.json";
  }

  Corpus corpus;
  if (!manifest.empty()) {
    corpus = load_from_manifest(manifest);
  } else {
    if (!std::filesystem::is_directory(dir)) {
      throw Error("missing corpus directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto name = entry.path().filename().string();
      if (name.empty() || name[0] == '.') continue;
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
      return a.filename().string() < b.filename().string();
    });
    if (files.size() < 2) throw Error("corpus too small: " + dir.string());
    corpus.name = dir.filename().string();
    int position = 1;
    for (const auto& file : files) {
      Document doc;
      doc.id = file.filename().string();
      doc.gold_position = position++;
      doc.raw_text = read_file(file);
      if (is_blank(doc.raw_text)) {
        throw Error("empty document file: " + file.string());
      }
      corpus.documents.push_back(std::move(doc));
    }
  }
  if (corpus.documents.size() < 6) {
    std::cerr << "warning: corpus " << corpus.name << " has only "
              << corpus.documents.size() << " documents; orderings are noisy below 6\n";
  }
  return corpus;
}

std::vector<Document> split_chapters(const std::string& raw_text,
                                     const std::string& heading_pattern) {
  std::regex pattern;
  try {
    pattern = std::regex(heading_pattern);
  } catch (const std::regex_error& e) {
    throw Error(std::string("invalid heading pattern: ") + e.what());
  }
  struct Heading {
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;
  };
  std::vector<Heading> headings;
  for (auto it = std::sregex_iterator(raw_text.begin(), raw_text.end(), pattern);
       it != std::sregex_iterator(); ++it) {
    Heading h;
    h.label = trim(it->str());
    h.begin = static_cast<std::size_t>(it->position());
    h.end = h.begin + static_cast<std::size_t>(it->length());
    headings.push_back(std::move(h));
  }
  if (headings.empty()) throw Error("no chapter boundaries found");

  std::vector<Document> documents;
  for (std::size_t i = 0; i < headings.size(); ++i) {
    const std::size_t body_begin = headings[i].end;
    const std::size_t body_end =
        i + 1 < headings.size() ? headings[i + 1].begin : raw_text.size();
    Document doc;
    doc.id = headings[i].label.empty() ? "chapter " + std::to_string(i + 1)
                                       : headings[i].label;
    doc.gold_position = static_cast<int>(i + 1);
    doc.raw_text = trim(raw_text.substr(body_begin, body_end - body_begin));
    if (doc.raw_text.empty()) throw Error("empty document: " + doc.id);
    documents.push_back(std::move(doc));
  }
  return documents;
}

void preprocess_document(Document& doc, const PreprocessConfig& config) {
  doc.terms = extract_terms(doc.raw_text, config);
  if (doc.terms.empty()) {
    throw Error("document reduced to empty term list: " + doc.id);
  }
}

void preprocess_corpus(Corpus& corpus, const PreprocessConfig& config, int workers) {
  parallel_for(corpus.documents.size(), workers,
               [&](std::size_t i) { preprocess_document(corpus.documents[i], config); });
}

DocTermMatrix build_doc_term_matrix(const Corpus& corpus) {
  std::set<std::string> vocab_set;
  for (const auto& doc : corpus.documents) {
    if (doc.terms.empty()) {
      throw Error("document reduced to empty term list: " + doc.id);
    }
    vocab_set.insert(doc.terms.begin(), doc.terms.end());
  }
  DocTermMatrix dtm;
  dtm.vocabulary.assign(vocab_set.begin(), vocab_set.end());
  std::map<std::string_view, std::size_t> index;
  for (std::size_t j = 0; j < dtm.vocabulary.size(); ++j) {
    index.emplace(dtm.vocabulary[j], j);
  }
  dtm.row_ids.reserve(corpus.documents.size());
  dtm.counts.assign(corpus.documents.size() * dtm.vocabulary.size(), 0);
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    dtm.row_ids.push_back(corpus.documents[i].id);
    for (const auto& term : corpus.documents[i].terms) {
      ++dtm.counts[i * dtm.vocabulary.size() + index.at(term)];
    }
  }
  return dtm;
}

}  // namespace ordo
