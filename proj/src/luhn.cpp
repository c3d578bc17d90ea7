#include "ordo/luhn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "ordo/entropy_seq.hpp"
#include "ordo/error.hpp"
#include "ordo/parallel.hpp"

namespace ordo {

namespace {

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> abbrevs = {
      "dr", "mr",  "mrs", "ms",  "prof", "st", "vs",  "etc", "eg",  "ie",
      "fig", "figs", "al", "inc", "jr",  "sr", "no",  "vol", "pp",  "ed",
      "eds", "approx",
  };
  return abbrevs;
}

bool is_sentence_opener(char c) {
  return (std::isupper(static_cast<unsigned char>(c)) != 0) ||
         (std::isdigit(static_cast<unsigned char>(c)) != 0) || c == '"' ||
         c == '\'' || c == '(';
}

// word immediately before position `pos`, lowercased, dots stripped
std::string preceding_word(const std::string& text, std::size_t pos) {
  std::size_t begin = pos;
  while (begin > 0) {
    const unsigned char c = static_cast<unsigned char>(text[begin - 1]);
    if (std::isspace(c)) break;
    --begin;
  }
  std::string word;
  for (std::size_t i = begin; i < pos; ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '.') continue;
    word += static_cast<char>(std::tolower(c));
  }
  return word;
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& raw_text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  const std::size_t len = raw_text.size();
  auto emit = [&](std::size_t end) {
    std::string sentence = trim(raw_text.substr(start, end - start));
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    start = end;
  };
  for (std::size_t i = 0; i < len; ++i) {
    const char c = raw_text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // swallow a run of terminators and closing quotes/parens
    std::size_t end = i + 1;
    while (end < len && (raw_text[end] == '.' || raw_text[end] == '!' ||
                         raw_text[end] == '?' || raw_text[end] == '"' ||
                         raw_text[end] == '\'' || raw_text[end] == ')')) {
      ++end;
    }
    if (end >= len) {
      emit(end);
      i = end - 1;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(raw_text[end]))) {
      i = end - 1;
      continue;
    }
    if (c == '.') {
      const std::string word = preceding_word(raw_text, i);
      if (word.size() == 1 || abbreviations().count(word) != 0) {
        i = end - 1;
        continue;
      }
    }
    std::size_t next = end;
    while (next < len && std::isspace(static_cast<unsigned char>(raw_text[next]))) ++next;
    if (next < len && !is_sentence_opener(raw_text[next])) {
      i = end - 1;
      continue;
    }
    emit(end);
    i = end - 1;
  }
  if (start < len) emit(len);
  if (sentences.empty()) throw Error("no sentences found");
  return sentences;
}

namespace {

struct ScoredSentence {
  std::size_t index = 0;
  double score = 0.0;
};

double cluster_score(const std::vector<bool>& significant, int max_gap) {
  double best = 0.0;
  const std::size_t n = significant.size();
  std::size_t i = 0;
  while (i < n) {
    if (!significant[i]) {
      ++i;
      continue;
    }
    // cluster starts at a significant word
    std::size_t cluster_begin = i;
    std::size_t cluster_end = i;  // inclusive, last significant
    std::size_t count = 1;
    std::size_t j = i + 1;
    std::size_t gap = 0;
    while (j < n) {
      if (significant[j]) {
        gap = 0;
        cluster_end = j;
        ++count;
      } else if (++gap > static_cast<std::size_t>(max_gap)) {
        break;
      }
      ++j;
    }
    const double span = static_cast<double>(cluster_end - cluster_begin + 1);
    const double score = static_cast<double>(count) * static_cast<double>(count) / span;
    if (score > best) best = score;
    i = cluster_end + 1;
  }
  return best;
}

}  // namespace

Summary luhn_summarize(const Document& doc, double ratio,
                       const PreprocessConfig& preprocess, const LuhnConfig& config) {
  if (ratio <= 0.0 || ratio > 1.0) throw Error("ratio out of range (0,1]");
  const std::vector<std::string> sentences =
      doc.sentences.empty() ? split_sentences(doc.raw_text) : doc.sentences;
  const std::size_t n_sentences = sentences.size();

  const std::vector<std::string> terms =
      doc.terms.empty() ? extract_terms(doc.raw_text, preprocess) : doc.terms;
  std::unordered_map<std::string, std::size_t> frequency;
  for (const auto& term : terms) ++frequency[term];

  const double threshold =
      n_sentences <= static_cast<std::size_t>(config.small_doc_sentences)
          ? static_cast<double>(config.min_frequency)
          : std::max(static_cast<double>(config.min_frequency),
                     config.large_doc_fraction * static_cast<double>(terms.size()));
  std::unordered_set<std::string> significant_terms;
  for (const auto& [term, freq] : frequency) {
    if (static_cast<double>(freq) >= threshold) significant_terms.insert(term);
  }

  std::vector<ScoredSentence> scored(n_sentences);
  for (std::size_t s = 0; s < n_sentences; ++s) {
    const std::vector<std::string> words = tokenize(sentences[s]);
    std::vector<bool> significant(words.size(), false);
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (preprocess.stop_words.count(words[w]) != 0) continue;
      const std::string lemma =
          preprocess.lemmatizer ? preprocess.lemmatizer->lemma(words[w]) : words[w];
      if (preprocess.stop_words.count(lemma) != 0) continue;
      significant[w] = significant_terms.count(lemma) != 0;
    }
    scored[s].index = s;
    scored[s].score = cluster_score(significant, config.max_gap);
  }

  std::size_t k = static_cast<std::size_t>(std::llround(
      ratio * static_cast<double>(n_sentences)));
  k = std::max<std::size_t>(1, std::min(k, n_sentences));

  std::vector<ScoredSentence> order = scored;
  std::sort(order.begin(), order.end(), [](const ScoredSentence& a, const ScoredSentence& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  });
  std::vector<std::size_t> picked;
  picked.reserve(k);
  for (std::size_t i = 0; i < k; ++i) picked.push_back(order[i].index);
  std::sort(picked.begin(), picked.end());

  Summary summary;
  summary.doc_id = doc.id;
  summary.ratio = ratio;
  for (std::size_t index : picked) {
    summary.sentences.push_back(sentences[index]);
    summary.sentence_indices.push_back(index);
  }
  return summary;
}

Corpus summarize_corpus(const Corpus& corpus, double ratio,
                        const PreprocessConfig& preprocess, const LuhnConfig& config,
                        int workers) {
  Corpus out;
  out.name = corpus.name;
  out.genre = corpus.genre;
  out.documents.resize(corpus.documents.size());
  parallel_for(corpus.documents.size(), workers, [&](std::size_t i) {
    const Document& source = corpus.documents[i];
    const Summary summary = luhn_summarize(source, ratio, preprocess, config);
    Document doc;
    doc.id = source.id;
    doc.gold_position = source.gold_position;
    doc.sentences = summary.sentences;
    for (std::size_t s = 0; s < summary.sentences.size(); ++s) {
      if (s != 0) doc.raw_text += ' ';
      doc.raw_text += summary.sentences[s];
    }
    out.documents[i] = std::move(doc);
  });
  preprocess_corpus(out, preprocess, workers);
  return out;
}

std::vector<SweepRow> entropy_summary_sweep(const Corpus& corpus,
                                            const std::vector<double>& ratios,
                                            const LdaConfig& lda_config,
                                            const PreprocessConfig& preprocess,
                                            const LuhnConfig& config) {
  Corpus full = corpus;
  for (auto& doc : full.documents) {
    if (doc.terms.empty()) preprocess_document(doc, preprocess);
  }
  const DocTermMatrix dtm_full = build_doc_term_matrix(full);
  const int p = lda_config.num_topics > 0
                    ? std::min<int>(lda_config.num_topics, static_cast<int>(full.size()))
                    : choose_num_topics(static_cast<int>(full.size()),
                                        lda_config.topics_ratio);
  const auto [model_full, topics_full] =
      fit_lda(dtm_full, p, lda_config.seed, lda_config.iterations, lda_config.alpha,
              lda_config.beta, lda_config.loglik_interval);
  std::vector<double> entropy_full(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    entropy_full[i] = entropy(topics_full.row(i));
  }

  std::vector<SweepRow> rows;
  for (double ratio : ratios) {
    if (ratio <= 0.0 || ratio > 1.0) throw Error("ratio out of range (0,1]");
    const Corpus summarized = summarize_corpus(full, ratio, preprocess, config);
    const DocTermMatrix dtm_summary = build_doc_term_matrix(summarized);
    const auto [model_summary, topics_summary] =
        fit_lda(dtm_summary, p, lda_config.seed, lda_config.iterations,
                lda_config.alpha, lda_config.beta, lda_config.loglik_interval);
    for (std::size_t i = 0; i < full.size(); ++i) {
      SweepRow row;
      row.corpus = full.name;
      row.doc_id = full.documents[i].id;
      row.ratio = ratio;
      row.entropy_full = entropy_full[i];
      row.entropy_summary = entropy(topics_summary.row(i));
      row.abs_diff = std::fabs(row.entropy_full - row.entropy_summary);
      row.rel_diff = row.entropy_full > 0.0 ? row.abs_diff / row.entropy_full : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace ordo
