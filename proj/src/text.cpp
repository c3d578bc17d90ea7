#include "ordo/text.hpp"

#include <array>
#include <cctype>
#include <unordered_map>

namespace ordo {

namespace {

inline bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

inline bool is_continuation_byte(unsigned char c) { return (c & 0xC0) == 0x80; }

std::size_t codepoint_length(const std::string& token) {
  std::size_t count = 0;
  for (unsigned char c : token) {
    if (!is_continuation_byte(c)) ++count;
  }
  return count;
}

bool is_pure_digits(const std::string& token) {
  for (unsigned char c : token) {
    if (!std::isdigit(c)) return false;
  }
  return !token.empty();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (!is_pure_digits(current) && codepoint_length(current) > 1) {
        tokens.push_back(current);
      }
      current.clear();
    }
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current += static_cast<char>(std::tolower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

namespace {

const std::unordered_map<std::string, std::string>& irregular_lemmas() {
  static const std::unordered_map<std::string, std::string> dict = {
      {"am", "be"},        {"is", "be"},        {"are", "be"},
      {"was", "be"},       {"were", "be"},      {"been", "be"},
      {"being", "be"},     {"has", "have"},     {"had", "have"},
      {"having", "have"},  {"does", "do"},      {"did", "do"},
      {"done", "do"},      {"doing", "do"},     {"goes", "go"},
      {"went", "go"},      {"gone", "go"},      {"going", "go"},
      {"ran", "run"},      {"said", "say"},     {"saw", "see"},
      {"seen", "see"},     {"seeing", "see"},   {"came", "come"},
      {"coming", "come"},  {"took", "take"},    {"taken", "take"},
      {"taking", "take"},  {"made", "make"},    {"making", "make"},
      {"wrote", "write"},  {"written", "write"}, {"writing", "write"},
      {"found", "find"},   {"thought", "think"}, {"bought", "buy"},
      {"brought", "bring"}, {"built", "build"}, {"felt", "feel"},
      {"held", "hold"},    {"kept", "keep"},    {"knew", "know"},
      {"known", "know"},   {"left", "leave"},   {"lost", "lose"},
      {"met", "meet"},     {"paid", "pay"},     {"sat", "sit"},
      {"sold", "sell"},    {"spoke", "speak"},  {"spoken", "speak"},
      {"stood", "stand"},  {"told", "tell"},    {"understood", "understand"},
      {"gave", "give"},    {"given", "give"},   {"giving", "give"},
      {"got", "get"},      {"gotten", "get"},   {"ate", "eat"},
      {"eaten", "eat"},    {"began", "begin"},  {"begun", "begin"},
      {"broke", "break"},  {"broken", "break"}, {"chose", "choose"},
      {"chosen", "choose"}, {"drew", "draw"},   {"drawn", "draw"},
      {"drove", "drive"},  {"driven", "drive"}, {"fell", "fall"},
      {"fallen", "fall"},  {"flew", "fly"},     {"flown", "fly"},
      {"grew", "grow"},    {"grown", "grow"},   {"heard", "hear"},
      {"rose", "rise"},    {"risen", "rise"},   {"sang", "sing"},
      {"sung", "sing"},    {"swam", "swim"},    {"threw", "throw"},
      {"thrown", "throw"}, {"wore", "wear"},    {"worn", "wear"},
      {"won", "win"},      {"used", "use"},     {"using", "use"},
      {"living", "live"},  {"moving", "move"},  {"children", "child"},
      {"men", "man"},      {"women", "woman"},  {"feet", "foot"},
      {"teeth", "tooth"},  {"geese", "goose"},  {"mice", "mouse"},
      {"people", "person"}, {"wives", "wife"},  {"wolves", "wolf"},
      {"knives", "knife"}, {"leaves", "leaf"},  {"lives", "life"},
      {"halves", "half"},  {"shelves", "shelf"}, {"loaves", "loaf"},
      {"thieves", "thief"}, {"calves", "calf"}, {"elves", "elf"},
      {"scarves", "scarf"},
  };
  return dict;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// consonants safe to undouble after stripping ing/ed (running -> run) while
// leaving words like fall, class, stuff untouched
bool undoublable(char c) {
  switch (c) {
    case 'b': case 'd': case 'g': case 'k': case 'm':
    case 'n': case 'p': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

void undouble(std::string& s) {
  const std::size_t n = s.size();
  if (n >= 2 && s[n - 1] == s[n - 2] && undoublable(s[n - 1])) {
    s.pop_back();
  }
}

// One rewrite pass; returns true when the token changed.
bool lemma_step(std::string& s) {
  const auto& dict = irregular_lemmas();
  if (auto it = dict.find(s); it != dict.end()) {
    if (it->second == s) return false;
    s = it->second;
    return true;
  }
  if (ends_with(s, "sses") && s.size() >= 5) {
    s.resize(s.size() - 2);
    return true;
  }
  if (ends_with(s, "ies") && s.size() >= 5) {
    s.resize(s.size() - 3);
    s += 'y';
    return true;
  }
  for (std::string_view suffix : {"xes", "ches", "shes", "zes"}) {
    if (ends_with(s, suffix) && s.size() >= suffix.size() + 1) {
      s.resize(s.size() - 2);
      return true;
    }
  }
  if (ends_with(s, "eed") && s.size() >= 6) {
    s.pop_back();
    return true;
  }
  if (ends_with(s, "s") && s.size() >= 4 && !ends_with(s, "ss") &&
      !ends_with(s, "us") && !ends_with(s, "is")) {
    s.pop_back();
    return true;
  }
  if (ends_with(s, "ing") && s.size() >= 6) {
    s.resize(s.size() - 3);
    undouble(s);
    return true;
  }
  if (ends_with(s, "ed") && s.size() >= 5) {
    s.resize(s.size() - 2);
    undouble(s);
    return true;
  }
  return false;
}

}  // namespace

std::string RuleLemmatizer::lemma(std::string_view token) const {
  std::string s(token);
  for (int i = 0; i < 10; ++i) {
    if (!lemma_step(s)) break;
  }
  return s;
}

PreprocessConfig PreprocessConfig::defaults() {
  PreprocessConfig config;
  config.stop_words = default_stop_words();
  config.lemmatizer = std::make_shared<RuleLemmatizer>();
  return config;
}

std::vector<std::string> extract_terms(std::string_view text,
                                       const PreprocessConfig& config) {
  std::vector<std::string> terms;
  for (std::string& token : tokenize(text)) {
    if (config.stop_words.count(token) != 0) continue;
    std::string lemma = config.lemmatizer ? config.lemmatizer->lemma(token)
                                          : std::move(token);
    if (config.stop_words.count(lemma) != 0) continue;
    terms.push_back(std::move(lemma));
  }
  return terms;
}

}  // namespace ordo
