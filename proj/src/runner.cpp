#include "ordo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <utility>

#include "ordo/error.hpp"
#include "ordo/parallel.hpp"
#include "ordo/rng.hpp"
#include "ordo/stats.hpp"
#include "ordo/version.hpp"

namespace ordo {

Variant variant_from_string(std::string_view name) {
  if (name == "full") return Variant::full;
  if (name == "summary") return Variant::summary;
  throw Error("unknown variant: " + std::string(name));
}

std::string_view to_string(Variant variant) {
  return variant == Variant::full ? "full" : "summary";
}

SchemeSpec SchemeSpec::similarity(GreedyScheme greedy, Measure measure) {
  SchemeSpec spec;
  spec.family = Family::similarity;
  spec.greedy = greedy;
  spec.measure = measure;
  return spec;
}

SchemeSpec SchemeSpec::divergence(DivergenceKind kind, ExtremeDirection direction) {
  SchemeSpec spec;
  spec.family = Family::divergence;
  spec.kind = kind;
  spec.direction = direction;
  return spec;
}

SchemeSpec SchemeSpec::from_id(std::string_view id) {
  const std::size_t slash = id.find('/');
  if (slash == std::string_view::npos) {
    throw Error("invalid scheme id (expected method/variant): " + std::string(id));
  }
  const std::string_view method = id.substr(0, slash);
  const std::string_view detail = id.substr(slash + 1);
  if (method == "most_similar_all" || method == "most_similar_recent" ||
      method == "least_similar_all") {
    return similarity(greedy_scheme_from_string(method), measure_from_string(detail));
  }
  if (method == "entropy" || method == "kld_uniform" || method == "kld") {
    return divergence(divergence_from_string(method), direction_from_string(detail));
  }
  throw Error("unknown scheme id: " + std::string(id));
}

std::vector<SchemeSpec> SchemeSpec::all() {
  std::vector<SchemeSpec> schemes;
  for (GreedyScheme greedy : {GreedyScheme::most_similar_all,
                              GreedyScheme::most_similar_recent,
                              GreedyScheme::least_similar_all}) {
    for (Measure measure : {Measure::cosine, Measure::jaccard,
                            Measure::relative_probability}) {
      schemes.push_back(similarity(greedy, measure));
    }
  }
  for (DivergenceKind kind : {DivergenceKind::entropy, DivergenceKind::kld_uniform}) {
    for (ExtremeDirection direction : {ExtremeDirection::most_first,
                                       ExtremeDirection::least_first}) {
      schemes.push_back(divergence(kind, direction));
    }
  }
  return schemes;
}

std::string SchemeSpec::method() const {
  return family == Family::similarity ? std::string(to_string(greedy))
                                      : std::string(to_string(kind));
}

std::string SchemeSpec::variant_id() const {
  return family == Family::similarity ? std::string(to_string(measure))
                                      : std::string(to_string(direction));
}

std::string SchemeSpec::id() const { return method() + "/" + variant_id(); }

void validate_config(const RunConfig& config) {
  if (config.corpora.empty()) throw Error("invalid config: no corpora");
  if (config.schemes.empty()) throw Error("invalid config: no schemes");
  if (config.variants.empty()) throw Error("invalid config: no variants");
  std::set<std::string> scheme_ids;
  for (const auto& scheme : config.schemes) {
    if (!scheme_ids.insert(scheme.id()).second) {
      throw Error("invalid config: duplicate scheme " + scheme.id());
    }
  }
  std::set<Variant> variants(config.variants.begin(), config.variants.end());
  if (variants.size() != config.variants.size()) {
    throw Error("invalid config: duplicate variants");
  }
  if (config.topics_ratio <= 0.0 || config.topics_ratio > 1.0) {
    throw Error("invalid config: topics_ratio out of range (0,1]");
  }
  if (config.summary_ratio <= 0.0 || config.summary_ratio > 1.0) {
    throw Error("invalid config: summary_ratio out of range (0,1]");
  }
  if (config.random_count < 2) throw Error("invalid config: random_count must be >= 2");
  if (config.lda_iterations < 1) {
    throw Error("invalid config: lda_iterations must be >= 1");
  }
  if (config.lda_beta <= 0.0) throw Error("invalid config: lda_beta must be positive");
  if (config.workers < 1) throw Error("invalid config: workers must be >= 1");
  if (config.p_threshold <= 0.0 || config.p_threshold >= 1.0) {
    throw Error("invalid config: p_threshold out of range (0,1)");
  }
  for (double ratio : config.sweep_ratios) {
    if (ratio <= 0.0 || ratio > 1.0) {
      throw Error("invalid config: sweep ratio out of range (0,1]");
    }
  }
}

namespace {

std::string resolve_path(const std::string& path, const std::filesystem::path& base) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return p.string();
  return (base / p).lexically_normal().string();
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error("invalid config: expected a JSON object");
  RunConfig config;
  try {
    if (!j.contains("corpora")) throw Error("invalid config: missing corpora");
    for (const auto& item : j.at("corpora")) {
      CorpusSpec spec;
      if (item.is_string()) {
        spec.path = resolve_path(item.get<std::string>(), base_dir);
      } else {
        spec.path = resolve_path(item.at("path").get<std::string>(), base_dir);
        if (item.contains("manifest")) {
          spec.manifest = resolve_path(item.at("manifest").get<std::string>(), base_dir);
        }
      }
      config.corpora.push_back(std::move(spec));
    }
    if (!j.contains("schemes") || (j.at("schemes").is_string() &&
                                   j.at("schemes").get<std::string>() == "all")) {
      config.schemes = SchemeSpec::all();
    } else {
      for (const auto& item : j.at("schemes")) {
        config.schemes.push_back(SchemeSpec::from_id(item.get<std::string>()));
      }
    }
    if (j.contains("variants")) {
      config.variants.clear();
      for (const auto& item : j.at("variants")) {
        config.variants.push_back(variant_from_string(item.get<std::string>()));
      }
    }
    config.topics_ratio = j.value("topics_ratio", config.topics_ratio);
    config.summary_ratio = j.value("summary_ratio", config.summary_ratio);
    config.random_count = j.value("random_count", config.random_count);
    config.master_seed = j.value("master_seed", config.master_seed);
    config.lda_iterations = j.value("lda_iterations", config.lda_iterations);
    config.lda_alpha = j.value("lda_alpha", config.lda_alpha);
    config.lda_beta = j.value("lda_beta", config.lda_beta);
    if (j.contains("sweep_ratios")) {
      config.sweep_ratios = j.at("sweep_ratios").get<std::vector<double>>();
    }
    config.workers = j.value("workers", config.workers);
    config.p_threshold = j.value("p_threshold", config.p_threshold);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config: ") + e.what());
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("invalid config: cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config: ") + e.what());
  }
  return config_from_json(j, path.parent_path());
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["corpora"] = nlohmann::json::array();
  for (const auto& spec : config.corpora) {
    nlohmann::json item;
    item["path"] = spec.path;
    if (spec.manifest) item["manifest"] = *spec.manifest;
    j["corpora"].push_back(std::move(item));
  }
  j["schemes"] = nlohmann::json::array();
  for (const auto& scheme : config.schemes) j["schemes"].push_back(scheme.id());
  j["variants"] = nlohmann::json::array();
  for (Variant variant : config.variants) {
    j["variants"].push_back(std::string(to_string(variant)));
  }
  j["topics_ratio"] = config.topics_ratio;
  j["summary_ratio"] = config.summary_ratio;
  j["random_count"] = config.random_count;
  j["master_seed"] = config.master_seed;
  j["lda_iterations"] = config.lda_iterations;
  j["lda_alpha"] = config.lda_alpha;
  j["lda_beta"] = config.lda_beta;
  j["sweep_ratios"] = config.sweep_ratios;
  j["workers"] = config.workers;
  j["p_threshold"] = config.p_threshold;
  return j;
}

namespace {

struct Materials {
  Corpus corpus;  // variant-specific documents, preprocessed
  DocTermMatrix dtm;
  std::map<Measure, SimilarityMatrix> matrices;
};

std::string baseline_key_for(int n, int count, std::uint64_t seed) {
  return "n=" + std::to_string(n) + ";count=" + std::to_string(count) +
         ";seed=" + std::to_string(seed);
}

}  // namespace

RunReport run_pipeline(const RunConfig& config) {
  validate_config(config);
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [](auto since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
        .count();
  };

  RunReport report;
  report.tool_version = kToolVersion;
  report.schema_version = kReportSchemaVersion;
  report.config = config;

  // load + preprocess
  const auto t_load = std::chrono::steady_clock::now();
  std::vector<Corpus> corpora;
  corpora.reserve(config.corpora.size());
  for (const auto& spec : config.corpora) {
    LoadOptions options;
    if (spec.manifest) options.manifest = *spec.manifest;
    Corpus corpus = load_corpus(spec.path, options);
    preprocess_corpus(corpus, PreprocessConfig::defaults(), config.workers);
    corpora.push_back(std::move(corpus));
  }
  report.timing_seconds["load"] = elapsed(t_load);

  // variant materials and shared matrices
  const auto t_prepare = std::chrono::steady_clock::now();
  std::set<Measure> measures;
  bool any_divergence = false;
  for (const auto& scheme : config.schemes) {
    if (scheme.family == SchemeSpec::Family::similarity) {
      measures.insert(scheme.measure);
    } else {
      any_divergence = true;
    }
  }
  (void)any_divergence;

  std::map<std::pair<std::size_t, Variant>, Materials> materials;
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    for (Variant variant : config.variants) {
      Materials m;
      m.corpus = variant == Variant::full
                     ? corpora[c]
                     : summarize_corpus(corpora[c], config.summary_ratio,
                                        PreprocessConfig::defaults(), LuhnConfig{},
                                        config.workers);
      m.dtm = build_doc_term_matrix(m.corpus);
      for (Measure measure : measures) {
        m.matrices.emplace(measure, similarity_matrix(m.dtm, measure, config.workers));
      }
      materials.emplace(std::make_pair(c, variant), std::move(m));
    }
  }

  // one baseline per distinct corpus size
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    const int n = static_cast<int>(corpora[c].size());
    const std::uint64_t seed =
        derive_seed(config.master_seed, fnv1a64("baseline|n=" + std::to_string(n)));
    const std::string key = baseline_key_for(n, config.random_count, seed);
    if (report.baselines.count(key) == 0) {
      report.baselines.emplace(
          key, random_baseline(n, config.random_count, seed, config.workers));
    }
  }
  report.timing_seconds["prepare"] = elapsed(t_prepare);

  // combinations
  const auto t_sequence = std::chrono::steady_clock::now();
  struct Combination {
    std::size_t corpus_index;
    Variant variant;
    SchemeSpec scheme;
  };
  std::vector<Combination> combinations;
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    for (Variant variant : config.variants) {
      for (const auto& scheme : config.schemes) {
        combinations.push_back({c, variant, scheme});
      }
    }
  }

  std::vector<std::optional<ResultCell>> cells(combinations.size());
  std::vector<std::optional<FailureCell>> failures(combinations.size());
  parallel_for(combinations.size(), config.workers, [&](std::size_t i) {
    const auto& combo = combinations[i];
    const Corpus& source = corpora[combo.corpus_index];
    const Materials& m = materials.at({combo.corpus_index, combo.variant});
    try {
      ResultCell cell;
      cell.corpus = source.name;
      cell.genre = source.genre;
      cell.variant = combo.variant;
      cell.scheme = combo.scheme;
      cell.n_docs = static_cast<int>(source.size());

      if (combo.scheme.family == SchemeSpec::Family::similarity) {
        const auto gold = m.corpus.gold_positions();
        cell.ordering = greedy_sequence(m.matrices.at(combo.scheme.measure), gold,
                                        combo.scheme.greedy);
        cell.ordering.method = combo.scheme.id();
      } else {
        LdaConfig lda;
        lda.topics_ratio = config.topics_ratio;
        lda.iterations = config.lda_iterations;
        lda.alpha = config.lda_alpha;
        lda.beta = config.lda_beta;
        lda.seed = derive_seed(
            config.master_seed,
            fnv1a64(source.name + "|" + std::string(to_string(combo.variant)) + "|" +
                    combo.scheme.id()));
        cell.ordering = entropy_sequence(m.corpus, combo.scheme.kind,
                                         combo.scheme.direction, lda);
      }

      std::vector<int> gold(cell.n_docs);
      for (int g = 0; g < cell.n_docs; ++g) gold[g] = g + 1;
      cell.metrics = evaluate_order(gold, cell.ordering.positions);

      const std::uint64_t baseline_seed = derive_seed(
          config.master_seed,
          fnv1a64("baseline|n=" + std::to_string(cell.n_docs)));
      cell.baseline_key =
          baseline_key_for(cell.n_docs, config.random_count, baseline_seed);
      const BaselineStats& baseline = report.baselines.at(cell.baseline_key);
      for (OrderMetric metric : kAllOrderMetrics) {
        const std::size_t index = static_cast<std::size_t>(metric);
        const double observed = cell.metrics.value(metric);
        const auto direction = metric_higher_is_better(metric)
                                   ? stats::Direction::higher_better
                                   : stats::Direction::lower_better;
        const auto test = stats::t_test_vs_baseline(
            observed, baseline.metric_samples(metric), direction);
        PValueCell& p = cell.pvalues[index];
        p.observed = observed;
        p.baseline_mean = baseline.metric_mean(metric);
        p.baseline_stddev = baseline.metric_stddev(metric);
        p.t_stat = test.t;
        p.p_one_sided = test.p_one_sided;
        p.p_two_sided = test.p_two_sided;
        p.degenerate = test.degenerate;
      }
      cells[i] = std::move(cell);
    } catch (const std::exception& e) {
      FailureCell failure;
      failure.corpus = source.name;
      failure.variant = combo.variant;
      failure.scheme_id = combo.scheme.id();
      failure.message = e.what();
      failures[i] = std::move(failure);
    }
  });
  for (std::size_t i = 0; i < combinations.size(); ++i) {
    if (cells[i]) report.results.push_back(std::move(*cells[i]));
    if (failures[i]) report.failures.push_back(std::move(*failures[i]));
  }
  report.timing_seconds["sequence"] = elapsed(t_sequence);

  // entropy sweep over summary ratios
  if (!config.sweep_ratios.empty()) {
    const auto t_sweep = std::chrono::steady_clock::now();
    for (std::size_t c = 0; c < corpora.size(); ++c) {
      LdaConfig lda;
      lda.topics_ratio = config.topics_ratio;
      lda.iterations = config.lda_iterations;
      lda.alpha = config.lda_alpha;
      lda.beta = config.lda_beta;
      lda.seed = derive_seed(config.master_seed, fnv1a64("sweep|" + corpora[c].name));
      auto rows = entropy_summary_sweep(corpora[c], config.sweep_ratios, lda);
      report.sweep.insert(report.sweep.end(), rows.begin(), rows.end());
    }
    report.timing_seconds["sweep"] = elapsed(t_sweep);
  }

  report.timing_seconds["total"] = elapsed(t_start);
  return report;
}

}  // namespace ordo
