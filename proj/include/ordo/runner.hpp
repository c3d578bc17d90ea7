#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ordo/corpus.hpp"
#include "ordo/entropy_seq.hpp"
#include "ordo/greedy_seq.hpp"
#include "ordo/luhn.hpp"
#include "ordo/metrics.hpp"
#include "ordo/ordering.hpp"
#include "ordo/similarity.hpp"

namespace ordo {

enum class Variant { full, summary };

Variant variant_from_string(std::string_view name);
std::string_view to_string(Variant variant);

struct SchemeSpec {
  enum class Family { similarity, divergence };

  Family family = Family::similarity;
  GreedyScheme greedy = GreedyScheme::most_similar_all;
  Measure measure = Measure::cosine;
  DivergenceKind kind = DivergenceKind::entropy;
  ExtremeDirection direction = ExtremeDirection::most_first;

  static SchemeSpec similarity(GreedyScheme greedy, Measure measure);
  static SchemeSpec divergence(DivergenceKind kind, ExtremeDirection direction);
  // "most_similar_all/cosine", "entropy/most_first", ...
  static SchemeSpec from_id(std::string_view id);
  static std::vector<SchemeSpec> all();

  std::string method() const;   // scheme family member name
  std::string variant_id() const;  // measure or direction name
  std::string id() const;       // method() + "/" + variant_id()
};

struct CorpusSpec {
  std::string path;
  std::optional<std::string> manifest;
};

struct RunConfig {
  std::vector<CorpusSpec> corpora;
  std::vector<SchemeSpec> schemes;
  std::vector<Variant> variants = {Variant::full};
  double topics_ratio = 0.20;
  double summary_ratio = 0.20;
  int random_count = 100;
  std::uint64_t master_seed = 0;
  int lda_iterations = 500;
  double lda_alpha = 0.0;  // 0 = 50/p
  double lda_beta = 0.01;
  std::vector<double> sweep_ratios;
  int workers = 1;
  double p_threshold = 0.05;
};

// Throws ordo::Error with an "invalid config:" message on bad input.
void validate_config(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& config);

struct PValueCell {
  double observed = 0.0;
  double baseline_mean = 0.0;
  double baseline_stddev = 0.0;
  double t_stat = 0.0;
  double p_one_sided = 1.0;
  double p_two_sided = 1.0;
  bool degenerate = false;
};

struct ResultCell {
  std::string corpus;
  Genre genre = Genre::other;
  Variant variant = Variant::full;
  SchemeSpec scheme;
  int n_docs = 0;
  std::string baseline_key;
  Ordering ordering;
  MetricValues metrics;
  std::array<PValueCell, 5> pvalues;  // indexed by OrderMetric order
};

struct FailureCell {
  std::string corpus;
  Variant variant = Variant::full;
  std::string scheme_id;
  std::string message;
};

struct RunReport {
  std::string tool_version;
  std::string schema_version;
  RunConfig config;
  std::vector<ResultCell> results;
  std::vector<FailureCell> failures;
  std::map<std::string, BaselineStats> baselines;
  std::vector<SweepRow> sweep;
  std::map<std::string, double> timing_seconds;  // excluded from comparisons
};

RunReport run_pipeline(const RunConfig& config);

nlohmann::json report_to_json(const RunReport& report, bool include_timing = true);
RunReport report_from_json(const nlohmann::json& j);

struct WhiskerStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Order statistics with Tukey-hinge quartiles.
WhiskerStats whisker_stats(std::vector<double> values);

struct DiffCell {
  std::string corpus;
  Genre genre = Genre::other;
  std::string scheme_id;
  OrderMetric metric = OrderMetric::nhd;
  double p_full = 0.0;
  double p_summary = 0.0;
  double diff = 0.0;  // p_full - p_summary
};

struct GenreDiffRow {
  std::string genre;
  OrderMetric metric = OrderMetric::nhd;
  double mean_diff = 0.0;
  int cell_count = 0;
};

struct DiffReport {
  std::vector<DiffCell> cells;
  std::vector<GenreDiffRow> genre_rows;
  std::map<std::string, WhiskerStats> whiskers_by_metric;
};

// Cell-by-cell p-value differences between a full-document run and a
// summary run; rows matched on (corpus, scheme).
DiffReport compare_runs(const RunReport& full, const RunReport& summary);

struct EmitFormats {
  bool json = true;
  bool csv = true;
};

std::vector<std::filesystem::path> emit_reports(const RunReport& report,
                                                const std::filesystem::path& out_dir,
                                                EmitFormats formats = {});
std::vector<std::filesystem::path> emit_diff_report(const DiffReport& diff,
                                                    const std::filesystem::path& out_dir,
                                                    EmitFormats formats = {});

}  // namespace ordo
