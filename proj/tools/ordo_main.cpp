#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordo/csv.hpp"
#include "ordo/error.hpp"
#include "ordo/luhn.hpp"
#include "ordo/rng.hpp"
#include "ordo/runner.hpp"
#include "ordo/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

ordo::RunConfig load_run_config(const GlobalArgs& args) {
  if (args.config_path.empty()) {
    throw ordo::Error("invalid config: --config is required for this command");
  }
  ordo::RunConfig config = ordo::load_config(args.config_path);
  if (args.seed) config.master_seed = *args.seed;
  if (args.workers) config.workers = *args.workers;
  ordo::validate_config(config);
  return config;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

int finish_pipeline_command(const ordo::RunReport& report) {
  if (report.failures.empty()) return kExitOk;
  for (const auto& failure : report.failures) {
    std::cerr << "failure: " << failure.corpus << " "
              << ordo::to_string(failure.variant) << " " << failure.scheme_id << ": "
              << failure.message << "\n";
  }
  return kExitPartial;
}

int cmd_ingest(const GlobalArgs& args) {
  const ordo::RunConfig config = load_run_config(args);
  std::filesystem::create_directories(args.out_dir);
  std::ofstream stats_out(std::filesystem::path(args.out_dir) / "corpus_stats.csv",
                          std::ios::binary);
  ordo::csv::Writer w(stats_out);
  w.field("corpus").field("genre").field("doc_id").field("gold_position")
      .field("terms").field("distinct_terms");
  w.end_row();
  for (const auto& spec : config.corpora) {
    ordo::LoadOptions options;
    if (spec.manifest) options.manifest = *spec.manifest;
    ordo::Corpus corpus = ordo::load_corpus(spec.path, options);
    ordo::preprocess_corpus(corpus, ordo::PreprocessConfig::defaults(), config.workers);
    const ordo::DocTermMatrix dtm = ordo::build_doc_term_matrix(corpus);
    std::size_t total_terms = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& doc = corpus.documents[i];
      std::size_t distinct = 0;
      for (std::uint32_t count : dtm.row(i)) {
        if (count > 0) distinct += 1;
      }
      total_terms += doc.terms.size();
      w.field(corpus.name)
          .field(ordo::to_string(corpus.genre))
          .field(doc.id)
          .field(doc.gold_position)
          .field(doc.terms.size())
          .field(distinct);
      w.end_row();
    }
    std::cout << corpus.name << " genre=" << ordo::to_string(corpus.genre)
              << " docs=" << corpus.size() << " vocab=" << dtm.cols()
              << " terms=" << total_terms << "\n";
  }
  return kExitOk;
}

int cmd_order(const GlobalArgs& args) {
  ordo::RunConfig config = load_run_config(args);
  config.sweep_ratios.clear();
  const ordo::RunReport report = ordo::run_pipeline(config);
  for (const auto& cell : report.results) {
    std::cout << cell.corpus << " " << ordo::to_string(cell.variant) << " "
              << cell.scheme.id() << ": " << join_ints(cell.ordering.positions)
              << "\n";
  }
  std::filesystem::create_directories(args.out_dir);
  ordo::EmitFormats formats;
  formats.json = false;
  ordo::emit_reports(report, args.out_dir, formats);
  return finish_pipeline_command(report);
}

int cmd_summarize(const GlobalArgs& args) {
  const ordo::RunConfig config = load_run_config(args);
  std::filesystem::create_directories(args.out_dir);
  std::ofstream stats_out(std::filesystem::path(args.out_dir) / "summary_stats.csv",
                          std::ios::binary);
  ordo::csv::Writer w(stats_out);
  w.field("corpus").field("doc_id").field("ratio").field("kept_sentences")
      .field("total_sentences");
  w.end_row();
  for (const auto& spec : config.corpora) {
    ordo::LoadOptions options;
    if (spec.manifest) options.manifest = *spec.manifest;
    const ordo::Corpus corpus = ordo::load_corpus(spec.path, options);
    const std::filesystem::path corpus_dir =
        std::filesystem::path(args.out_dir) / corpus.name;
    std::filesystem::create_directories(corpus_dir);
    for (const auto& doc : corpus.documents) {
      const ordo::Summary summary =
          ordo::luhn_summarize(doc, config.summary_ratio);
      const std::size_t total = ordo::split_sentences(doc.raw_text).size();
      std::ofstream doc_out(corpus_dir / (doc.id + ".txt"), std::ios::binary);
      for (const auto& sentence : summary.sentences) doc_out << sentence << "\n";
      w.field(corpus.name)
          .field(doc.id)
          .field(config.summary_ratio)
          .field(summary.sentences.size())
          .field(total);
      w.end_row();
      std::cout << corpus.name << "/" << doc.id << ": kept "
                << summary.sentences.size() << "/" << total << " sentences\n";
    }
  }
  return kExitOk;
}

int cmd_baseline(const GlobalArgs& args) {
  const ordo::RunConfig config = load_run_config(args);
  std::set<int> sizes;
  for (const auto& spec : config.corpora) {
    ordo::LoadOptions options;
    if (spec.manifest) options.manifest = *spec.manifest;
    sizes.insert(static_cast<int>(ordo::load_corpus(spec.path, options).size()));
  }
  std::filesystem::create_directories(args.out_dir);
  std::ofstream out(std::filesystem::path(args.out_dir) / "baselines.csv",
                    std::ios::binary);
  ordo::csv::Writer w(out);
  w.field("n").field("count").field("seed").field("metric").field("mean")
      .field("stddev");
  w.end_row();
  for (int n : sizes) {
    const std::uint64_t seed = ordo::derive_seed(
        config.master_seed, ordo::fnv1a64("baseline|n=" + std::to_string(n)));
    const ordo::BaselineStats stats =
        ordo::random_baseline(n, config.random_count, seed, config.workers);
    std::cout << "n=" << n << " count=" << config.random_count;
    for (ordo::OrderMetric metric : ordo::kAllOrderMetrics) {
      std::cout << " " << ordo::metric_name(metric) << "="
                << ordo::csv::format_double(stats.metric_mean(metric));
      w.field(n)
          .field(config.random_count)
          .field(std::to_string(seed))
          .field(ordo::metric_name(metric))
          .field(stats.metric_mean(metric))
          .field(stats.metric_stddev(metric));
      w.end_row();
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const GlobalArgs& args) {
  ordo::RunConfig config = load_run_config(args);
  config.sweep_ratios.clear();
  const ordo::RunReport report = ordo::run_pipeline(config);
  for (const auto& cell : report.results) {
    std::cout << cell.corpus << " " << ordo::to_string(cell.variant) << " "
              << cell.scheme.id() << ":";
    for (ordo::OrderMetric metric : ordo::kAllOrderMetrics) {
      const auto& p = cell.pvalues[static_cast<std::size_t>(metric)];
      std::cout << " " << ordo::metric_name(metric) << "="
                << ordo::csv::format_double(p.observed)
                << "(p=" << ordo::csv::format_double(p.p_one_sided) << ")";
    }
    std::cout << "\n";
  }
  for (const auto& path : ordo::emit_reports(report, args.out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  return finish_pipeline_command(report);
}

int cmd_compare(const GlobalArgs& args, const std::string& full_path,
                const std::string& summary_path) {
  auto read_report = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ordo::Error("cannot read report " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ordo::Error("invalid report " + path + ": " + e.what());
    }
    return ordo::report_from_json(j);
  };
  const ordo::RunReport full = read_report(full_path);
  const ordo::RunReport summary = read_report(summary_path);
  const ordo::DiffReport diff = ordo::compare_runs(full, summary);
  for (const auto& [metric, w] : diff.whiskers_by_metric) {
    std::cout << metric << " diff: min=" << ordo::csv::format_double(w.min)
              << " q1=" << ordo::csv::format_double(w.q1)
              << " median=" << ordo::csv::format_double(w.median)
              << " q3=" << ordo::csv::format_double(w.q3)
              << " max=" << ordo::csv::format_double(w.max) << "\n";
  }
  for (const auto& path : ordo::emit_diff_report(diff, args.out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const GlobalArgs& args) {
  ordo::RunConfig config = load_run_config(args);
  if (config.sweep_ratios.empty()) {
    config.sweep_ratios = {0.2, 0.4, 0.6, 0.8, 1.0};
  }
  std::filesystem::create_directories(args.out_dir);
  std::ofstream out(std::filesystem::path(args.out_dir) / "sweep.csv",
                    std::ios::binary);
  ordo::csv::Writer w(out);
  w.field("corpus").field("doc_id").field("ratio").field("entropy_full")
      .field("entropy_summary").field("abs_diff").field("rel_diff");
  w.end_row();
  for (const auto& spec : config.corpora) {
    ordo::LoadOptions options;
    if (spec.manifest) options.manifest = *spec.manifest;
    ordo::Corpus corpus = ordo::load_corpus(spec.path, options);
    ordo::preprocess_corpus(corpus, ordo::PreprocessConfig::defaults(),
                            config.workers);
    ordo::LdaConfig lda;
    lda.topics_ratio = config.topics_ratio;
    lda.iterations = config.lda_iterations;
    lda.alpha = config.lda_alpha;
    lda.beta = config.lda_beta;
    lda.seed = ordo::derive_seed(config.master_seed,
                                 ordo::fnv1a64("sweep|" + corpus.name));
    std::map<double, std::pair<double, int>> by_ratio;
    for (const auto& row :
         ordo::entropy_summary_sweep(corpus, config.sweep_ratios, lda)) {
      w.field(row.corpus)
          .field(row.doc_id)
          .field(row.ratio)
          .field(row.entropy_full)
          .field(row.entropy_summary)
          .field(row.abs_diff)
          .field(row.rel_diff);
      w.end_row();
      auto& [sum, count] = by_ratio[row.ratio];
      sum += row.abs_diff;
      count += 1;
    }
    for (const auto& [ratio, aggregate] : by_ratio) {
      std::cout << corpus.name << " ratio=" << ordo::csv::format_double(ratio)
                << " mean_abs_entropy_diff="
                << ordo::csv::format_double(aggregate.first / aggregate.second)
                << "\n";
    }
  }
  return kExitOk;
}

int cmd_report(const GlobalArgs& args) {
  const ordo::RunConfig config = load_run_config(args);
  const ordo::RunReport report = ordo::run_pipeline(config);
  for (const auto& path : ordo::emit_reports(report, args.out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  return finish_pipeline_command(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus sequencing experiments: similarity and topic-entropy "
               "orderings scored against gold order with random baselines."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ordo::kToolVersion));

  GlobalArgs args;
  app.add_option("--config", args.config_path, "run configuration file (JSON)");
  app.add_option("--out", args.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--seed", args.seed, "master seed override");
  app.add_option("--workers", args.workers, "worker thread count override");

  auto* ingest = app.add_subcommand(
      "ingest", "load and preprocess the configured corpora");
  auto* order = app.add_subcommand(
      "order", "produce document orders for the configured schemes");
  auto* summarize = app.add_subcommand(
      "summarize", "write extractive summaries at the configured ratio");
  auto* baseline = app.add_subcommand(
      "baseline", "random-permutation metric baselines per corpus size");
  auto* evaluate = app.add_subcommand(
      "evaluate", "order, score against gold, and attach baseline p-values");
  auto* compare = app.add_subcommand(
      "compare", "cell-wise p-value differences between two run reports");
  auto* sweep = app.add_subcommand(
      "sweep", "entropy differences across summary ratios");
  auto* report = app.add_subcommand(
      "report", "full pipeline with JSON and CSV reports");

  std::string compare_full;
  std::string compare_summary;
  compare->add_option("full_report", compare_full, "report JSON of the full run")
      ->required();
  compare
      ->add_option("summary_report", compare_summary,
                   "report JSON of the summary run")
      ->required();

  for (auto* sub : {ingest, order, summarize, baseline, evaluate, compare, sweep,
                    report}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(args);
    if (order->parsed()) return cmd_order(args);
    if (summarize->parsed()) return cmd_summarize(args);
    if (baseline->parsed()) return cmd_baseline(args);
    if (evaluate->parsed()) return cmd_evaluate(args);
    if (compare->parsed()) return cmd_compare(args, compare_full, compare_summary);
    if (sweep->parsed()) return cmd_sweep(args);
    if (report->parsed()) return cmd_report(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string_view what(e.what());
    return what.rfind("invalid config", 0) == 0 ? kExitConfig : kExitPartial;
  }
  return kExitConfig;
}
