#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordo/csv.hpp"
#include "ordo/error.hpp"
#include "ordo/runner.hpp"

namespace ordo {

namespace {

nlohmann::json metrics_to_json(const MetricValues& m) {
  nlohmann::json j;
  j["nhd"] = m.nhd;
  j["nmhd"] = m.nmhd;
  j["nrmse"] = m.nrmse;
  j["nmwoe"] = m.nmwoe;
  j["mcoe"] = m.mcoe;
  j["raw"] = {{"hd", m.raw.hd},
              {"mhd", m.raw.mhd},
              {"rmse", m.raw.rmse},
              {"mwoe", m.raw.mwoe}};
  return j;
}

MetricValues metrics_from_json(const nlohmann::json& j) {
  MetricValues m;
  m.nhd = j.at("nhd").get<double>();
  m.nmhd = j.at("nmhd").get<double>();
  m.nrmse = j.at("nrmse").get<double>();
  m.nmwoe = j.at("nmwoe").get<double>();
  m.mcoe = j.at("mcoe").get<double>();
  const auto& raw = j.at("raw");
  m.raw.hd = raw.at("hd").get<double>();
  m.raw.mhd = raw.at("mhd").get<double>();
  m.raw.rmse = raw.at("rmse").get<double>();
  m.raw.mwoe = raw.at("mwoe").get<double>();
  return m;
}

nlohmann::json ordering_to_json(const Ordering& ordering) {
  nlohmann::json j;
  j["method"] = ordering.method;
  j["positions"] = ordering.positions;
  j["trace"] = nlohmann::json::array();
  for (const auto& step : ordering.trace) {
    nlohmann::json s;
    s["chosen"] = step.chosen;
    s["score"] = step.score;
    s["fitted_topics"] = step.fitted_topics;
    s["candidates"] = nlohmann::json::array();
    for (const auto& [gold, score] : step.candidate_scores) {
      s["candidates"].push_back({gold, score});
    }
    j["trace"].push_back(std::move(s));
  }
  return j;
}

Ordering ordering_from_json(const nlohmann::json& j) {
  Ordering ordering;
  ordering.method = j.at("method").get<std::string>();
  ordering.positions = j.at("positions").get<std::vector<int>>();
  for (const auto& s : j.at("trace")) {
    TraceStep step;
    step.chosen = s.at("chosen").get<int>();
    step.score = s.at("score").get<double>();
    step.fitted_topics = s.at("fitted_topics").get<int>();
    for (const auto& c : s.at("candidates")) {
      step.candidate_scores.emplace_back(c.at(0).get<int>(), c.at(1).get<double>());
    }
    ordering.trace.push_back(std::move(step));
  }
  return ordering;
}

nlohmann::json pvalues_to_json(const std::array<PValueCell, 5>& pvalues) {
  nlohmann::json j;
  for (OrderMetric metric : kAllOrderMetrics) {
    const PValueCell& p = pvalues[static_cast<std::size_t>(metric)];
    nlohmann::json cell;
    cell["observed"] = p.observed;
    cell["baseline_mean"] = p.baseline_mean;
    cell["baseline_stddev"] = p.baseline_stddev;
    cell["t"] = p.t_stat;
    cell["p_one_sided"] = p.p_one_sided;
    cell["p_two_sided"] = p.p_two_sided;
    cell["degenerate"] = p.degenerate;
    j[std::string(metric_name(metric))] = std::move(cell);
  }
  return j;
}

std::array<PValueCell, 5> pvalues_from_json(const nlohmann::json& j) {
  std::array<PValueCell, 5> pvalues;
  for (OrderMetric metric : kAllOrderMetrics) {
    const auto& cell = j.at(std::string(metric_name(metric)));
    PValueCell& p = pvalues[static_cast<std::size_t>(metric)];
    p.observed = cell.at("observed").get<double>();
    p.baseline_mean = cell.at("baseline_mean").get<double>();
    p.baseline_stddev = cell.at("baseline_stddev").get<double>();
    p.t_stat = cell.at("t").get<double>();
    p.p_one_sided = cell.at("p_one_sided").get<double>();
    p.p_two_sided = cell.at("p_two_sided").get<double>();
    p.degenerate = cell.at("degenerate").get<bool>();
  }
  return pvalues;
}

nlohmann::json baseline_to_json(const BaselineStats& b) {
  nlohmann::json j;
  j["n"] = b.n;
  j["count"] = b.count;
  j["seed"] = b.master_seed;
  for (OrderMetric metric : kAllOrderMetrics) {
    const std::string name(metric_name(metric));
    const std::size_t index = static_cast<std::size_t>(metric);
    j["mean"][name] = b.mean[index];
    j["stddev"][name] = b.stddev[index];
    j["samples"][name] = b.samples[index];
  }
  return j;
}

BaselineStats baseline_from_json(const nlohmann::json& j) {
  BaselineStats b;
  b.n = j.at("n").get<int>();
  b.count = j.at("count").get<int>();
  b.master_seed = j.at("seed").get<std::uint64_t>();
  for (OrderMetric metric : kAllOrderMetrics) {
    const std::string name(metric_name(metric));
    const std::size_t index = static_cast<std::size_t>(metric);
    b.mean[index] = j.at("mean").at(name).get<double>();
    b.stddev[index] = j.at("stddev").at(name).get<double>();
    b.samples[index] = j.at("samples").at(name).get<std::vector<double>>();
  }
  return b;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report, bool include_timing) {
  nlohmann::json j;
  j["tool_version"] = report.tool_version;
  j["schema_version"] = report.schema_version;
  j["methods"] = {{"t_test", "one-sample t of baseline samples vs observed value"},
                  {"primary_p", "one-sided, direction where the scheme beats random"},
                  {"secondary_p", "two-sided"},
                  {"pairwise", "welch"},
                  {"correction", "bonferroni"}};
  j["config"] = config_to_json(report.config);
  j["results"] = nlohmann::json::array();
  for (const auto& cell : report.results) {
    nlohmann::json c;
    c["corpus"] = cell.corpus;
    c["genre"] = std::string(to_string(cell.genre));
    c["variant"] = std::string(to_string(cell.variant));
    c["scheme"] = cell.scheme.id();
    c["n_docs"] = cell.n_docs;
    c["baseline_key"] = cell.baseline_key;
    c["ordering"] = ordering_to_json(cell.ordering);
    c["metrics"] = metrics_to_json(cell.metrics);
    c["pvalues"] = pvalues_to_json(cell.pvalues);
    j["results"].push_back(std::move(c));
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& failure : report.failures) {
    j["failures"].push_back({{"corpus", failure.corpus},
                             {"variant", std::string(to_string(failure.variant))},
                             {"scheme", failure.scheme_id},
                             {"message", failure.message}});
  }
  j["baselines"] = nlohmann::json::object();
  for (const auto& [key, baseline] : report.baselines) {
    j["baselines"][key] = baseline_to_json(baseline);
  }
  j["sweep"] = nlohmann::json::array();
  for (const auto& row : report.sweep) {
    j["sweep"].push_back({{"corpus", row.corpus},
                          {"doc_id", row.doc_id},
                          {"ratio", row.ratio},
                          {"entropy_full", row.entropy_full},
                          {"entropy_summary", row.entropy_summary},
                          {"abs_diff", row.abs_diff},
                          {"rel_diff", row.rel_diff}});
  }
  if (include_timing) {
    j["timing"] = report.timing_seconds;
  }
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport report;
  try {
    report.tool_version = j.at("tool_version").get<std::string>();
    report.schema_version = j.at("schema_version").get<std::string>();
    report.config = config_from_json(j.at("config"), {});
    for (const auto& c : j.at("results")) {
      ResultCell cell;
      cell.corpus = c.at("corpus").get<std::string>();
      cell.genre = genre_from_string(c.at("genre").get<std::string>());
      cell.variant = variant_from_string(c.at("variant").get<std::string>());
      cell.scheme = SchemeSpec::from_id(c.at("scheme").get<std::string>());
      cell.n_docs = c.at("n_docs").get<int>();
      cell.baseline_key = c.at("baseline_key").get<std::string>();
      cell.ordering = ordering_from_json(c.at("ordering"));
      cell.metrics = metrics_from_json(c.at("metrics"));
      cell.pvalues = pvalues_from_json(c.at("pvalues"));
      report.results.push_back(std::move(cell));
    }
    for (const auto& f : j.at("failures")) {
      FailureCell failure;
      failure.corpus = f.at("corpus").get<std::string>();
      failure.variant = variant_from_string(f.at("variant").get<std::string>());
      failure.scheme_id = f.at("scheme").get<std::string>();
      failure.message = f.at("message").get<std::string>();
      report.failures.push_back(std::move(failure));
    }
    for (const auto& [key, b] : j.at("baselines").items()) {
      report.baselines.emplace(key, baseline_from_json(b));
    }
    for (const auto& s : j.at("sweep")) {
      SweepRow row;
      row.corpus = s.at("corpus").get<std::string>();
      row.doc_id = s.at("doc_id").get<std::string>();
      row.ratio = s.at("ratio").get<double>();
      row.entropy_full = s.at("entropy_full").get<double>();
      row.entropy_summary = s.at("entropy_summary").get<double>();
      row.abs_diff = s.at("abs_diff").get<double>();
      row.rel_diff = s.at("rel_diff").get<double>();
      report.sweep.push_back(std::move(row));
    }
    if (j.contains("timing")) {
      report.timing_seconds = j.at("timing").get<std::map<std::string, double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid report: ") + e.what());
  }
  return report;
}

namespace {

double median_of_sorted(const std::vector<double>& v, std::size_t begin,
                        std::size_t end) {
  const std::size_t n = end - begin;
  const std::size_t mid = begin + n / 2;
  if (n % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

WhiskerStats whisker_stats(std::vector<double> values) {
  if (values.empty()) throw Error("whisker stats require at least one value");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  WhiskerStats stats;
  stats.min = values.front();
  stats.max = values.back();
  stats.median = median_of_sorted(values, 0, n);
  // Tukey hinges: an odd-length sample keeps its median in both halves.
  const std::size_t half = n / 2;
  const std::size_t lower_end = n % 2 == 1 ? half + 1 : half;
  stats.q1 = median_of_sorted(values, 0, lower_end);
  stats.q3 = median_of_sorted(values, half, n);
  return stats;
}

DiffReport compare_runs(const RunReport& full, const RunReport& summary) {
  auto index_rows = [](const RunReport& report, Variant preferred) {
    std::map<std::string, const ResultCell*> rows;
    for (const auto& cell : report.results) {
      if (cell.variant != preferred) continue;
      rows.emplace(cell.corpus + "|" + cell.scheme.id(), &cell);
    }
    for (const auto& cell : report.results) {
      rows.emplace(cell.corpus + "|" + cell.scheme.id(), &cell);
    }
    return rows;
  };
  const auto full_rows = index_rows(full, Variant::full);
  const auto summary_rows = index_rows(summary, Variant::summary);
  if (full_rows.empty() || summary_rows.empty()) {
    throw Error("mismatched runs: a report has no result rows");
  }
  for (const auto& [key, cell] : summary_rows) {
    (void)cell;
    if (full_rows.count(key) == 0) {
      throw Error("mismatched runs: no counterpart for " + key);
    }
  }

  DiffReport diff;
  for (const auto& [key, full_cell] : full_rows) {
    const auto it = summary_rows.find(key);
    if (it == summary_rows.end()) {
      throw Error("mismatched runs: no counterpart for " + key);
    }
    const ResultCell* summary_cell = it->second;
    for (OrderMetric metric : kAllOrderMetrics) {
      const std::size_t index = static_cast<std::size_t>(metric);
      DiffCell cell;
      cell.corpus = full_cell->corpus;
      cell.genre = full_cell->genre;
      cell.scheme_id = full_cell->scheme.id();
      cell.metric = metric;
      cell.p_full = full_cell->pvalues[index].p_one_sided;
      cell.p_summary = summary_cell->pvalues[index].p_one_sided;
      cell.diff = cell.p_full - cell.p_summary;
      diff.cells.push_back(std::move(cell));
    }
  }

  std::map<std::pair<std::string, OrderMetric>, std::pair<double, int>> genre_sums;
  std::map<std::string, std::vector<double>> diffs_by_metric;
  for (const auto& cell : diff.cells) {
    auto& [sum, count] = genre_sums[{std::string(to_string(cell.genre)), cell.metric}];
    sum += cell.diff;
    count += 1;
    diffs_by_metric[std::string(metric_name(cell.metric))].push_back(cell.diff);
  }
  for (const auto& [key, aggregate] : genre_sums) {
    GenreDiffRow row;
    row.genre = key.first;
    row.metric = key.second;
    row.mean_diff = aggregate.first / aggregate.second;
    row.cell_count = aggregate.second;
    diff.genre_rows.push_back(std::move(row));
  }
  for (const auto& [name, diffs] : diffs_by_metric) {
    diff.whiskers_by_metric.emplace(name, whisker_stats(diffs));
  }
  return diff;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

std::string join_positions(const std::vector<int>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(positions[i]);
  }
  return out;
}

void emit_results_csv(const RunReport& report, std::ostream& out) {
  csv::Writer w(out);
  w.field("corpus").field("genre").field("variant").field("method").field("detail")
      .field("scheme").field("n_docs").field("order");
  for (OrderMetric metric : kAllOrderMetrics) w.field(metric_name(metric));
  for (OrderMetric metric : kAllOrderMetrics) {
    w.field("p_" + std::string(metric_name(metric)));
  }
  w.field("baseline_key");
  w.end_row();
  for (const auto& cell : report.results) {
    w.field(cell.corpus)
        .field(to_string(cell.genre))
        .field(to_string(cell.variant))
        .field(cell.scheme.method())
        .field(cell.scheme.variant_id())
        .field(cell.scheme.id())
        .field(cell.n_docs)
        .field(join_positions(cell.ordering.positions));
    for (OrderMetric metric : kAllOrderMetrics) w.field(cell.metrics.value(metric));
    for (OrderMetric metric : kAllOrderMetrics) {
      w.field(cell.pvalues[static_cast<std::size_t>(metric)].p_one_sided);
    }
    w.field(cell.baseline_key);
    w.end_row();
  }
}

void emit_pgrid_csv(const RunReport& report, Variant variant, OrderMetric metric,
                    std::ostream& out) {
  std::vector<std::string> corpora;
  std::vector<std::string> schemes;
  std::map<std::pair<std::string, std::string>, double> values;
  for (const auto& cell : report.results) {
    if (cell.variant != variant) continue;
    if (std::find(corpora.begin(), corpora.end(), cell.corpus) == corpora.end()) {
      corpora.push_back(cell.corpus);
    }
    const std::string scheme = cell.scheme.id();
    if (std::find(schemes.begin(), schemes.end(), scheme) == schemes.end()) {
      schemes.push_back(scheme);
    }
    values[{cell.corpus, scheme}] =
        cell.pvalues[static_cast<std::size_t>(metric)].p_one_sided;
  }
  csv::Writer w(out);
  w.field("corpus");
  for (const auto& scheme : schemes) w.field(scheme);
  w.end_row();
  for (const auto& corpus : corpora) {
    w.field(corpus);
    for (const auto& scheme : schemes) {
      const auto it = values.find({corpus, scheme});
      if (it == values.end()) {
        w.field("");
      } else {
        w.field(it->second);
      }
    }
    w.end_row();
  }
}

void emit_baselines_csv(const RunReport& report, std::ostream& out) {
  csv::Writer w(out);
  w.field("key").field("n").field("count").field("seed").field("metric")
      .field("mean").field("stddev");
  w.end_row();
  for (const auto& [key, baseline] : report.baselines) {
    for (OrderMetric metric : kAllOrderMetrics) {
      w.field(key)
          .field(baseline.n)
          .field(baseline.count)
          .field(std::to_string(baseline.master_seed))
          .field(metric_name(metric))
          .field(baseline.metric_mean(metric))
          .field(baseline.metric_stddev(metric));
      w.end_row();
    }
  }
}

void emit_aggregates_csv(const RunReport& report, std::ostream& out) {
  csv::Writer w(out);
  w.field("variant").field("metric").field("scheme").field("n_cells")
      .field("frac_p_at_most_threshold").field("frac_p_above_threshold")
      .field("mean_p");
  w.end_row();
  const double threshold = report.config.p_threshold;
  for (Variant variant : report.config.variants) {
    for (OrderMetric metric : kAllOrderMetrics) {
      for (const auto& scheme : report.config.schemes) {
        int n_cells = 0;
        int n_low = 0;
        double sum_p = 0.0;
        for (const auto& cell : report.results) {
          if (cell.variant != variant || cell.scheme.id() != scheme.id()) continue;
          const double p = cell.pvalues[static_cast<std::size_t>(metric)].p_one_sided;
          n_cells += 1;
          sum_p += p;
          if (p <= threshold) n_low += 1;
        }
        if (n_cells == 0) continue;
        w.field(to_string(variant))
            .field(metric_name(metric))
            .field(scheme.id())
            .field(n_cells)
            .field(static_cast<double>(n_low) / n_cells)
            .field(static_cast<double>(n_cells - n_low) / n_cells)
            .field(sum_p / n_cells);
        w.end_row();
      }
    }
  }
}

void emit_sweep_csv(const RunReport& report, std::ostream& out) {
  csv::Writer w(out);
  w.field("corpus").field("doc_id").field("ratio").field("entropy_full")
      .field("entropy_summary").field("abs_diff").field("rel_diff");
  w.end_row();
  for (const auto& row : report.sweep) {
    w.field(row.corpus)
        .field(row.doc_id)
        .field(row.ratio)
        .field(row.entropy_full)
        .field(row.entropy_summary)
        .field(row.abs_diff)
        .field(row.rel_diff);
    w.end_row();
  }
}

void emit_orders_csv(const RunReport& report, std::ostream& out) {
  csv::Writer w(out);
  w.field("corpus").field("variant").field("scheme").field("step").field("chosen")
      .field("score").field("fitted_topics");
  w.end_row();
  for (const auto& cell : report.results) {
    for (std::size_t step = 0; step < cell.ordering.trace.size(); ++step) {
      const TraceStep& t = cell.ordering.trace[step];
      w.field(cell.corpus)
          .field(to_string(cell.variant))
          .field(cell.scheme.id())
          .field(step + 1)
          .field(t.chosen)
          .field(t.score)
          .field(t.fitted_topics);
      w.end_row();
    }
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_reports(const RunReport& report,
                                                const std::filesystem::path& out_dir,
                                                EmitFormats formats) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const std::filesystem::path path = out_dir / name;
    std::ostringstream buffer;
    writer(buffer);
    write_text_file(path, buffer.str());
    written.push_back(path);
  };

  if (formats.json) {
    emit("report.json", [&](std::ostream& out) {
      out << report_to_json(report).dump(2) << '\n';
    });
  }
  if (formats.csv) {
    emit("results.csv", [&](std::ostream& out) { emit_results_csv(report, out); });
    std::set<Variant> present;
    for (const auto& cell : report.results) present.insert(cell.variant);
    for (Variant variant : present) {
      for (OrderMetric metric : kAllOrderMetrics) {
        const std::string name = "pgrid_" + std::string(metric_name(metric)) + "_" +
                                 std::string(to_string(variant)) + ".csv";
        emit(name, [&](std::ostream& out) {
          emit_pgrid_csv(report, variant, metric, out);
        });
      }
    }
    emit("baselines.csv", [&](std::ostream& out) { emit_baselines_csv(report, out); });
    emit("aggregates.csv",
         [&](std::ostream& out) { emit_aggregates_csv(report, out); });
    if (!report.sweep.empty()) {
      emit("sweep.csv", [&](std::ostream& out) { emit_sweep_csv(report, out); });
    }
    emit("orders.csv", [&](std::ostream& out) { emit_orders_csv(report, out); });
  }
  return written;
}

std::vector<std::filesystem::path> emit_diff_report(
    const DiffReport& diff, const std::filesystem::path& out_dir,
    EmitFormats formats) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const std::filesystem::path path = out_dir / name;
    std::ostringstream buffer;
    writer(buffer);
    write_text_file(path, buffer.str());
    written.push_back(path);
  };

  if (formats.json) {
    emit("diff.json", [&](std::ostream& out) {
      nlohmann::json j;
      j["cells"] = nlohmann::json::array();
      for (const auto& cell : diff.cells) {
        j["cells"].push_back({{"corpus", cell.corpus},
                              {"genre", std::string(to_string(cell.genre))},
                              {"scheme", cell.scheme_id},
                              {"metric", std::string(metric_name(cell.metric))},
                              {"p_full", cell.p_full},
                              {"p_summary", cell.p_summary},
                              {"diff", cell.diff}});
      }
      j["genres"] = nlohmann::json::array();
      for (const auto& row : diff.genre_rows) {
        j["genres"].push_back({{"genre", row.genre},
                               {"metric", std::string(metric_name(row.metric))},
                               {"mean_diff", row.mean_diff},
                               {"n_cells", row.cell_count}});
      }
      j["whiskers"] = nlohmann::json::object();
      for (const auto& [name, w] : diff.whiskers_by_metric) {
        j["whiskers"][name] = {{"min", w.min},
                               {"q1", w.q1},
                               {"median", w.median},
                               {"q3", w.q3},
                               {"max", w.max}};
      }
      out << j.dump(2) << '\n';
    });
  }
  if (formats.csv) {
    emit("diff_cells.csv", [&](std::ostream& out) {
      csv::Writer w(out);
      w.field("corpus").field("genre").field("scheme").field("metric")
          .field("p_full").field("p_summary").field("diff");
      w.end_row();
      for (const auto& cell : diff.cells) {
        w.field(cell.corpus)
            .field(to_string(cell.genre))
            .field(cell.scheme_id)
            .field(metric_name(cell.metric))
            .field(cell.p_full)
            .field(cell.p_summary)
            .field(cell.diff);
        w.end_row();
      }
    });
    emit("diff_genres.csv", [&](std::ostream& out) {
      csv::Writer w(out);
      w.field("genre").field("metric").field("mean_diff").field("n_cells");
      w.end_row();
      for (const auto& row : diff.genre_rows) {
        w.field(row.genre)
            .field(metric_name(row.metric))
            .field(row.mean_diff)
            .field(row.cell_count);
        w.end_row();
      }
    });
    emit("diff_whiskers.csv", [&](std::ostream& out) {
      csv::Writer w(out);
      w.field("metric").field("min").field("q1").field("median").field("q3")
          .field("max");
      w.end_row();
      for (const auto& [name, ws] : diff.whiskers_by_metric) {
        w.field(name).field(ws.min).field(ws.q1).field(ws.median).field(ws.q3)
            .field(ws.max);
        w.end_row();
      }
    });
  }
  return written;
}

}  // namespace ordo
