#include <algorithm>
#include <cmath>
#include <sstream>

#include "rpd/dataset.hpp"
#include "rpd/errors.hpp"
#include "rpd/harness.hpp"

namespace rpd {

std::vector<double> histogram_edges(double max_value, std::size_t bins) {
  if (bins == 0) {
    throw InvalidArgument("histogram needs at least one bin");
  }
  if (!std::isfinite(max_value)) {
    throw InvalidArgument("histogram range is not finite");
  }
  double upper = std::ceil(max_value);
  if (!(upper > 0.0)) {
    upper = 1.0;
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = upper * static_cast<double>(i) / static_cast<double>(bins);
  }
  return edges;
}

std::vector<std::size_t> histogram_counts(const std::vector<double>& values,
                                          const std::vector<double>& edges) {
  const std::size_t bins = edges.size() - 1;
  std::vector<std::size_t> counts(bins, 0);
  for (const double v : values) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t bin = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    ++counts[std::min(bin, bins - 1)];
  }
  return counts;
}

PopulationStats population_stats(std::string name, std::uint64_t seed,
                                  const std::vector<double>& values) {
  PopulationStats s;
  s.population = std::move(name);
  s.seed = seed;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  std::size_t within = 0;
  s.min = values.front();
  s.max = values.front();
  for (const double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    within += v <= 1.0 + kDefaultTolerance ? 1 : 0;
  }
  const double n = static_cast<double>(values.size());
  s.mean = sum / n;
  double sq = 0.0;
  for (const double v : values) {
    sq += (v - s.mean) * (v - s.mean);
  }
  s.variance = sq / n;
  s.fraction_within = static_cast<double>(within) / n;
  return s;
}

nlohmann::json to_json(const EvalReport& report, bool include_timings) {
  nlohmann::json j;
  j["protocol"] = report.protocol;
  j["config"] = report.config;

  nlohmann::json aucs = nlohmann::json::array();
  for (const auto& row : report.aucs) {
    aucs.push_back({{"class", row.label},
                    {"method", row.method},
                    {"seeds", row.seeds},
                    {"per_seed", row.per_seed},
                    {"mean", row.mean},
                    {"variance", row.variance}});
  }
  j["aucs"] = std::move(aucs);

  if (!report.confusion.empty()) {
    j["confusion"] = {{"classes", report.confusion_labels}, {"matrix", report.confusion}};
  }

  if (!report.histograms.empty()) {
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& h : report.histograms) {
      hs.push_back(
          {{"population", h.population}, {"seed", h.seed}, {"edges", h.edges}, {"counts", h.counts}});
    }
    j["histograms"] = std::move(hs);
  }

  if (!report.populations.empty()) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : report.populations) {
      ps.push_back({{"population", p.population},
                    {"seed", p.seed},
                    {"count", p.count},
                    {"mean", p.mean},
                    {"variance", p.variance},
                    {"min", p.min},
                    {"max", p.max},
                    {"fraction_within_1", p.fraction_within}});
    }
    j["populations"] = std::move(ps);
  }

  if (!report.grid.empty()) {
    nlohmann::json g = nlohmann::json::array();
    for (const auto& p : report.grid) {
      g.push_back({{"m", p.m}, {"d", p.d}, {"seed", p.seed}, {"class", p.label}, {"auc", p.auc}});
    }
    j["grid"] = std::move(g);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.grid_summary) {
      cells.push_back(
          {{"m", c.m}, {"d", c.d}, {"mean_auc", c.mean_auc}, {"median_auc", c.median_auc}});
    }
    j["grid_summary"] = std::move(cells);
  }

  if (include_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& timing : report.timings) {
      t[timing.name] = timing.seconds;
    }
    j["timings"] = std::move(t);
  }
  return j;
}

std::string grid_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "m,d,seed,class,auc\n";
  for (const auto& p : report.grid) {
    out << p.m << ',' << p.d << ',' << p.seed << ',' << p.label << ',' << format_double(p.auc)
        << '\n';
  }
  return out.str();
}

std::string auc_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "class,method,seed,auc\n";
  for (const auto& row : report.aucs) {
    for (std::size_t s = 0; s < row.per_seed.size(); ++s) {
      out << row.label << ',' << row.method << ',' << row.seeds[s] << ','
          << format_double(row.per_seed[s]) << '\n';
    }
  }
  return out.str();
}

} // namespace rpd
