#include "pedsafe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace pedsafe {

namespace {

constexpr const char* kStCaveat =
    "ST trace generated under baseline masking; cell re-scores the fixed trace";

struct SeriesKey {
  std::string condition;
  std::string profile;  // empty = pooled
  bool operator<(const SeriesKey& o) const {
    return std::tie(condition, profile) < std::tie(o.condition, o.profile);
  }
};

// per-session behavioral scalars grouped by (condition, profile)
struct BehavioralSeries {
  std::map<SeriesKey, std::vector<double>> delta_k;
  std::map<SeriesKey, std::vector<double>> approp_rate;
  std::map<SeriesKey, std::vector<double>> inapprop_count;
};

BehavioralSeries collect_behavioral(const LogSet& logs) {
  BehavioralSeries s;
  for (const auto& log : logs.logs) {
    const SeriesKey key{log.header.condition, log.header.profile};
    int inapprop = 0;
    for (const auto& step : log.steps) {
      if (!step.appropriate) ++inapprop;
    }
    const double n = static_cast<double>(log.steps.size());
    s.delta_k[key].push_back(log.summary.delta_k);
    s.approp_rate[key].push_back(1.0 - inapprop / n);
    s.inapprop_count[key].push_back(static_cast<double>(inapprop));
  }
  return s;
}

bool zero_variance(std::span<const double> xs) {
  for (double x : xs) {
    if (x != xs.front()) return false;
  }
  return true;
}

void add_comparison(std::vector<ComparisonRow>& out, const std::string& family, int family_size,
                    const std::string& metric, const std::string& a, const std::string& b,
                    const std::string& profile, std::span<const double> xs,
                    std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) return;
  ComparisonRow row;
  row.family = family;
  row.family_size = family_size;
  row.metric = metric;
  row.comparison = a + "_vs_" + b;
  row.profile = profile.empty() ? "pooled" : profile;
  if (zero_variance(xs) && zero_variance(ys)) {
    row.degenerate = true;  // reported as '---'
  } else {
    row.result = welch_t(xs, ys);
    row.result.verdict = bonferroni_verdict(row.result.p, family_size);
  }
  out.push_back(std::move(row));
}

std::vector<std::string> profile_names_in(const LogSet& logs) {
  std::vector<std::string> names;
  for (const auto& log : logs.logs) {
    if (std::find(names.begin(), names.end(), log.header.profile) == names.end()) {
      names.push_back(log.header.profile);
    }
  }
  return names;
}

bool has_condition(const LogSet& logs, const std::string& name) {
  return !logs.by_condition(name).empty();
}

// simple quartile summary for the boxplot
struct BoxStats {
  double q1, median, q3, lo_whisker, hi_whisker;
  std::vector<double> outliers;
};

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  BoxStats b{};
  b.q1 = quantile_sorted(values, 0.25);
  b.median = quantile_sorted(values, 0.50);
  b.q3 = quantile_sorted(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.lo_whisker = b.q3;
  b.hi_whisker = b.q1;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      b.outliers.push_back(v);
    } else {
      b.lo_whisker = std::min(b.lo_whisker, v);
      b.hi_whisker = std::max(b.hi_whisker, v);
    }
  }
  return b;
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<ComparisonRow> build_comparisons(const LogSet& logs, const ConceptGraph& graph,
                                             const ConstraintParams& params) {
  std::vector<ComparisonRow> rows;

  // per-seed RHSI pooled across profiles
  const auto evals = evaluate_conditions(logs, graph, params);
  std::map<std::string, std::vector<double>> rhsi_series;
  for (const auto& e : evals) rhsi_series[e.condition] = e.per_seed_rhsi;

  const std::vector<std::pair<std::string, std::string>> rhsi_pairs = {
      {"ST", "EO"}, {"ST", "MO"}, {"ST", "MAS"}, {"MO", "EO"}, {"MAS", "EO"}, {"MO", "MAS"}};
  for (const auto& [a, b] : rhsi_pairs) {
    if (rhsi_series.count(a) && rhsi_series.count(b)) {
      add_comparison(rows, "rhsi", 6, "rhsi_per_seed", a, b, "", rhsi_series[a], rhsi_series[b]);
    }
  }
  const std::vector<std::pair<std::string, std::string>> ablation_pairs = {
      {"ST", "NoC1"}, {"ST", "NoC3"}, {"NoC1", "NoC3"}};
  for (const auto& [a, b] : ablation_pairs) {
    if (rhsi_series.count(a) && rhsi_series.count(b)) {
      add_comparison(rows, "rhsi_ablation", 3, "rhsi_per_seed", a, b, "", rhsi_series[a],
                     rhsi_series[b]);
    }
  }

  // behavioral metrics: ST vs five comparison arms, per profile
  const auto behavioral = collect_behavioral(logs);
  const auto profiles = profile_names_in(logs);
  const std::vector<std::string> arms = {"EO", "MAS", "MO", "NoC1", "NoC3"};
  struct Metric {
    const char* name;
    const std::map<SeriesKey, std::vector<double>>* series;
  };
  const std::vector<Metric> metrics = {
      {"mastery_gain", &behavioral.delta_k},
      {"appropriateness", &behavioral.approp_rate},
      {"inappropriate_count", &behavioral.inapprop_count},
  };
  for (const auto& metric : metrics) {
    for (const auto& arm : arms) {
      if (!has_condition(logs, arm) || !has_condition(logs, "ST")) continue;
      for (const auto& profile : profiles) {
        const auto st = metric.series->find({"ST", profile});
        const auto other = metric.series->find({arm, profile});
        if (st == metric.series->end() || other == metric.series->end()) continue;
        add_comparison(rows, std::string("behavioral_") + metric.name, 15, metric.name, "ST", arm,
                       profile, st->second, other->second);
      }
    }
  }
  return rows;
}

std::string violations_csv(const std::vector<ConditionEvaluation>& rows) {
  std::ostringstream out;
  out << "condition,v2,v3,v4,norm\n";
  for (const auto& r : rows) {
    out << r.condition << ',' << format_number(r.rates.v2) << ',' << format_number(r.rates.v3)
        << ',' << format_number(r.rates.v4) << ',' << format_number(r.norm) << '\n';
  }
  return out.str();
}

std::string rhsi_csv(const std::vector<ConditionEvaluation>& rows) {
  std::ostringstream out;
  out << "condition,v2,v3,v4,norm,v_pi,ratio,rhsi,rhsi_per_seed_mean\n";
  for (const auto& r : rows) {
    out << r.condition << ',' << format_number(r.rates.v2) << ',' << format_number(r.rates.v3)
        << ',' << format_number(r.rates.v4) << ',' << format_number(r.norm) << ','
        << format_number(r.v_pi) << ',' << format_number(r.ratio) << ',' << format_number(r.rhsi)
        << ',' << format_number(r.rhsi_per_seed_mean) << '\n';
  }
  return out.str();
}

std::string condition_summary_csv(const ConditionSummary& s) {
  std::ostringstream out;
  out << "condition,sessions,mean_demand,engagement_mastery_ratio,mean_cum_reward";
  for (const auto& info : action_table()) out << ",share_" << info.name;
  for (const auto& [profile, _] : s.delta_k_by_profile) out << ",delta_k_" << profile;
  for (const auto& [profile, _] : s.mastered_by_profile) out << ",mastered_" << profile;
  out << '\n';
  out << s.condition << ',' << s.sessions << ',' << format_number(s.mean_demand) << ','
      << format_number(s.engagement_mastery_ratio) << ',' << format_number(s.mean_cum_reward);
  for (double share : s.action_share_pct) out << ',' << format_number(share);
  for (const auto& [_, v] : s.delta_k_by_profile) out << ',' << format_number(v);
  for (const auto& [_, v] : s.mastered_by_profile) out << ',' << format_number(v);
  out << '\n';
  return out.str();
}

std::string stats_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "family,metric,comparison,profile,delta,ci_low,ci_high,t,df,p,cohens_d,verdict\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.metric << ',' << r.comparison << ',' << r.profile << ',';
    if (r.degenerate) {
      out << "---,---,---,---,---,---,---,---\n";
      continue;
    }
    out << format_number(r.result.delta) << ',' << format_number(r.result.ci_low) << ','
        << format_number(r.result.ci_high) << ',' << format_number(r.result.t) << ','
        << format_number(r.result.df) << ',' << format_number(r.result.p) << ','
        << format_number(r.result.cohens_d) << ',' << verdict_name(r.result.verdict) << '\n';
  }
  return out.str();
}

std::string sensitivity_csv(const std::vector<SensitivityCell>& cells,
                            const ConstraintParams& base) {
  std::ostringstream out;
  std::vector<std::string> conditions;
  if (!cells.empty()) {
    for (const auto& [name, _] : cells.front().mean_rhsi) conditions.push_back(name);
  }
  out << "w,delta_min,eps_prog";
  for (const auto& c : conditions) out << ",rhsi_" << c;
  out << ",best,second,note\n";
  for (const auto& cell : cells) {
    out << cell.w << ',' << format_number(cell.delta_min) << ',' << format_number(cell.eps_prog);
    for (const auto& c : conditions) out << ',' << format_number(cell.mean_rhsi.at(c));
    const bool baseline_cell = cell.w == base.window_w && cell.delta_min == base.delta_min;
    out << ',' << cell.best << ',' << cell.second << ','
        << (baseline_cell ? "" : kStCaveat) << '\n';
  }
  return out.str();
}

std::string perturbation_csv(const std::vector<PerturbationRow>& rows) {
  std::ostringstream out;
  out << "scale,condition,rhsi,c3_rate\n";
  for (const auto& r : rows) {
    out << format_number(r.scale) << ',' << r.condition << ',' << format_number(r.mean_rhsi)
        << ',' << format_number(r.c3_rate) << '\n';
  }
  return out.str();
}

std::string sensitivity_heatmap_svg(const std::vector<SensitivityCell>& cells) {
  std::vector<std::string> conditions;
  std::vector<int> ws;
  std::vector<double> deltas;
  double max_rhsi = 0.0;
  for (const auto& cell : cells) {
    if (std::find(ws.begin(), ws.end(), cell.w) == ws.end()) ws.push_back(cell.w);
    if (std::find(deltas.begin(), deltas.end(), cell.delta_min) == deltas.end()) {
      deltas.push_back(cell.delta_min);
    }
    for (const auto& [name, v] : cell.mean_rhsi) {
      if (std::find(conditions.begin(), conditions.end(), name) == conditions.end()) {
        conditions.push_back(name);
      }
      max_rhsi = std::max(max_rhsi, v);
    }
  }
  std::sort(ws.begin(), ws.end());
  std::sort(deltas.begin(), deltas.end());

  const int cell_w = 64, cell_h = 36, panel_gap = 36, left = 70, top = 60;
  const int panel_width = cell_w * static_cast<int>(deltas.size());
  const int width = left + (panel_width + panel_gap) * static_cast<int>(conditions.size());
  const int height = top + cell_h * static_cast<int>(ws.size()) + 60;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">Mean RHSI across the window/demand-floor grid</text>\n";

  for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
    const int px = left + static_cast<int>(ci) * (panel_width + panel_gap);
    svg << "<text x=\"" << px << "\" y=\"" << top - 10 << "\" font-weight=\"bold\">"
        << conditions[ci] << "</text>\n";
    for (const auto& cell : cells) {
      const auto wi = std::find(ws.begin(), ws.end(), cell.w) - ws.begin();
      const auto di = std::find(deltas.begin(), deltas.end(), cell.delta_min) - deltas.begin();
      const double v = cell.mean_rhsi.at(conditions[ci]);
      const double frac = max_rhsi > 0.0 ? v / max_rhsi : 0.0;
      const int red = static_cast<int>(255 * frac);
      const int green = static_cast<int>(235 * (1.0 - frac) + 20);
      const int x = px + static_cast<int>(di) * cell_w;
      const int y = top + static_cast<int>(wi) * cell_h;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w << "\" height=\""
          << cell_h << "\" fill=\"rgb(" << red << ',' << green << ",90)\" stroke=\"white\"/>\n";
      char label[32];
      std::snprintf(label, sizeof(label), "%.3f", v);
      svg << "<text x=\"" << x + 6 << "\" y=\"" << y + 22 << "\" fill=\"black\">" << label
          << "</text>\n";
    }
    for (std::size_t di = 0; di < deltas.size(); ++di) {
      char lab[16];
      std::snprintf(lab, sizeof(lab), "%.2f", deltas[di]);
      svg << "<text x=\"" << px + static_cast<int>(di) * cell_w + 14 << "\" y=\""
          << top + cell_h * static_cast<int>(ws.size()) + 16 << "\">" << lab << "</text>\n";
    }
  }
  for (std::size_t wi = 0; wi < ws.size(); ++wi) {
    svg << "<text x=\"" << left - 44 << "\" y=\"" << top + static_cast<int>(wi) * cell_h + 22
        << "\">W=" << ws[wi] << "</text>\n";
  }
  svg << "<text x=\"" << left << "\" y=\"" << height - 12
      << "\">columns: demand floor; rows: window size</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string rhsi_boxplot_svg(const LogSet& logs, const ConceptGraph& graph,
                             const ConstraintParams& params, double eps_threshold) {
  const auto evals = evaluate_conditions(logs, graph, params);

  double max_v = eps_threshold;
  for (const auto& e : evals) {
    for (double v : e.per_seed_rhsi) max_v = std::max(max_v, v);
  }

  const int width = 120 + static_cast<int>(evals.size()) * 90;
  const int height = 360;
  const int top = 50, bottom = height - 50, left = 60;
  const double y_scale = (bottom - top) / max_v;
  auto y_of = [&](double v) { return bottom - v * y_scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << left << "\" y=\"22\" font-size=\"15\">Per-seed RHSI by condition</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = max_v * tick / 4.0;
    char lab[16];
    std::snprintf(lab, sizeof(lab), "%.2f", v);
    svg << "<text x=\"" << left - 42 << "\" y=\"" << y_of(v) + 4 << "\">" << lab << "</text>\n";
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y_of(v) << "\" x2=\"" << left << "\" y2=\""
        << y_of(v) << "\" stroke=\"black\"/>\n";
  }
  // safety threshold reference line
  svg << "<line x1=\"" << left << "\" y1=\"" << y_of(eps_threshold) << "\" x2=\"" << width - 20
      << "\" y2=\"" << y_of(eps_threshold)
      << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  char eps_lab[48];
  std::snprintf(eps_lab, sizeof(eps_lab), "eps = %.2f", eps_threshold);
  svg << "<text x=\"" << width - 90 << "\" y=\"" << y_of(eps_threshold) - 6
      << "\" fill=\"gray\">" << eps_lab << "</text>\n";

  int x = left + 40;
  for (const auto& e : evals) {
    const auto b = box_stats(e.per_seed_rhsi);
    const int box_w = 44;
    svg << "<line x1=\"" << x + box_w / 2 << "\" y1=\"" << y_of(b.lo_whisker) << "\" x2=\""
        << x + box_w / 2 << "\" y2=\"" << y_of(b.hi_whisker) << "\" stroke=\"black\"/>\n";
    svg << "<rect x=\"" << x << "\" y=\"" << y_of(b.q3) << "\" width=\"" << box_w << "\" height=\""
        << std::max(1.0, y_of(b.q1) - y_of(b.q3)) << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << x << "\" y1=\"" << y_of(b.median) << "\" x2=\"" << x + box_w
        << "\" y2=\"" << y_of(b.median) << "\" stroke=\"white\" stroke-width=\"2\"/>\n";
    for (double o : b.outliers) {
      svg << "<circle cx=\"" << x + box_w / 2 << "\" cy=\"" << y_of(o)
          << "\" r=\"2.5\" fill=\"black\"/>\n";
    }
    svg << "<text x=\"" << x + 8 << "\" y=\"" << bottom + 18 << "\">" << e.condition
        << "</text>\n";
    x += 90;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pedsafe
