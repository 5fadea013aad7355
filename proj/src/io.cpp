#include "diamond/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "diamond/atlas.hpp"
#include "diamond/flat.hpp"
#include "diamond/rates.hpp"
#include "diamond/superposition.hpp"

namespace diamond::io {

namespace {

using nlohmann::json;

std::vector<double> band_gains(const RunConfig& cfg) {
  if (!cfg.filter_path.empty()) {
    return parse_filter_csv(cfg.filter_path, cfg.bands, cfg.bandwidth);
  }
  if (cfg.gain < 0.0) throw std::invalid_argument("gain must be >= 0");
  return std::vector<double>(cfg.bands, cfg.gain);
}

json plan_json(const flat::FlatPlan& p) {
  return json{{"t_df", p.t_df}, {"t_cf", p.t_cf}, {"p_df", p.p_df},
              {"p_cf", p.p_cf}, {"c_df", p.c_df}, {"c_cf", p.c_cf},
              {"rate", p.rate}};
}

// Water-filled full-cooperation bound plus the total-fronthaul cut.
double freq_cutset(const freq::ChannelSpec& spec) {
  const double df = spec.band_width();
  // maximize sum 2*df*0.5*log2(1+2*s*h^2) s.t. sum df*s <= P/2 via the
  // usual water level bisection.
  double lo = 0.0, hi = 1.0;
  const auto used = [&](double level) {
    double tot = 0.0;
    for (double h : spec.gains) {
      if (h > 0.0) tot += df * std::max(0.0, level - 1.0 / (2.0 * h * h));
    }
    return tot;
  };
  while (used(hi) < 0.5 * spec.p_total) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (used(mid) < 0.5 * spec.p_total) lo = mid; else hi = mid;
  }
  const double level = 0.5 * (lo + hi);
  double rate = 0.0;
  for (double h : spec.gains) {
    if (h > 0.0) {
      const double s = std::max(0.0, level - 1.0 / (2.0 * h * h));
      rate += 2.0 * df * 0.5 * std::log2(1.0 + 2.0 * s * h * h);
    }
  }
  return std::min(rate, 2.0 * spec.c_total);
}

}  // namespace

std::vector<double> parse_filter_csv(const std::string& path, int n_bands,
                                     double bandwidth) {
  if (n_bands < 1) throw std::invalid_argument("bands must be >= 1");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open filter file " + path, 0);
  std::vector<double> fs, gs;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    // Trim and skip blanks/comments.
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
      throw ParseError("expected 'frequency,gain'", row);
    }
    double f, g;
    try {
      f = std::stod(a);
      g = std::stod(b);
    } catch (const std::exception&) {
      if (row == 1) continue;  // optional header
      throw ParseError("non-numeric field", row);
    }
    if (!fs.empty() && f <= fs.back()) {
      throw ParseError("frequencies must be strictly increasing", row);
    }
    if (g < 0.0) throw ParseError("gain must be nonnegative", row);
    fs.push_back(f);
    gs.push_back(g);
  }
  if (fs.empty()) throw ParseError("empty filter file", row);

  std::vector<double> out(n_bands);
  for (int i = 0; i < n_bands; ++i) {
    const double fc = (i + 0.5) * bandwidth / n_bands;
    if (fc <= fs.front()) {
      out[i] = gs.front();
    } else if (fc >= fs.back()) {
      out[i] = gs.back();
    } else {
      const auto it = std::upper_bound(fs.begin(), fs.end(), fc);
      const std::size_t k = it - fs.begin();
      const double w = (fc - fs[k - 1]) / (fs[k] - fs[k - 1]);
      out[i] = gs[k - 1] + w * (gs[k] - gs[k - 1]);
    }
  }
  return out;
}

json run_flat(const RunConfig& cfg) {
  const flat::FlatPlan plan =
      flat::flat_optimize(cfg.power, cfg.fronthaul, cfg.grid);
  json j;
  j["command"] = "flat";
  j["inputs"] = {{"power", cfg.power}, {"fronthaul", cfg.fronthaul},
                 {"grid", cfg.grid}};
  j["plan"] = plan_json(plan);
  j["achieved"] = plan.rate;
  j["references"] = {
      {"cf_only", rates::r_cf(cfg.power, cfg.fronthaul)},
      {"df_only", flat::df_only_rate(cfg.power, cfg.fronthaul)},
      {"cutset", rates::cutset(cfg.power, cfg.fronthaul)}};
  return j;
}

json run_spc(const RunConfig& cfg) {
  const spc::SpcSolution sol = spc::spc_optimize(cfg.power, cfg.fronthaul);
  const char* mode = sol.mode == spc::Mode::PureDF  ? "PureDF"
                     : sol.mode == spc::Mode::PureCF ? "PureCF"
                                                     : "Boundary";
  json j;
  j["command"] = "spc";
  j["inputs"] = {{"power", cfg.power}, {"fronthaul", cfg.fronthaul}};
  j["mode"] = mode;
  j["p_df_star"] = sol.p_df_star;
  j["achieved"] = sol.rate;
  j["threshold"] = spc::spc_threshold(cfg.power);
  j["references"] = {
      {"cf_only", rates::r_cf(cfg.power, cfg.fronthaul)},
      {"df_only", flat::df_only_rate(cfg.power, cfg.fronthaul)},
      {"cutset", rates::cutset(cfg.power, cfg.fronthaul)}};
  return j;
}

json run_freq(const RunConfig& cfg, freq::AllocationPlan* plan_out) {
  freq::ChannelSpec spec;
  spec.bandwidth = cfg.bandwidth;
  spec.gains = band_gains(cfg);
  spec.p_total = cfg.power;
  spec.c_total = cfg.fronthaul;
  freq::GridOptions opts;
  opts.n_lambda_c = cfg.dual_grid;
  opts.n_lambda_s = cfg.dual_grid;
  const freq::OptimizeResult res = freq::optimize(spec, opts);
  freq::GridOptions cf_opts = opts, df_opts = opts;
  cf_opts.modes = freq::ModeFilter::CfOnly;
  df_opts.modes = freq::ModeFilter::DfOnly;
  const double cf_only = freq::optimize(spec, cf_opts).plan.rate;
  const double df_only = freq::optimize(spec, df_opts).plan.rate;

  json j;
  j["command"] = "freq";
  j["inputs"] = {{"power", cfg.power},     {"fronthaul", cfg.fronthaul},
                 {"bandwidth", cfg.bandwidth}, {"bands", cfg.bands},
                 {"dual_grid", cfg.dual_grid},
                 {"filter", cfg.filter_path.empty() ? json(cfg.gain)
                                                    : json(cfg.filter_path)}};
  j["achieved"] = res.plan.rate;
  j["lambda_s"] = res.lp.lambda_s;
  j["lambda_c"] = res.lp.lambda_c;
  j["power_used"] = res.plan.power_used;
  j["fronthaul_used"] = res.plan.fronthaul_used;
  j["power_active"] = res.power_active;
  j["fronthaul_active"] = res.fronthaul_active;
  j["references"] = {{"cf_only", cf_only}, {"df_only", df_only},
                     {"cutset", freq_cutset(spec)}};
  json bands = json::array();
  const double df = spec.band_width();
  for (std::size_t i = 0; i < res.plan.bands.size(); ++i) {
    const auto& b = res.plan.bands[i];
    bands.push_back({{"f", (i + 0.5) * df}, {"h", b.h},
                     {"t_df", b.t_df}, {"t_cf", b.t_cf},
                     {"s_df", b.df.s}, {"s_cf", b.cf.s},
                     {"c_df", b.df.c}, {"c_cf", b.cf.c},
                     {"r_df", b.df.r}, {"r_cf", b.cf.r}});
  }
  j["bands"] = std::move(bands);
  if (plan_out != nullptr) *plan_out = res.plan;
  return j;
}

json run_sweep_c(const RunConfig& cfg, double from, double to, int steps) {
  if (steps < 1 || to < from) throw std::invalid_argument("bad sweep range");
  std::vector<double> cs(steps);
  for (int i = 0; i < steps; ++i) {
    cs[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);
  }
  const auto pts = flat::flat_sweep_c(cfg.power, cs, cfg.grid);
  json j;
  j["command"] = "sweep-c";
  j["inputs"] = {{"power", cfg.power}, {"from", from}, {"to", to},
                 {"steps", steps}, {"grid", cfg.grid}};
  json rows = json::array();
  for (const auto& pt : pts) {
    json row = plan_json(pt.plan);
    row["c"] = pt.x;
    row["cf_only"] = pt.refs.cf_only;
    row["df_only"] = pt.refs.df_only;
    row["cutset"] = pt.refs.cutset;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

json run_sweep_p(const RunConfig& cfg, double from, double to, int steps) {
  if (steps < 1 || to < from) throw std::invalid_argument("bad sweep range");
  std::vector<double> ps(steps);
  for (int i = 0; i < steps; ++i) {
    ps[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);
  }
  const auto pts = flat::flat_sweep_p(cfg.fronthaul, ps, cfg.grid);
  json j;
  j["command"] = "sweep-p";
  j["inputs"] = {{"fronthaul", cfg.fronthaul}, {"from", from}, {"to", to},
                 {"steps", steps}, {"grid", cfg.grid}};
  json rows = json::array();
  for (const auto& pt : pts) {
    json row = plan_json(pt.plan);
    row["p"] = pt.x;
    row["cf_only"] = pt.refs.cf_only;
    row["df_only"] = pt.refs.df_only;
    row["cutset"] = pt.refs.cutset;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

json run_atlas(double gain, int samples) {
  if (!(gain > 0.0) || samples < 2) {
    throw std::invalid_argument("atlas needs gain > 0 and samples >= 2");
  }
  json j;
  j["command"] = "atlas";
  j["inputs"] = {{"gain", gain}, {"samples", samples}};
  json rows = json::array();
  for (int i = 0; i < samples; ++i) {
    const double lc = 2.0 * i / samples;
    rows.push_back({{"lambda_c", lc},
                    {"df_region", atlas::df_region_line(lc, gain)},
                    {"cf_region", atlas::cf_region_line(lc, gain)},
                    {"equal_power", atlas::equal_power_line(lc, gain)},
                    {"equal_relayrate", atlas::equal_relayrate_line(lc, gain)}});
  }
  j["rows"] = std::move(rows);
  j["junctions"] = {{"equal_power", atlas::equal_power_junction()},
                    {"equal_relayrate", atlas::equal_relayrate_junction()}};
  return j;
}

void write_alloc_csv(const std::string& path, const freq::AllocationPlan& plan,
                     double bandwidth) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "f,h,t_df,t_cf,s_df,s_cf,c_df,c_cf,r_df,r_cf\n";
  const double df = plan.bands.empty() ? 0.0 : bandwidth / plan.bands.size();
  out.precision(12);
  for (std::size_t i = 0; i < plan.bands.size(); ++i) {
    const auto& b = plan.bands[i];
    out << (i + 0.5) * df << ',' << b.h << ',' << b.t_df << ',' << b.t_cf
        << ',' << b.df.s << ',' << b.cf.s << ',' << b.df.c << ',' << b.cf.c
        << ',' << b.df.r << ',' << b.cf.r << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace diamond::io
