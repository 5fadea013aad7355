#ifndef DIAMOND_IO_HPP
#define DIAMOND_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "diamond/freq.hpp"

// Front-end plumbing: filter ingestion, run orchestration, and report
// serialization (JSON for reports, CSV for per-band tables).

namespace diamond::io {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int row_)
      : std::runtime_error(msg + " (row " + std::to_string(row_) + ")"),
        row(row_) {}
  int row;
};

// Reads "frequency,gain" rows (optional header), strictly increasing
// frequency, gain >= 0; resamples by linear interpolation to the n uniform
// band centers (i+0.5)*W/n. Centers outside the tabulated range take the
// nearest endpoint gain.
std::vector<double> parse_filter_csv(const std::string& path, int n_bands,
                                     double bandwidth);

struct RunConfig {
  double power = 0.0;
  double fronthaul = 0.0;
  double bandwidth = 0.0;
  double gain = 1.0;           // constant-filter gain, used when filter_path empty
  std::string filter_path;
  int bands = 32;
  int grid = 512;              // flat grid resolution
  int dual_grid = 200;         // dual grid resolution per axis
};

// All run_* functions echo the inputs in the returned report and are
// deterministic for identical configs.
nlohmann::json run_flat(const RunConfig& cfg);
nlohmann::json run_spc(const RunConfig& cfg);
nlohmann::json run_freq(const RunConfig& cfg, freq::AllocationPlan* plan_out = nullptr);
nlohmann::json run_sweep_c(const RunConfig& cfg, double from, double to,
                           int steps);
nlohmann::json run_sweep_p(const RunConfig& cfg, double from, double to,
                           int steps);
nlohmann::json run_atlas(double gain, int samples = 200);

void write_alloc_csv(const std::string& path, const freq::AllocationPlan& plan,
                     double bandwidth);
void write_text(const std::string& path, const std::string& text);

}  // namespace diamond::io

#endif
