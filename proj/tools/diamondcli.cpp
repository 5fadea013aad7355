#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "diamond/io.hpp"

// CLI front end for the diamond relay channel solver.
// Exit codes: 0 success, 2 configuration error, 3 solver error.

namespace {

void emit(const nlohmann::json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    diamond::io::write_text(out_path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian primitive diamond relay channel solver"};
  app.require_subcommand(1);

  diamond::io::RunConfig cfg;
  std::string out_path, alloc_path;
  double from = 0.0, to = 0.0;
  int steps = 26;
  double atlas_gain = 1.0;

  const auto add_common = [&](CLI::App* sub, bool needs_c) {
    sub->add_option("--power", cfg.power, "Total power budget")->required();
    auto* c = sub->add_option("--fronthaul", cfg.fronthaul,
                              "Per-relay fronthaul budget");
    if (needs_c) c->required();
    sub->add_option("--out", out_path, "Write JSON report here");
  };

  auto* sub_flat = app.add_subcommand("flat", "Flat-channel time sharing");
  add_common(sub_flat, true);
  sub_flat->add_option("--grid", cfg.grid, "Grid resolution")
      ->check(CLI::Range(2, 100000));

  auto* sub_spc = app.add_subcommand("spc", "Superposition power split");
  add_common(sub_spc, true);

  auto* sub_freq =
      app.add_subcommand("freq", "Frequency-selective allocation");
  add_common(sub_freq, true);
  sub_freq->add_option("--bandwidth", cfg.bandwidth, "Bandwidth in Hz")
      ->required();
  sub_freq->add_option("--filter", cfg.filter_path, "Filter CSV path");
  sub_freq->add_option("--gain", cfg.gain, "Constant filter gain");
  sub_freq->add_option("--bands", cfg.bands, "Number of frequency bands")
      ->check(CLI::Range(1, 100000));
  sub_freq->add_option("--grid", cfg.dual_grid, "Dual grid resolution")
      ->check(CLI::Range(2, 100000));
  sub_freq->add_option("--alloc", alloc_path, "Write allocation CSV here");

  auto* sub_sc = app.add_subcommand("sweep-c", "Sweep fronthaul, fixed power");
  sub_sc->add_option("--power", cfg.power, "Total power budget")->required();
  sub_sc->add_option("--from", from, "Sweep start")->required();
  sub_sc->add_option("--to", to, "Sweep end")->required();
  sub_sc->add_option("--steps", steps, "Sweep points")
      ->check(CLI::Range(1, 100000));
  sub_sc->add_option("--grid", cfg.grid, "Grid resolution")
      ->check(CLI::Range(2, 100000));
  sub_sc->add_option("--out", out_path, "Write JSON report here");

  auto* sub_sp = app.add_subcommand("sweep-p", "Sweep power, fixed fronthaul");
  sub_sp->add_option("--fronthaul", cfg.fronthaul, "Fronthaul budget")
      ->required();
  sub_sp->add_option("--from", from, "Sweep start")->required();
  sub_sp->add_option("--to", to, "Sweep end")->required();
  sub_sp->add_option("--steps", steps, "Sweep points")
      ->check(CLI::Range(1, 100000));
  sub_sp->add_option("--grid", cfg.grid, "Grid resolution")
      ->check(CLI::Range(2, 100000));
  sub_sp->add_option("--out", out_path, "Write JSON report here");

  auto* sub_atlas = app.add_subcommand("atlas", "Dump region border lines");
  sub_atlas->add_option("--gain", atlas_gain, "Filter gain");
  sub_atlas->add_option("--out", out_path, "Write JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (cfg.power < 0.0 || cfg.fronthaul < 0.0) {
      std::fputs("error: power and fronthaul must be nonnegative\n", stderr);
      return 2;
    }
    if (sub_flat->parsed()) {
      emit(diamond::io::run_flat(cfg), out_path);
    } else if (sub_spc->parsed()) {
      emit(diamond::io::run_spc(cfg), out_path);
    } else if (sub_freq->parsed()) {
      if (!(cfg.bandwidth > 0.0)) {
        std::fputs("error: bandwidth must be positive\n", stderr);
        return 2;
      }
      diamond::freq::AllocationPlan plan;
      const nlohmann::json rep = diamond::io::run_freq(cfg, &plan);
      emit(rep, out_path);
      if (!alloc_path.empty()) {
        diamond::io::write_alloc_csv(alloc_path, plan, cfg.bandwidth);
      }
    } else if (sub_sc->parsed()) {
      emit(diamond::io::run_sweep_c(cfg, from, to, steps), out_path);
    } else if (sub_sp->parsed()) {
      emit(diamond::io::run_sweep_p(cfg, from, to, steps), out_path);
    } else if (sub_atlas->parsed()) {
      emit(diamond::io::run_atlas(atlas_gain), out_path);
    }
  } catch (const diamond::io::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
  return 0;
}
