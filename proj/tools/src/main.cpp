#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bgshrink_app/commands.hpp"

namespace app = bgshrink::app;

namespace {

void emit(const app::CsvTable& table, const std::string& csv_path) {
  if (csv_path.empty()) {
    std::cout << table.str();
  } else {
    table.write(csv_path);
  }
}

app::ImageBuffer load_image(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--in is required");
  return app::read_pgm(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Bernoulli-Gaussian MAP/MMSE shrinkage toolkit"};
  cli.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string csv_path;
  std::string svg_path;

  // synth
  app::SyntheticConfig syn;
  std::vector<std::size_t> size{64, 64};
  std::string sigma_grid;
  bool paper_scale = false;
  auto* synth = cli.add_subcommand("synth", "Synthetic experiment: empirical vs theoretical MSE");
  synth->add_option("--size", size, "Rows and columns")->expected(2);
  synth->add_option("--levels", syn.levels, "Wavelet levels")->capture_default_str();
  synth->add_option("--p", syn.p, "Inclusion probability")->capture_default_str();
  synth->add_option("--sigma-x", syn.sigma_x, "Coefficient standard deviation")->capture_default_str();
  synth->add_option("--sigma-grid", sigma_grid, "Noise levels, lo:hi:steps or a comma list");
  synth->add_option("--trials", syn.trials, "Signals per noise level")->capture_default_str();
  synth->add_flag("--paper-scale", paper_scale, "128x128 signals, 1000 trials");

  // denoise / estimate-params
  app::DenoiseConfig den;
  std::string in_path;
  std::string out_path;
  std::string method = "mmse";
  bool noisy_input = false;
  auto* denoise = cli.add_subcommand("denoise", "Denoise a PGM image with estimated band priors");
  auto* estimate = cli.add_subcommand("estimate-params", "Per-band (p, sigma_i) estimates of a PGM image");
  for (auto* sub : {denoise, estimate}) {
    sub->add_option("--in", in_path, "Input PGM")->required();
    sub->add_option("--sigma", den.sigma, "Noise standard deviation (pixel units)")->capture_default_str();
    sub->add_option("--levels", den.levels, "Wavelet levels")->capture_default_str();
    sub->add_option("--lambda0", den.lambda0, "Sparsity penalty on the coarsest bands")->capture_default_str();
    sub->add_flag("--noisy-input", noisy_input, "Input is already noisy; do not add noise");
  }
  denoise->add_option("--out", out_path, "Output PGM");
  denoise->add_option("--method", method, "map or mmse")->check(CLI::IsMember({"map", "mmse"}))->capture_default_str();
  std::string noisy_out;
  denoise->add_option("--save-noisy", noisy_out, "Also write the noisy observation");

  // bounds
  std::string g_grid = "1e-4:1:61";
  auto* bounds = cli.add_subcommand("bounds", "Worst-case ratio table over a log-spaced G grid");
  bounds->add_option("--g-grid", g_grid, "G values, lo:hi:steps (log-spaced) or a comma list")->capture_default_str();

  // curve
  double cp = 0.1;
  double csx = 1.0;
  std::string curve_sigmas = "0.1,0.5,1";
  std::string beta_grid = "-4:4:401";
  auto* curve = cli.add_subcommand("curve", "Shrinkage curves psi_MAP and psi_MMSE");
  curve->add_option("--p", cp, "Inclusion probability")->capture_default_str();
  curve->add_option("--sigma-x", csx, "Coefficient standard deviation")->capture_default_str();
  curve->add_option("--sigma-grid", curve_sigmas, "Noise levels")->capture_default_str();
  curve->add_option("--beta-grid", beta_grid, "beta values, lo:hi:steps or a comma list")->capture_default_str();

  // validate
  app::ValidateConfig val;
  auto* validate = cli.add_subcommand("validate", "Certify closed forms against full enumeration");
  validate->add_option("--m", val.m, "Atoms (<= 12)")->capture_default_str();
  validate->add_option("--trials", val.trials, "Random instances")->capture_default_str();

  for (auto* sub : {synth, denoise, estimate, bounds, curve, validate}) {
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--csv", csv_path, "CSV output path (stdout when omitted)");
  }
  for (auto* sub : {synth, bounds, curve}) sub->add_option("--svg", svg_path, "SVG chart path");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (synth->parsed()) {
      if (paper_scale) {
        const auto keep = syn;
        syn = app::SyntheticConfig::paper_scale();
        syn.levels = keep.levels;
        syn.p = keep.p;
        syn.sigma_x = keep.sigma_x;
      } else {
        syn.size = {size[0], size[1]};
      }
      if (!sigma_grid.empty()) syn.sigmas = app::parse_grid(sigma_grid);
      syn.seed = seed;
      const auto rows = app::run_synthetic(syn);
      emit(app::synthetic_table(syn, rows), csv_path);
      if (!svg_path.empty()) app::write_text(svg_path, app::synthetic_svg(rows));
    } else if (denoise->parsed() || estimate->parsed()) {
      den.seed = seed;
      den.add_noise = !noisy_input;
      den.method = bgshrink::parse_estimator(method);
      const app::ImageBuffer input = load_image(in_path);
      if (estimate->parsed()) {
        const app::ImageBuffer observed = den.add_noise ? app::add_noise(input, den.sigma, seed) : input;
        emit(app::estimate_table(den, app::estimate_image_params(observed, den.sigma, den.levels,
                                                                 den.lambda0)),
             csv_path);
      } else {
        const app::DenoiseResult res = app::denoise_image(input, den);
        if (!out_path.empty()) app::write_pgm(out_path, res.output(den.method));
        if (!noisy_out.empty()) app::write_pgm(noisy_out, res.noisy);
        emit(app::denoise_table(den, res), csv_path);
        if (res.has_reference) {
          std::cerr << fmt::format("PSNR noisy {:.2f} dB, MAP {:.2f} dB, MMSE {:.2f} dB\n",
                                   res.psnr_noisy, res.psnr_map, res.psnr_mmse);
        }
      }
    } else if (bounds->parsed()) {
      const auto grid = app::parse_grid(g_grid, true);
      emit(app::bounds_table(grid), csv_path);
      if (!svg_path.empty()) app::write_text(svg_path, app::bounds_svg(grid));
    } else if (curve->parsed()) {
      const auto sigmas = app::parse_grid(curve_sigmas);
      const auto betas = app::parse_grid(beta_grid);
      emit(app::curve_table(cp, csx, sigmas, betas), csv_path);
      if (!svg_path.empty()) app::write_text(svg_path, app::curve_svg(cp, csx, sigmas, betas));
    } else if (validate->parsed()) {
      val.seed = seed;
      const app::ValidateReport rep = app::validate(val);
      emit(app::validate_table(val, rep), csv_path);
      for (const auto& msg : rep.messages) std::cerr << msg << '\n';
      std::cerr << (rep.passed() ? "validate: PASS\n" : "validate: FAIL\n");
      return rep.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
