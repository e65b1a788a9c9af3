#include "bgshrink_app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace bgshrink::app {

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_rel_err(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_err(a[i], b[i]));
  return worst;
}

std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

double parse_double(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid: cannot parse '" + str + "'");
  }
  if (used != str.size()) throw std::invalid_argument("grid: cannot parse '" + str + "'");
  return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text, bool log_spaced) {
  std::vector<std::string_view> parts;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  std::vector<double> out;
  if (sep == ',') {
    for (auto p : parts) out.push_back(parse_double(p));
  } else {
    if (parts.size() != 3) throw std::invalid_argument("grid: expected lo:hi:steps");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double steps_d = parse_double(parts[2]);
    if (steps_d < 1 || steps_d != std::floor(steps_d)) {
      throw std::invalid_argument("grid: steps must be a positive integer");
    }
    const auto steps = static_cast<std::size_t>(steps_d);
    if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("grid: log grid needs lo, hi > 0");
    for (std::size_t i = 0; i < steps; ++i) {
      const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
      out.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                               : lo + t * (hi - lo));
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite value");
  }
  return out;
}

// ---- synth -----------------------------------------------------------------

SyntheticConfig SyntheticConfig::paper_scale() {
  SyntheticConfig c;
  c.size = {128, 128};
  c.trials = 1000;
  return c;
}

void SyntheticConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("synth: trials must be >= 1");
  if (sigmas.empty()) throw std::invalid_argument("synth: empty sigma grid");
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("synth: sigma values must be > 0");
  }
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("synth: p must lie in (0, 1)");
  if (!(sigma_x > 0.0)) throw std::invalid_argument("synth: sigma_x must be > 0");
  wavelet_band_layout(size.rows, size.cols, levels);
}

std::vector<SyntheticRow> run_synthetic(const SyntheticConfig& config) {
  config.validate();
  const Dictionary dict = Dictionary::db5_2d(config.size.rows, config.size.cols, config.levels);
  const std::size_t n = dict.length();
  const std::size_t ns = config.sigmas.size();
  const std::size_t tasks = ns * config.trials;
  std::vector<SyntheticRow> per_task(tasks);
  const std::vector<std::size_t> ids = iota_n(tasks);
  std::for_each(std::execution::par, ids.begin(), ids.end(), [&](std::size_t task) {
    const std::size_t si = task / config.trials;
    const std::size_t t = task % config.trials;
    const double sigma = config.sigmas[si];
    const ModelParams params = ModelParams::homoscedastic(n, config.p, config.sigma_x, sigma);
    // The clean signal depends on the trial only, so every sigma sees the same signals.
    const SeedKey signal_key{config.seed, t};
    const SeedKey noise_key{config.seed, (static_cast<std::uint64_t>(si) << 32) | t};
    const SupportMask support = sample_support(params, signal_key);
    const Coeffs x = sample_coefficients(params, support, signal_key);
    const Signal y = synthesize_observation(dict, x, sigma, noise_key);
    const Coeffs beta = dict.analyze(y);

    const Estimate oracle = oracle_estimate(beta, support, params);
    const Estimate map = map_shrink(beta, params);
    const Estimate mmse = mmse_shrink(beta, params);
    const double scale = 1.0 / (static_cast<double>(n) * sigma * sigma);
    SyntheticRow r;
    r.sigma = sigma;
    r.empirical_oracle = squared_distance(oracle.xhat.view(), x.view()) * scale;
    r.empirical_map = squared_distance(map.xhat.view(), x.view()) * scale;
    r.empirical_mmse = squared_distance(mmse.xhat.view(), x.view()) * scale;
    r.theoretical_oracle = oracle_risk(support, params) * scale;
    r.theoretical_map = map_risk(beta, params, *map.support) * scale;
    r.theoretical_mmse = mmse_risk(beta, params) * scale;
    r.expected_oracle = expected_oracle_risk(beta, params) * scale;
    per_task[task] = r;
  });

  std::vector<SyntheticRow> rows(ns);
  const double inv = 1.0 / static_cast<double>(config.trials);
  for (std::size_t si = 0; si < ns; ++si) {
    SyntheticRow& acc = rows[si];
    acc.sigma = config.sigmas[si];
    for (std::size_t t = 0; t < config.trials; ++t) {
      const SyntheticRow& r = per_task[si * config.trials + t];
      acc.empirical_oracle += r.empirical_oracle * inv;
      acc.empirical_map += r.empirical_map * inv;
      acc.empirical_mmse += r.empirical_mmse * inv;
      acc.theoretical_oracle += r.theoretical_oracle * inv;
      acc.theoretical_map += r.theoretical_map * inv;
      acc.theoretical_mmse += r.theoretical_mmse * inv;
      acc.expected_oracle += r.expected_oracle * inv;
    }
  }
  return rows;
}

CsvTable synthetic_table(const SyntheticConfig& config, const std::vector<SyntheticRow>& rows) {
  CsvTable t("bgshrink-synth/1",
             {"sigma", "empirical_oracle", "theoretical_oracle", "empirical_mmse",
              "theoretical_mmse", "empirical_map", "theoretical_map", "expected_oracle"});
  t.note(fmt::format("size: {}x{}, levels: {}, p: {}, sigma_x: {}, trials: {}, seed: {}",
                     config.size.rows, config.size.cols, config.levels, fmt_num(config.p),
                     fmt_num(config.sigma_x), config.trials, config.seed));
  t.note("relative mse: mean over trials of squared coefficient error divided by n*sigma^2");
  for (const SyntheticRow& r : rows) {
    t.add_row({fmt_num(r.sigma), fmt_num(r.empirical_oracle), fmt_num(r.theoretical_oracle),
               fmt_num(r.empirical_mmse), fmt_num(r.theoretical_mmse), fmt_num(r.empirical_map),
               fmt_num(r.theoretical_map), fmt_num(r.expected_oracle)});
  }
  return t;
}

std::string synthetic_svg(const std::vector<SyntheticRow>& rows) {
  std::vector<double> xs;
  for (const auto& r : rows) xs.push_back(r.sigma);
  auto col = [&](double SyntheticRow::*f) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.*f);
    return v;
  };
  std::vector<Series> s{
      {"Empirical oracle", xs, col(&SyntheticRow::empirical_oracle), false},
      {"Theoretical oracle", xs, col(&SyntheticRow::theoretical_oracle), true},
      {"Empirical MMSE", xs, col(&SyntheticRow::empirical_mmse), false},
      {"Theoretical MMSE", xs, col(&SyntheticRow::theoretical_mmse), true},
      {"Empirical MAP", xs, col(&SyntheticRow::empirical_map), false},
      {"Theoretical MAP", xs, col(&SyntheticRow::theoretical_map), true},
  };
  return svg_line_chart({"Relative denoising error", "sigma", "relative MSE"}, s);
}

// ---- denoise -----------------------------------------------------------------

const ImageBuffer& DenoiseResult::output(Estimator method) const {
  switch (method) {
    case Estimator::map: return map_image;
    case Estimator::mmse: return mmse_image;
    case Estimator::oracle: break;
  }
  throw std::invalid_argument("denoise: method must be map or mmse");
}

ImageBuffer add_noise(const ImageBuffer& clean, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
  ImageBuffer noisy = clean;
  Rng rng(SeedKey{seed}, Stream::noise);
  for (double& v : noisy.pixels) v += rng.normal(sigma);
  return noisy;
}

namespace {

void check_image(const ImageBuffer& img, int levels) {
  if (img.pixels.size() != img.width * img.height) {
    throw std::invalid_argument("image: pixel count does not match dimensions");
  }
  const std::size_t block = std::size_t{1} << std::max(levels, 0);
  if (levels < 1 || img.width % block != 0 || img.height % block != 0) {
    throw std::invalid_argument(fmt::format(
        "image: {}x{} is not divisible by 2^{} (levels)", img.width, img.height, levels));
  }
}

ImageBuffer to_image(const Signal& s, const ImageBuffer& like) {
  ImageBuffer out{like.width, like.height, {}};
  out.pixels.resize(s.size());
  std::transform(s.values.begin(), s.values.end(), out.pixels.begin(),
                 [](double v) { return static_cast<double>(quantize_pixel(v)); });
  return out;
}

}  // namespace

std::vector<BandEstimate> estimate_image_params(const ImageBuffer& noisy, double sigma, int levels,
                                                double lambda0) {
  check_image(noisy, levels);
  const Dictionary dict = Dictionary::db5_2d(noisy.height, noisy.width, levels);
  const Coeffs beta = dict.analyze(Signal(noisy.pixels, Shape{noisy.height, noisy.width}));
  const BandLayout layout = dict.band_layout();
  return estimate_bands(beta, layout, sigma, LambdaSchedule::by_level(layout, lambda0));
}

DenoiseResult denoise_image(const ImageBuffer& input, const DenoiseConfig& config) {
  if (!(config.sigma > 0.0)) throw std::invalid_argument("denoise: sigma must be > 0");
  check_image(input, config.levels);
  const Shape shape{input.height, input.width};
  const Dictionary dict = Dictionary::db5_2d(shape.rows, shape.cols, config.levels);
  const BandLayout layout = dict.band_layout();

  DenoiseResult res;
  res.has_reference = config.add_noise;
  res.noisy = config.add_noise ? add_noise(input, config.sigma, config.seed) : input;
  const Coeffs beta = dict.analyze(Signal(res.noisy.pixels, shape));
  res.bands = estimate_bands(beta, layout, config.sigma,
                             LambdaSchedule::by_level(layout, config.lambda0));
  const ModelParams params = to_model_params(res.bands, layout, config.sigma);
  const Estimate map = map_shrink(beta, params);
  const Estimate mmse = mmse_shrink(beta, params);
  res.map_image = to_image(dict.synthesize(map.xhat), input);
  res.mmse_image = to_image(dict.synthesize(mmse.xhat), input);

  if (res.has_reference) {
    res.psnr_noisy = psnr(input.pixels, res.noisy.pixels);
    res.psnr_map = psnr(input.pixels, res.map_image.pixels);
    res.psnr_mmse = psnr(input.pixels, res.mmse_image.pixels);
    const Coeffs clean = dict.analyze(Signal(input.pixels, shape));
    for (std::size_t b = 0; b < layout.band_count(); ++b) {
      BandError e;
      e.band = layout.bands[b].id;
      e.n = layout.bands[b].size();
      for (std::size_t k : layout.bands[b].indices) {
        e.noisy += (beta[k] - clean[k]) * (beta[k] - clean[k]);
        e.map += (map.xhat[k] - clean[k]) * (map.xhat[k] - clean[k]);
        e.mmse += (mmse.xhat[k] - clean[k]) * (mmse.xhat[k] - clean[k]);
      }
      const double inv = 1.0 / static_cast<double>(e.n);
      e.noisy *= inv;
      e.map *= inv;
      e.mmse *= inv;
      res.band_errors.push_back(e);
    }
  }
  return res;
}

CsvTable estimate_table(const DenoiseConfig& config, const std::vector<BandEstimate>& bands) {
  CsvTable t("bgshrink-estimate/1", {"band", "n", "k_star", "p_hat", "sigma_hat", "objective"});
  t.note(fmt::format("sigma: {}, levels: {}, lambda0: {}, seed: {}, noise_added: {}",
                     fmt_num(config.sigma), config.levels, fmt_num(config.lambda0), config.seed,
                     config.add_noise ? "yes" : "no"));
  for (const BandEstimate& b : bands) {
    t.add_row({b.band, std::to_string(b.n), std::to_string(b.k_star), fmt_num(b.p_hat),
               fmt_num(b.sigma_hat), fmt_num(b.objective)});
  }
  return t;
}

CsvTable denoise_table(const DenoiseConfig& config, const DenoiseResult& result) {
  CsvTable t("bgshrink-denoise/1", {"band", "n", "k_star", "p_hat", "sigma_hat", "mse_noisy",
                                    "mse_map", "mse_mmse"});
  t.note(fmt::format("sigma: {}, levels: {}, lambda0: {}, seed: {}, method: {}",
                     fmt_num(config.sigma), config.levels, fmt_num(config.lambda0), config.seed,
                     to_string(config.method)));
  if (result.has_reference) {
    t.note(fmt::format("psnr_noisy: {}, psnr_map: {}, psnr_mmse: {}", fmt_num(result.psnr_noisy),
                       fmt_num(result.psnr_map), fmt_num(result.psnr_mmse)));
  }
  for (std::size_t b = 0; b < result.bands.size(); ++b) {
    const BandEstimate& e = result.bands[b];
    std::vector<std::string> row{e.band, std::to_string(e.n), std::to_string(e.k_star),
                                 fmt_num(e.p_hat), fmt_num(e.sigma_hat)};
    if (result.has_reference) {
      const BandError& err = result.band_errors[b];
      row.insert(row.end(), {fmt_num(err.noisy), fmt_num(err.map), fmt_num(err.mmse)});
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    t.add_row(std::move(row));
  }
  return t;
}

// ---- bounds / curve ---------------------------------------------------------

namespace {

std::vector<double> with_switch_points(std::vector<double> grid) {
  for (double g : grid) {
    if (!(g > 0.0)) throw std::invalid_argument("bounds: G values must be > 0");
  }
  grid.push_back(mmse_switch_point());
  grid.push_back(map_switch_point());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

CsvTable bounds_table(std::vector<double> g_grid) {
  g_grid = with_switch_points(std::move(g_grid));
  CsvTable t("bgshrink-bounds/1",
             {"G_m", "s_star_mmse", "r_star_mmse", "bound_mmse", "regime_mmse", "s_star_map",
              "r_star_map", "bound_map", "regime_map"});
  t.note(fmt::format("switch points: mmse {}, map {}", fmt_num(mmse_switch_point()),
                     fmt_num(map_switch_point())));
  for (double g : g_grid) {
    const BoundReport mm = bound_report(Estimator::mmse, g);
    const BoundReport mp = bound_report(Estimator::map, g);
    t.add_row({fmt_num(g), fmt_num(mm.s_star), fmt_num(mm.r_star), fmt_num(mm.explicit_bound),
               std::string(to_string(mm.regime)), fmt_num(mp.s_star), fmt_num(mp.r_star),
               fmt_num(mp.explicit_bound), std::string(to_string(mp.regime))});
  }
  return t;
}

std::string bounds_svg(std::vector<double> g_grid) {
  g_grid = with_switch_points(std::move(g_grid));
  Series rm{"MMSE r*", g_grid, {}, false};
  Series bm{"MMSE explicit bound", g_grid, {}, true};
  Series rp{"MAP r*", g_grid, {}, false};
  for (double g : g_grid) {
    rm.y.push_back(worst_ratio_mmse(g).r_star);
    bm.y.push_back(explicit_bound_mmse(g).bound);
    rp.y.push_back(worst_ratio_map(g).r_star);
  }
  ChartSpec spec{"Worst-case ratio MSE2/MSE1", "G_m", "r*"};
  spec.log_x = true;
  return svg_line_chart(spec, {rm, bm, rp});
}

CsvTable curve_table(double p, double sigma_x, const std::vector<double>& sigmas,
                     const std::vector<double>& beta_grid) {
  CsvTable t("bgshrink-curve/1", {"sigma", "beta", "psi_oracle", "psi_map", "psi_mmse", "threshold"});
  t.note(fmt::format("p: {}, sigma_x: {}", fmt_num(p), fmt_num(sigma_x)));
  for (double s : sigmas) {
    const AtomPrior prior{p, sigma_x, s};
    const double thr = map_threshold(prior);
    const auto o = shrinkage_curve(Estimator::oracle, prior, beta_grid);
    const auto a = shrinkage_curve(Estimator::map, prior, beta_grid);
    const auto m = shrinkage_curve(Estimator::mmse, prior, beta_grid);
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
      t.add_row({fmt_num(s), fmt_num(beta_grid[i]), fmt_num(o[i].psi), fmt_num(a[i].psi),
                 fmt_num(m[i].psi), fmt_num(thr)});
    }
  }
  return t;
}

std::string curve_svg(double p, double sigma_x, const std::vector<double>& sigmas,
                      const std::vector<double>& beta_grid) {
  std::vector<Series> series;
  for (double s : sigmas) {
    const AtomPrior prior{p, sigma_x, s};
    Series mp{fmt::format("MAP sigma={}", fmt_num(s)), beta_grid, {}, true};
    Series mm{fmt::format("MMSE sigma={}", fmt_num(s)), beta_grid, {}, false};
    for (const auto& pt : shrinkage_curve(Estimator::map, prior, beta_grid)) mp.y.push_back(pt.psi);
    for (const auto& pt : shrinkage_curve(Estimator::mmse, prior, beta_grid)) mm.y.push_back(pt.psi);
    series.push_back(std::move(mm));
    series.push_back(std::move(mp));
  }
  return svg_line_chart({"Shrinkage curves", "beta", "psi(beta)"}, series);
}

// ---- validate -------------------------------------------------------------

double Certification::worst() const {
  return std::max({posterior, mmse, mmse_risk, map_risk, map_estimate, oracle_term, oracle_risk,
                   support_size});
}

Certification certify(const Dictionary& dict, const ModelParams& params, const Signal& y,
                      const SupportMask& probe_support) {
  const exact::DenseDictionary dense = exact::DenseDictionary::from(dict);
  const std::size_t m = dense.atoms();
  const Coeffs beta = dict.analyze(y);
  Certification c;

  const exact::SupportPosterior post = exact::support_posterior(y.view(), dense, params);
  const std::vector<double> g = posterior_inclusion(beta, params);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    double w = 1.0;
    for (std::size_t k = 0; k < m; ++k) w *= ((bits >> k) & 1U) ? g[k] : 1.0 - g[k];
    c.posterior = std::max(c.posterior, rel_err(w, post[bits]));
  }

  const Estimate mmse = mmse_shrink(beta, params);
  const Coeffs mmse_exact = exact::exact_mmse(y.view(), dense, params);
  c.mmse = max_rel_err(mmse.xhat.view(), mmse_exact.view());
  c.mmse_risk = rel_err(mmse_risk(beta, params), exact::exact_risk(y.view(), dense, params, mmse.xhat));

  const Estimate map = map_shrink(beta, params);
  c.map_risk = rel_err(map_risk(beta, params, *map.support),
                       exact::exact_risk(y.view(), dense, params, map.xhat));
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  c.map_checked = std::none_of(in.log_q.begin(), in.log_q.end(),
                               [](double lq) { return std::abs(lq) < 1e-8; });
  if (c.map_checked) {
    const exact::MapResult em = exact::exact_map(y.view(), dense, params);
    c.map_support_match = em.support == *map.support;
    c.map_estimate = max_rel_err(map.xhat.view(), em.xhat.view());
  }

  double expected_trace = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    expected_trace +=
        post[bits] *
        exact::support_terms(y.view(), dense, params, SupportMask::from_bits(bits, m)).trace_inv_q;
  }
  c.oracle_term = rel_err(expected_oracle_risk(beta, params), expected_trace);
  c.oracle_risk = rel_err(oracle_risk(probe_support, params),
                          exact::support_terms(y.view(), dense, params, probe_support).trace_inv_q);
  c.support_size = rel_err(expected_support_size(beta, params),
                           exact::exact_expected_support_size(y.view(), dense, params));
  return c;
}

ModelParams random_params(std::size_t m, std::uint64_t seed, std::uint64_t trial, bool homo) {
  Rng rng(SeedKey{seed, trial}, Stream::test);
  auto log_uniform = [&rng](double lo, double hi) {
    return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
  };
  const double sigma = log_uniform(0.2, 2.0);
  std::vector<double> p(m);
  std::vector<double> sx(m);
  for (std::size_t k = 0; k < m; ++k) {
    p[k] = (homo && k > 0) ? p[0] : 0.02 + 0.96 * rng.uniform();
    sx[k] = (homo && k > 0) ? sx[0] : log_uniform(0.2, 5.0);
  }
  return ModelParams(std::move(p), std::move(sx), sigma);
}

ValidateReport validate(const ValidateConfig& config) {
  if (config.m < 1 || config.m > 12) throw std::invalid_argument("validate: m must be in [1, 12]");
  if (config.trials < 1) throw std::invalid_argument("validate: trials must be >= 1");
  ValidateReport rep;
  rep.trials = config.trials;
  std::vector<Certification> results(config.trials);
  const std::vector<std::size_t> ids = iota_n(config.trials);
  std::for_each(std::execution::par, ids.begin(), ids.end(), [&](std::size_t t) {
    const Dictionary dict =
        Dictionary::random_orthogonal(config.m, Rng::mix(config.seed ^ Rng::mix(t + 1)));
    const ModelParams params = random_params(config.m, config.seed, t, t % 2 == 0);
    const SeedKey key{config.seed, t};
    const SupportMask support = sample_support(params, key);
    const Coeffs x = sample_coefficients(params, support, key);
    const Signal y = synthesize_observation(dict, x, params.sigma(), key);
    results[t] = certify(dict, params, y, support);
  });
  for (std::size_t t = 0; t < config.trials; ++t) {
    const Certification& c = results[t];
    Certification& w = rep.worst;
    w.posterior = std::max(w.posterior, c.posterior);
    w.mmse = std::max(w.mmse, c.mmse);
    w.mmse_risk = std::max(w.mmse_risk, c.mmse_risk);
    w.map_risk = std::max(w.map_risk, c.map_risk);
    w.map_estimate = std::max(w.map_estimate, c.map_estimate);
    w.oracle_term = std::max(w.oracle_term, c.oracle_term);
    w.oracle_risk = std::max(w.oracle_risk, c.oracle_risk);
    w.support_size = std::max(w.support_size, c.support_size);
    w.map_support_match = w.map_support_match && c.map_support_match;
    if (!c.map_checked) ++rep.map_skipped;
    if (c.worst() > config.tolerance || !c.map_support_match) {
      ++rep.failures;
      rep.messages.push_back(fmt::format("trial {}: max relative error {:.3e}{}", t, c.worst(),
                                         c.map_support_match ? "" : ", MAP support mismatch"));
    }
  }
  return rep;
}

CsvTable validate_table(const ValidateConfig& config, const ValidateReport& report) {
  CsvTable t("bgshrink-validate/1", {"quantity", "max_relative_error", "tolerance", "status"});
  t.note(fmt::format("m: {}, trials: {}, seed: {}, map_skipped_near_tie: {}", config.m,
                     config.trials, config.seed, report.map_skipped));
  const Certification& w = report.worst;
  auto row = [&](const char* name, double v) {
    t.add_row({name, fmt_num(v), fmt_num(config.tolerance), v <= config.tolerance ? "pass" : "FAIL"});
  };
  row("posterior", w.posterior);
  row("mmse_estimate", w.mmse);
  row("map_estimate", w.map_estimate);
  row("mmse_risk", w.mmse_risk);
  row("map_risk", w.map_risk);
  row("oracle_term", w.oracle_term);
  row("oracle_risk", w.oracle_risk);
  row("expected_support_size", w.support_size);
  t.add_row({"map_support", w.map_support_match ? "0" : "1", "0",
             w.map_support_match ? "pass" : "FAIL"});
  return t;
}

}  // namespace bgshrink::app
