#include <doctest.h>

#include <cmath>

#include "bgshrink/bgshrink.hpp"

using namespace bgshrink;

namespace {

struct Instance {
  ModelParams params;
  Coeffs beta;
};

Instance random_instance(std::uint64_t seed, std::size_t m) {
  Rng rng(SeedKey{seed}, Stream::test);
  std::vector<double> p(m);
  std::vector<double> sx(m);
  for (std::size_t k = 0; k < m; ++k) {
    p[k] = 0.02 + 0.96 * rng.uniform();
    sx[k] = std::exp(-1.5 + 3 * rng.uniform());
  }
  const double sigma = std::exp(-1.5 + 2 * rng.uniform());
  ModelParams params(p, sx, sigma);
  Coeffs beta(m);
  for (std::size_t k = 0; k < m; ++k) beta[k] = rng.normal(4.0 * sigma);
  return {params, beta};
}

}  // namespace

TEST_CASE("posterior inclusion") {
  const ModelParams params = ModelParams::homoscedastic(3, 0.1, 1.0, 1.0);
  const auto g = posterior_inclusion(Coeffs(std::vector<double>{0.0, 50.0, 1e4}), params);
  const double gf = g_factor(0.1, 1.0, 1.0);
  CHECK(g[0] == doctest::Approx(gf / (1 + gf)).epsilon(1e-14));
  CHECK(g[1] > 1 - 1e-12);
  CHECK(g[2] == 1.0);
  for (double v : g) CHECK(v > 0.0);
}

TEST_CASE("oracle risk") {
  const ModelParams params = ModelParams::homoscedastic(8, 0.3, 1.0, 1.0);
  CHECK(oracle_risk(SupportMask(8), params) == 0.0);
  SupportMask s(8);
  for (std::size_t k : {0, 2, 3, 5, 7}) s.set(k, true);
  CHECK(oracle_risk(s, params) == doctest::Approx(2.5).epsilon(1e-15));

  const Dictionary d = Dictionary::random_orthogonal(8, 3);
  const ModelParams hetero({0.3, 0.2, 0.5, 0.1, 0.4, 0.3, 0.6, 0.2}, {1, 2, 0.5, 3, 1, 1, 0.2, 4}, 0.7);
  const std::vector<double> y(8, 0.3);
  const double tr = exact::support_terms(y, exact::DenseDictionary::from(d), hetero, s).trace_inv_q;
  CHECK(oracle_risk(s, hetero) == doctest::Approx(tr).epsilon(1e-12));
}

TEST_CASE("closed-form risks at zero input") {
  const ModelParams params = ModelParams::homoscedastic(5, 0.2, 1.0, 0.5);
  const double c2 = 0.8;
  const double gf = g_factor(0.2, 1.0, 0.5);
  const double expected = 5 * c2 * 0.25 * gf / (1 + gf);
  CHECK(mmse_risk(Coeffs(5), params) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected_support_size(Coeffs(5), params) == doctest::Approx(5 * gf / (1 + gf)).epsilon(1e-14));
  CHECK(expected_oracle_risk(Coeffs(5), params) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("MAP excess, Pythagorean identity and ordering") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto [params, beta] = random_instance(seed, 1 + seed % 17);
    const Estimate mmse = mmse_shrink(beta, params);
    const Estimate map = map_shrink(beta, params);
    const double rm = mmse_risk(beta, params);
    const double rp = map_risk(beta, params, *map.support);
    const double ro = expected_oracle_risk(beta, params);
    const double dist = squared_distance(map.xhat.view(), mmse.xhat.view());
    CHECK(rp - rm == doctest::Approx(dist).epsilon(1e-9).scale(std::max(1.0, rp)));
    CHECK(ro <= rm * (1 + 1e-12));
    CHECK(rm <= rp * (1 + 1e-12));
    CHECK(estimate_risk(beta, params, mmse.xhat) == doctest::Approx(rm).epsilon(1e-12));
    CHECK(estimate_risk(beta, params, map.xhat) == doctest::Approx(rp).epsilon(1e-12));

    Coeffs other(beta.size());
    Rng rng(SeedKey{seed, 1}, Stream::test);
    for (double& v : other.values) v = rng.normal(2.0);
    CHECK(estimate_risk(beta, params, other) ==
          doctest::Approx(squared_distance(other.view(), mmse.xhat.view()) + rm).epsilon(1e-12));
  }
}

TEST_CASE("expected support size is monotone in |beta|") {
  const ModelParams params = ModelParams::homoscedastic(1, 0.1, 1.0, 1.0);
  double prev = -1.0;
  for (double b = 0.0; b < 10.0; b += 0.25) {
    const double e = expected_support_size(Coeffs(std::vector<double>{-b}), params);
    CHECK(e >= prev);
    prev = e;
  }
}

TEST_CASE("MAP and MMSE risks align as p -> 0") {
  const ModelParams params = ModelParams::homoscedastic(4, 1e-10, 1.0, 1.0);
  const Coeffs beta(std::vector<double>{0.5, -1.0, 2.0, 0.1});
  const double rm = mmse_risk(beta, params);
  const double rp = map_risk(beta, params, *map_shrink(beta, params).support);
  CHECK(rp / rm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("risk report per band") {
  const Dictionary d = Dictionary::db5_2d(16, 16, 2);
  const BandLayout layout = d.band_layout();
  const ModelParams params = ModelParams::homoscedastic(256, 0.2, 1.0, 0.5);
  Rng rng(SeedKey{4}, Stream::test);
  Coeffs beta(256);
  for (double& v : beta.values) v = rng.normal();
  const RiskReport r = risk_report(beta, params, &layout);
  REQUIRE(r.per_band.size() == layout.band_count());
  double sum_mmse = 0.0;
  double sum_map = 0.0;
  for (const BandRisk& b : r.per_band) {
    sum_mmse += b.mse_mmse;
    sum_map += b.mse_map;
  }
  CHECK(sum_mmse == doctest::Approx(r.mse_mmse).epsilon(1e-12));
  CHECK(sum_map == doctest::Approx(r.mse_map).epsilon(1e-12));
  CHECK(r.mse_oracle <= r.mse_mmse);
  CHECK(r.mse_mmse <= r.mse_map);
  CHECK(risk_report(beta, params).per_band.empty());
}

TEST_CASE("posterior Monte-Carlo verifier") {
  const auto [params, beta] = random_instance(77, 12);
  const Estimate mmse = mmse_shrink(beta, params);
  const MonteCarloRisk mc = posterior_mc_risk(beta, params, mmse.xhat, 100000, SeedKey{5});
  CHECK(mc.samples == 100000);
  CHECK(std::abs(mc.mean - mmse_risk(beta, params)) <= 3 * mc.std_error);

  SUBCASE("zero estimate") {
    const auto g = posterior_inclusion(beta, params);
    double expected = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const double c2 = params.c2(k);
      expected += g[k] * (c2 * params.sigma() * params.sigma() + c2 * c2 * beta[k] * beta[k]);
    }
    CHECK(estimate_risk(beta, params, Coeffs(beta.size())) == doctest::Approx(expected).epsilon(1e-12));
    const MonteCarloRisk z = posterior_mc_risk(beta, params, Coeffs(beta.size()), 100000, SeedKey{6});
    CHECK(std::abs(z.mean - expected) <= 3 * z.std_error);
  }
  SUBCASE("MMSE minimizes the Monte-Carlo risk among candidates") {
    const Estimate map = map_shrink(beta, params);
    SupportMask wrong(beta.size());
    for (std::size_t k = 0; k < beta.size(); k += 2) wrong.set(k, true);
    const Coeffs wrong_oracle = oracle_estimate(beta, wrong, params).xhat;
    const SeedKey key{7};
    const double base = posterior_mc_risk(beta, params, mmse.xhat, 100000, key).mean;
    for (const Coeffs* c : {&map.xhat, &wrong_oracle}) {
      CHECK(base <= posterior_mc_risk(beta, params, *c, 100000, key).mean);
    }
    CHECK(base <= posterior_mc_risk(beta, params, Coeffs(beta.size()), 100000, key).mean);
  }
  SUBCASE("standard error shrinks like 1/sqrt(samples)") {
    const MonteCarloRisk a = posterior_mc_risk(beta, params, mmse.xhat, 4000, SeedKey{9});
    const MonteCarloRisk b = posterior_mc_risk(beta, params, mmse.xhat, 64000, SeedKey{9});
    CHECK(a.std_error / b.std_error == doctest::Approx(4.0).epsilon(0.15));
  }
  SUBCASE("deterministic") {
    const MonteCarloRisk a = posterior_mc_risk(beta, params, mmse.xhat, 5000, SeedKey{1, 2});
    const MonteCarloRisk b = posterior_mc_risk(beta, params, mmse.xhat, 5000, SeedKey{1, 2});
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
}

TEST_CASE("coefficient-domain error equals signal-domain error") {
  const Dictionary d = Dictionary::db5_2d(32, 32, 3);
  const ModelParams params = ModelParams::homoscedastic(1024, 0.1, 1.0, 0.5);
  const SupportMask s = sample_support(params, 3);
  const Coeffs x = sample_coefficients(params, s, 3);
  const Signal y = synthesize_observation(d, x, 0.5, 3);
  const Estimate e = mmse_shrink(d.analyze(y), params);
  const double coeff_err = squared_distance(e.xhat.view(), x.view());
  const double signal_err = squared_distance(d.synthesize(e.xhat).view(), d.synthesize(x).view());
  CHECK(coeff_err == doctest::Approx(signal_err).epsilon(1e-10));
}
