#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "equisym/adaptive.hpp"
#include "equisym/symmetry.hpp"
#include "helpers.hpp"

using namespace equisym;

namespace {

const RegularizerSpec& tv_reg() {
  static const RegularizerSpec reg = RegularizerSpec::make(RegName::tv);
  return reg;
}

Image masked_gaussian(int m, double sx, double sy, double phi) {
  const GridSpec grid(1.0 / m, m);
  return sample_function(FunctionSpec::gaussian(sx, sy, phi, 0.42), grid);
}

// Independent grid-search oracle over (alpha, log-ratio) at unit determinant.
std::pair<double, double> grid_search_oracle(const Image& img, const RegularizerSpec& reg, int T) {
  double best_obj = std::numeric_limits<double>::infinity();
  double best_alpha = 0.0, best_ratio = 1.0;
  for (int ia = 0; ia < 50; ++ia) {
    const double alpha = M_PI * ia / 50.0;
    for (int ir = 0; ir < 50; ++ir) {
      const double ratio = std::exp(std::log(0.25) + ir * (std::log(4.0) - std::log(0.25)) / 49.0);
      const double s = std::sqrt(ratio);
      const double obj = variance_objective(img, AffineParams(alpha, s, 1.0 / s), reg, T);
      if (obj < best_obj) {
        best_obj = obj;
        best_alpha = alpha;
        best_ratio = ratio;
      }
    }
  }
  return {best_alpha, best_ratio};
}

double angle_dist_mod_pi(double a, double b) {
  double d = std::fmod(std::abs(a - b), M_PI);
  return std::min(d, M_PI - d);
}

}  // namespace

TEST_CASE("config validation") {
  FitConfig bad;
  bad.angles = 1;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = FitConfig{};
  bad.scale_min = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = FitConfig{};
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  FitConfig ok;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("constant image is an identity fixed point") {
  const GridSpec grid(1.0 / 48, 48);
  const Image ones = sample_function(FunctionSpec::constant(0.7), grid);
  CHECK(variance_objective(ones, AffineParams(), tv_reg(), 8) <= 1e-20);
  FitConfig config;
  config.angles = 8;
  const FitResult r = fit_w(ones, tv_reg(), config);
  CHECK(r.w.alpha == 0.0);
  CHECK(r.w.sx == 1.0);
  CHECK(r.w.sy == 1.0);
  CHECK(r.objective_final <= 1e-14);
  CHECK(r.iterations == 1);
  CHECK(r.converged);
}

TEST_CASE("matched conjugation lowers the variance objective") {
  const Image aniso = masked_gaussian(96, 0.2, 0.1, 0.0);
  const double at_identity = variance_objective(aniso, AffineParams(), tv_reg(), 16);
  const double matched =
      variance_objective(aniso, AffineParams(0.0, std::sqrt(2.0), 1.0 / std::sqrt(2.0)), tv_reg(), 16);
  CHECK(matched < at_identity);
}

TEST_CASE("fit recovers the anisotropy ratio of an axis-aligned gaussian") {
  const Image aniso = masked_gaussian(96, 0.2, 0.1, 0.0);
  FitConfig config;
  config.angles = 16;
  config.max_iters = 120;
  const FitResult r = fit_w(aniso, tv_reg(), config);
  CHECK(r.objective_final < r.objective_initial);
  double ratio = r.w.sx / r.w.sy;
  double alpha = r.w.alpha;
  if (ratio < 1.0) {  // swap symmetry (alpha + pi/2, inverted ratio)
    ratio = 1.0 / ratio;
    alpha += M_PI / 2.0;
  }
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);

  // agree with the independent grid-search oracle
  const auto [oracle_alpha, oracle_ratio] = grid_search_oracle(aniso, tv_reg(), 16);
  double oa = oracle_alpha, orr = oracle_ratio;
  if (orr < 1.0) {
    orr = 1.0 / orr;
    oa += M_PI / 2.0;
  }
  CHECK(std::abs(ratio - orr) / orr <= 0.25);
  CHECK(angle_dist_mod_pi(alpha, oa) <= M_PI / 12.0);
}

TEST_CASE("fit recovers the orientation of a rotated gaussian") {
  const double phi = M_PI / 6.0;
  const Image rotated = masked_gaussian(96, 0.2, 0.1, phi);
  FitConfig config;
  config.angles = 16;
  config.max_iters = 120;
  const FitResult r = fit_w(rotated, tv_reg(), config);
  double alpha = r.w.alpha;
  double ratio = r.w.sx / r.w.sy;
  if (ratio < 1.0) {
    ratio = 1.0 / ratio;
    alpha += M_PI / 2.0;
  }
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
  // our conjugator convention recovers the gaussian's rotation as -phi mod pi
  const auto [oracle_alpha, oracle_ratio] = grid_search_oracle(rotated, tv_reg(), 16);
  double oa = oracle_alpha;
  if (oracle_ratio < 1.0) oa += M_PI / 2.0;
  CHECK(angle_dist_mod_pi(alpha, oa) <= M_PI / 12.0);
  CHECK(angle_dist_mod_pi(alpha, -phi) <= M_PI / 12.0);
}

TEST_CASE("descent trace is monotone and deterministic") {
  const auto corpus = testing::make_corpus(1, 64);
  FitConfig config;
  config.angles = 8;
  config.max_iters = 25;
  const FitResult a = fit_w(corpus[0], tv_reg(), config);
  for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] <= a.trace[i - 1]);
  CHECK(a.objective_final <= a.objective_initial);
  CHECK(a.iterations <= config.max_iters);

  const FitResult b = fit_w(corpus[0], tv_reg(), config);
  CHECK(a.w.alpha == b.w.alpha);
  CHECK(a.w.sx == b.w.sx);
  CHECK(a.w.sy == b.w.sy);
  CHECK(a.objective_final == b.objective_final);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("fit respects scale bounds") {
  const Image aniso = masked_gaussian(64, 0.24, 0.06, 0.0);  // 4:1, beyond the bounds
  FitConfig config;
  config.angles = 8;
  config.max_iters = 60;
  const FitResult r = fit_w(aniso, tv_reg(), config);
  CHECK(r.w.sx >= config.scale_min - 1e-12);
  CHECK(r.w.sx <= config.scale_max + 1e-12);
  CHECK(r.w.sy >= config.scale_min - 1e-12);
  CHECK(r.w.sy <= config.scale_max + 1e-12);
}

TEST_CASE("fit_corpus maps images independently in input order") {
  const auto corpus = testing::make_corpus(4, 64);
  FitConfig config;
  config.angles = 8;
  config.max_iters = 10;
  const auto all = fit_corpus(corpus, tv_reg(), config, 4);
  CHECK(all.size() == corpus.size());
  // single-image corpus equals a lone fit_w call
  std::vector<Image> lone = {corpus[2]};
  const auto single = fit_corpus(lone, tv_reg(), config, 1);
  const FitResult direct = fit_w(corpus[2], tv_reg(), config);
  CHECK(single[0].w.alpha == direct.w.alpha);
  CHECK(single[0].objective_final == direct.objective_final);
  // same results at any parallelism degree
  const auto serial = fit_corpus(corpus, tv_reg(), config, 1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].w.alpha == serial[i].w.alpha);
    CHECK(all[i].objective_final == serial[i].objective_final);
  }
  std::vector<Image> empty;
  CHECK_THROWS_AS(fit_corpus(empty, tv_reg(), config), std::domain_error);
}

TEST_CASE("corpus of constant images fits to identity everywhere") {
  const GridSpec grid(1.0 / 48, 48);
  std::vector<Image> corpus;
  for (double c : {0.1, 0.6}) corpus.push_back(sample_function(FunctionSpec::constant(c), grid));
  FitConfig config;
  config.angles = 8;
  const auto fits = fit_corpus(corpus, tv_reg(), config);
  for (const auto& f : fits) {
    CHECK(f.w.is_identity());
    CHECK(f.converged);
  }
}

TEST_CASE("adaptive epsilon does not exceed dataset-strict on the test corpus") {
  const auto corpus = testing::make_corpus(8, 64);
  FitConfig config;
  config.angles = 12;
  config.max_iters = 20;
  config.tol = 1e-7;
  const auto fits = fit_corpus(corpus, tv_reg(), config, 2);
  const auto families = families_from_fits(fits, 12);
  const SymmetryReport strict = run_scenario(corpus, tv_reg(), Scenario::dataset_strict, 12, {}, 2);
  const SymmetryReport adaptive =
      run_scenario(corpus, tv_reg(), Scenario::dataset_adaptive, 12, families, 2);
  CHECK(adaptive.epsilon <= strict.epsilon);
}
