// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "image_fixtures.hpp"
#include "oracles.hpp"
#include "redist/bench.hpp"
#include "redist/error.hpp"
#include "redist/image.hpp"
#include "redist/image_ops.hpp"
#include "redist/kde.hpp"
#include "redist/learned.hpp"
#include "redist/redistributor.hpp"
#include "redist/rng.hpp"
#include "redist/serialization.hpp"
#include "redist/stats.hpp"

namespace fs = std::filesystem;
using namespace redist;

namespace {

// FNV-1a of the 8-bit bytes of the seeded sigma = 0.05, alpha = 0.25 mosaic.
constexpr std::uint64_t mosaic_regression_hash = 0x786a0522dc4858a8ULL;

struct Result {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::vector<double> double_gamma(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::gamma_distribution<double> gamma(2.0, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> out(n);
  for (double& v : out) v = sign(engine) ? gamma(engine) : -gamma(engine);
  return out;
}

Result distributional_guarantee() {
  const auto start = std::chrono::steady_clock::now();
  auto fit_data = double_gamma(100000, 1);
  const LearnedDistribution source = fit_learned(fit_data);
  const Redistributor r(source, AnalyticDistribution::normal(0, 1));
  const auto y = r.transform(double_gamma(10000, 2));
  const double d = oracle::ks_brute(y, [](double q) { return oracle::normal_cdf(q); });
  const double bound = 0.0163 + 2.0 / 5000;
  const double elapsed = seconds_since(start);
  return {d < bound && elapsed < 5, fmt("KS=%.5f bound=%.5f time=%.2fs", d, bound, elapsed)};
}

Result sup_norm_bound() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (std::size_t n : {10u, 100u, 1000u}) {
    auto x = AnalyticDistribution::normal(0, 1).rvs(n, 100 + n);
    LearnedOptions options;
    options.bins = n;
    const auto l = fit_learned(x, options);
    std::sort(x.begin(), x.end());
    const double lo = x.front() - 0.5, hi = x.back() + 0.5;
    std::vector<double> grid(100000), cdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = lo + (hi - lo) * i / (grid.size() - 1.0);
    l.cdf(grid, cdf);
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::fabs(cdf[i] - oracle::step_ecdf(x, grid[i])));
    ok = ok && worst <= 2.0 / n;
    detail += fmt("n=%zu sup=%.3g<=%.3g ", n, worst, 2.0 / n);
  }
  const double elapsed = seconds_since(start);
  return {ok && elapsed < 2, detail + fmt("time=%.2fs", elapsed)};
}

Result consistency_variance() {
  const auto start = std::chrono::steady_clock::now();
  const auto report = consistency_experiment(AnalyticDistribution::uniform(0, 1),
                                             AnalyticDistribution::normal(0, 1), 2000, 4096, 0.5, 2024);
  const double target = 2 * M_PI / 4;
  const double elapsed = seconds_since(start);
  const bool ok = std::fabs(report.empirical_variance / target - 1) <= 0.15 &&
                  std::fabs(report.theoretical_variance - target) < 1e-12 && elapsed < 60;
  return {ok, fmt("empirical=%.4f theoretical=%.4f ratio=%.3f time=%.2fs", report.empirical_variance,
                  report.theoretical_variance, report.ratio, elapsed)};
}

Result lattice_semantics() {
  std::vector<double> x{1, 2, 3};
  LearnedOptions options;
  options.bins = 3;
  const auto l = fit_learned(x, options);
  options.a = 0.0;
  const auto bounded = fit_learned(x, options);
  const bool ok = l.cdf(1.0) == 0.25 && l.cdf(2.0) == 0.5 && l.cdf(3.0) == 0.75 && l.cdf(-100.0) == 0.25 &&
                  l.ppf(0.1) == 1.0 && bounded.cdf(0.0) == 0.0 && bounded.cdf(0.5) == 0.125;
  return {ok, fmt("cdf(1,2,3)=%g,%g,%g cdf(-100)=%g ppf(0.1)=%g a=0: cdf(0)=%g cdf(0.5)=%g", l.cdf(1.0),
                  l.cdf(2.0), l.cdf(3.0), l.cdf(-100.0), l.ppf(0.1), bounded.cdf(0.0), bounded.cdf(0.5))};
}

Result complexity_scaling() {
  const auto start = std::chrono::steady_clock::now();
  BenchOptions options;
  options.repetitions = 7;
  options.seed = 3;
  std::vector<double> times;
  for (std::size_t n : {1000000u, 2000000u, 4000000u})
    times.push_back(time_fit(BenchAlgorithm::learned, n, 5000, options).wall_time);
  const double r1 = times[1] / times[0], r2 = times[2] / times[1];
  const double shuffled = times[2];
  options.presorted = true;
  const double sorted = time_fit(BenchAlgorithm::learned, 4000000, 5000, options).wall_time;
  const double elapsed = seconds_since(start);
  const bool ok = r1 >= 1.3 && r1 <= 3.5 && r2 >= 1.3 && r2 <= 3.5 && sorted <= shuffled && elapsed < 60;
  return {ok, fmt("t=%.4f,%.4f,%.4fs ratios=%.2f,%.2f sorted=%.4fs shuffled=%.4fs time=%.1fs", times[0],
                  times[1], times[2], r1, r2, sorted, shuffled, elapsed)};
}

Result speed_gap() {
  BenchOptions options;
  options.seed = 4;
  const double learned = time_fit(BenchAlgorithm::learned, 10000, 1000, options).wall_time;
  const double kde = time_fit(BenchAlgorithm::kde, 10000, 1000, options).wall_time;
  return {kde / learned >= 50, fmt("learned=%.3gs kde=%.3gs speedup=%.0fx", learned, kde, kde / learned)};
}

Result kde_correctness() {
  const KdeModel single({0.0}, 1.0);
  double worst_single = 0;
  for (int i = 0; i < 100; ++i) {
    const double q = -6 + 12 * (i + 0.5) / 100;
    worst_single = std::max(worst_single, std::fabs(single.cdf(q, CdfMethod::precise) - oracle::normal_cdf(q)));
  }
  Rng rng(5);
  std::vector<double> x(2000);
  for (double& v : x) v = rng.uniform() < 0.4 ? -1.5 + 0.5 * rng.uniform() : rng.uniform();
  const KdeModel k = fit_kde(x);
  const auto [lo, hi] = k.empirical_support();
  double worst_fast = 0;
  for (int i = 0; i < 10000; ++i) {
    const double q = lo + (hi - lo) * (i + rng.uniform()) / 10000;
    worst_fast = std::max(worst_fast, std::fabs(k.cdf(q, CdfMethod::fast) - k.cdf(q, CdfMethod::precise)));
  }
  const double mass = oracle::trapezoid([&](double q) { return k.pdf(q); }, lo, hi, 20000);
  const bool ok = worst_single < 1e-10 && worst_fast < 1e-4 && k.grid_density() == 2048 &&
                  std::fabs(mass - 1) <= 1e-3;
  return {ok, fmt("single=%.2g fast-precise=%.2g integral=%.6f", worst_single, worst_fast, mass)};
}

Result image_round_trip() {
  const auto a = fixture::gradient_rgb(64, 64, 11);
  const auto b = fixture::gradient_rgb(48, 80, 12, 2.2);
  MatchOptions there;
  there.seed = 1;
  MatchOptions back;
  back.seed = 2;
  const auto aba = match_image(match_image(a, b, there), a, back);
  const auto original = to_bytes(a), restored = to_bytes(aba);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < original.size(); ++i) differing += original[i] != restored[i];
  return {differing == 0, fmt("differing bytes=%zu of %zu", differing, original.size())};
}

Result mosaic_cases() {
  const auto dir = fs::temp_directory_path() / "redist_acceptance";
  fs::create_directories(dir);
  const auto canvas = fixture::blocky_canvas(96, 128, 3, 21);
  const std::vector<ImageTensor> tiles{fixture::gradient_rgb(40, 40, 22), fixture::gradient_rgb(36, 60, 23),
                                       fixture::gradient_rgb(50, 32, 24)};
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };

  MosaicParams full;
  full.tile_px = 16;
  full.alpha = 1.0;
  write_image(dir / "canvas.png", canvas);
  write_image(dir / "alpha1.png", mosaic(canvas, tiles, full));
  const bool identical = slurp(dir / "canvas.png") == slurp(dir / "alpha1.png");

  MosaicParams flat;
  flat.tile_px = 16;
  flat.sigma = 0.0;
  flat.alpha = 0.0;
  const auto cells = mosaic(canvas, tiles, flat);
  double worst = 0;
  for (std::size_t r0 = 0; r0 < canvas.height(); r0 += 16)
    for (std::size_t c0 = 0; c0 < canvas.width(); c0 += 16)
      for (std::size_t ch = 0; ch < 3; ++ch) {
        double mean = 0;
        for (std::size_t r = r0; r < r0 + 16; ++r)
          for (std::size_t c = c0; c < c0 + 16; ++c) {
            mean += canvas.at(r, c, ch);
            worst = std::max(worst, std::fabs(cells.at(r, c, ch) - cells.at(r0, c0, ch)));
          }
        worst = std::max(worst, std::fabs(cells.at(r0, c0, ch) - mean / 256));
      }

  MosaicParams styled;
  styled.tile_px = 16;
  styled.sigma = 0.05;
  styled.alpha = 0.25;
  styled.seed = 7;
  const std::uint64_t hash = fixture::fnv1a(to_bytes(mosaic(canvas, tiles, styled)));
  const bool ok = identical && worst <= 1.0 / 255 && hash == mosaic_regression_hash;
  return {ok, fmt("alpha=1 identical=%s sigma=0 max deviation=%.2g styled hash=%016llx", identical ? "yes" : "no",
                  worst, static_cast<unsigned long long>(hash))};
}

Result property_suites() {
  constexpr int cases = 1000;
  Rng rng(6);
  int failures = 0;
  int total = 0;
  const auto check = [&](bool ok) {
    ++total;
    failures += !ok;
  };

  // cdf/ppf monotonicity and ppf(cdf(x)) on every family
  for (int trial = 0; trial < cases; ++trial) {
    std::vector<double> data = double_gamma(2 + rng.below(400), trial);
    LearnedOptions lo;
    lo.seed = trial;
    std::vector<Distribution> family{
        AnalyticDistribution::normal(rng.uniform() * 4 - 2, 0.1 + rng.uniform() * 3),
        AnalyticDistribution::uniform(-rng.uniform(), 1 + rng.uniform()),
        AnalyticDistribution::exponential(0.2 + rng.uniform() * 4), fit_learned(data, lo),
        KdeModel(std::vector<double>(data.begin(), data.begin() + std::min<std::size_t>(data.size(), 30)),
                 0.2 + rng.uniform(), 256)};
    bool monotone = true, inverse = true;
    for (const Distribution& d : family) {
      auto q = d.rvs(40, trial);
      std::sort(q.begin(), q.end());
      const auto c = d.cdf(q);
      for (std::size_t i = 1; i < c.size(); ++i) monotone = monotone && c[i] >= c[i - 1];
      std::vector<double> p(40);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = (i + rng.uniform()) / p.size();
      const auto v = d.ppf(p);
      for (std::size_t i = 1; i < v.size(); ++i) monotone = monotone && v[i] >= v[i - 1];
      if (d.kind() != "kde") {
        const auto back = d.ppf(c);
        double scale = 1;
        if (d.kind() == "learned") scale = d.support().second - d.support().first;
        for (std::size_t i = 0; i < q.size(); ++i)
          inverse = inverse && std::fabs(back[i] - q[i]) <= 1e-9 * std::max(scale, std::fabs(q[i]));
      } else {
        const auto& m = std::get<KdeModel>(d.model());
        for (double pi : p) inverse = inverse && std::fabs(m.cdf(m.ppf(pi), CdfMethod::fast) - pi) < 1e-9;
      }
    }
    check(monotone);
    check(inverse);
  }

  // make_unique
  for (int trial = 0; trial < cases; ++trial) {
    std::vector<double> x(2 + rng.below(200));
    const std::size_t levels = 2 + rng.below(12);
    for (double& v : x) v = static_cast<double>(rng.below(levels));
    std::sort(x.begin(), x.end());
    if (x.front() == x.back()) x.back() += 1;
    const double magnitude = 0.001 + rng.uniform();
    const auto u = make_unique(x, magnitude, trial);
    bool ok = u.front() == x.front() && u.back() == x.back();
    for (std::size_t i = 1; i < u.size(); ++i) ok = ok && u[i] > u[i - 1];
    check(ok);
  }

  // serialization
  for (int trial = 0; trial < cases; ++trial) {
    std::vector<double> data = double_gamma(2 + rng.below(200), 5000 + trial);
    bool ok = true;
    const auto learned = fit_learned(data);
    const auto l2 = from_json(to_json(learned));
    const auto& lm = std::get<LearnedDistribution>(l2.model());
    ok = ok && lm.lattice().lp == learned.lattice().lp && lm.lattice().lv == learned.lattice().lv;
    const KdeModel kde(std::vector<double>(data.begin(), data.begin() + std::min<std::size_t>(data.size(), 20)),
                       0.05 + rng.uniform(), 64);
    const auto k2 = from_json(to_json(kde));
    const auto& km = std::get<KdeModel>(k2.model());
    for (double q : {-1.0, 0.0, 0.7}) ok = ok && km.cdf(q) == kde.cdf(q);
    const AnalyticDistribution a = AnalyticDistribution::normal(rng.uniform(), 0.5 + rng.uniform());
    ok = ok && Distribution(a).cdf(0.3) == from_json(to_json(a)).cdf(0.3);
    check(ok);
  }
  return {failures == 0, fmt("%d of %d randomized cases failed", failures, total)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria{
      {"distributional guarantee", distributional_guarantee},
      {"sup-norm estimator bound", sup_norm_bound},
      {"consistency variance", consistency_variance},
      {"lattice semantics", lattice_semantics},
      {"complexity scaling", complexity_scaling},
      {"learned vs kde speed gap", speed_gap},
      {"kde correctness", kde_correctness},
      {"image round trip", image_round_trip},
      {"mosaic degenerate cases", mosaic_cases},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result = {false, std::string("threw: ") + e.what()};
    }
    failed += !result.pass;
    std::printf("AC%-2zu %s  %-26s %s\n", i + 1, result.pass ? "PASS" : "FAIL", criteria[i].name,
                result.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
