// Command-line front end: fitting, bulk transforms, statistical checks,
// benchmarks and the image operations.
//
// Exit codes: 0 success, 1 domain or statistical failure, 2 I/O or usage.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redist/bench.hpp"
#include "redist/distribution.hpp"
#include "redist/error.hpp"
#include "redist/image.hpp"
#include "redist/image_ops.hpp"
#include "redist/kde.hpp"
#include "redist/learned.hpp"
#include "redist/redistributor.hpp"
#include "redist/sample_io.hpp"
#include "redist/serialization.hpp"
#include "redist/stats.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

enum class Stage { transform, inverse, cdt };

std::string real(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

struct FitArgs {
  std::string input;
  std::string output;
  std::string estimator = "learned";
  std::optional<std::size_t> bins;
  std::optional<double> bandwidth;
  std::optional<std::size_t> grid_density;
  std::optional<double> boundary_a;
  std::optional<double> boundary_b;
  std::optional<double> noise;
  std::uint64_t seed = 0;
};

int run_fit(const FitArgs& args) {
  std::vector<double> samples = redist::read_samples(args.input);
  if (args.noise) redist::make_unique_unordered(samples, *args.noise, args.seed);
  if (args.estimator == "learned") {
    redist::LearnedOptions options;
    options.a = args.boundary_a;
    options.b = args.boundary_b;
    options.bins = args.bins;
    options.keep_input_order = false;
    options.seed = args.seed;
    const std::size_t n = samples.size();
    const redist::LearnedDistribution fit = redist::fit_learned(samples, options);
    redist::save_distribution(fit, args.output);
    const auto [lo, hi] = fit.support();
    std::cout << "estimator=learned K=" << fit.bins() << " n=" << n << " support=["
              << real(lo) << ", " << real(hi) << "]\n";
  } else {
    if (samples.empty())
      throw redist::domain_error("degenerate data: kernel density needs at least one sample");
    redist::KdeOptions options;
    options.bandwidth = args.bandwidth;
    options.grid_density = args.grid_density;
    const redist::KdeModel fit = redist::fit_kde(samples, options);
    redist::save_distribution(fit, args.output);
    const auto [lo, hi] = fit.empirical_support();
    std::cout << "estimator=kde K=" << fit.grid_density() << " n=" << samples.size()
              << " bandwidth=" << real(fit.bandwidth()) << " support=[" << real(lo)
              << ", " << real(hi) << "]\n";
  }
  return exit_ok;
}

struct StreamArgs {
  std::string input;
  std::string output;
  std::string source;
  std::string target;
  std::size_t chunk_size = 1 << 16;
};

int run_stream(const StreamArgs& args, Stage stage) {
  if (args.chunk_size == 0) throw redist::format_error("--chunk-size must be positive");
  const redist::Redistributor transform(redist::parse_distribution(args.source),
                                        redist::parse_distribution(args.target));
  redist::SampleReader reader(args.input);
  redist::SampleWriter writer(args.output);
  std::vector<double> chunk;
  std::vector<double> out;
  std::uint64_t offset = 0;
  while (reader.read(chunk, args.chunk_size) > 0) {
    out.resize(chunk.size());
    try {
      switch (stage) {
        case Stage::transform:
          transform.transform(chunk, out);
          break;
        case Stage::inverse:
          transform.inverse_transform(chunk, out);
          break;
        case Stage::cdt:
          transform.cdt(chunk, out);
          break;
      }
    } catch (const redist::element_error& e) {
      const std::size_t local = e.index();
      throw redist::element_error(offset + local, chunk[local], e.reason());
    }
    writer.write(out);
    offset += chunk.size();
  }
  writer.close();
  return exit_ok;
}

int run_ks_check(const std::string& sample_path, const std::string& target_spec) {
  const std::vector<double> sample = redist::read_samples(sample_path);
  const redist::KsReport report =
      redist::ks_test(sample, redist::parse_distribution(target_spec));
  std::cout << "{\"n\":" << report.n << ",\"statistic\":" << real(report.statistic)
            << ",\"critical_value_01\":" << real(report.critical_value_01)
            << ",\"pass\":" << (report.pass ? "true" : "false") << "}\n";
  return report.pass ? exit_ok : exit_domain;
}

struct ConsistencyArgs {
  std::size_t trials = 2000;
  std::size_t n = 4096;
  std::string source = "uniform:0,1";
  std::string target = "normal:0,1";
  double x = 0.5;
  std::uint64_t seed = 0;
};

int run_consistency(const ConsistencyArgs& args) {
  const redist::ConsistencyReport report = redist::consistency_experiment(
      redist::parse_analytic(args.source), redist::parse_distribution(args.target),
      args.trials, args.n, args.x, args.seed);
  std::cout << "{\"trials\":" << report.trials << ",\"n\":" << report.n
            << ",\"x\":" << real(report.x) << ",\"source_cdf\":" << real(report.source_cdf)
            << ",\"theoretical_variance\":" << real(report.theoretical_variance)
            << ",\"empirical_variance\":" << real(report.empirical_variance)
            << ",\"ratio\":" << real(report.ratio) << "}\n";
  return exit_ok;
}

struct BenchArgs {
  std::vector<std::size_t> ns{100000, 1000000};
  std::vector<std::size_t> ks{5000};
  std::vector<std::string> algorithms{"learned"};
  std::size_t repetitions = 5;
  bool presorted = false;
  std::uint64_t seed = 0;
  std::string output;
};

int run_bench(const BenchArgs& args) {
  std::vector<redist::BenchAlgorithm> algorithms;
  for (const std::string& name : args.algorithms) {
    if (name == "learned")
      algorithms.push_back(redist::BenchAlgorithm::learned);
    else if (name == "kde")
      algorithms.push_back(redist::BenchAlgorithm::kde);
    else
      throw redist::format_error("unknown algorithm '" + name + "' (learned, kde)");
  }
  redist::BenchOptions options;
  options.repetitions = args.repetitions;
  options.presorted = args.presorted;
  options.seed = args.seed;
  const std::string csv =
      redist::bench_csv(redist::run_bench(algorithms, args.ns, args.ks, options));
  if (args.output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.output);
    if (!(out << csv)) throw redist::io_error("cannot write '" + args.output + "'");
  }
  return exit_ok;
}

struct ImageArgs {
  std::string source;
  std::string reference;
  std::string canvas;
  std::vector<std::string> tiles;
  std::vector<std::string> inputs;
  std::string output;
  std::string out_dir;
  bool pooled = false;
  double noise = redist::default_image_noise;
  std::size_t tile_size = 32;
  double sigma = 0.05;
  double alpha = 0.25;
  std::uint64_t seed = 0;
};

int run_match_colors(const ImageArgs& args) {
  redist::MatchOptions options;
  options.mode = args.pooled ? redist::MatchMode::pooled : redist::MatchMode::per_channel;
  options.noise_magnitude = args.noise;
  options.seed = args.seed;
  const redist::ImageTensor out = redist::match_image(
      redist::read_image(args.source), redist::read_image(args.reference), options);
  redist::write_image(args.output, out);
  return exit_ok;
}

int run_mosaic(const ImageArgs& args) {
  std::vector<redist::ImageTensor> tiles;
  for (const std::string& path : args.tiles) tiles.push_back(redist::read_image(path));
  redist::MosaicParams params;
  params.tile_px = args.tile_size;
  params.sigma = args.sigma;
  params.alpha = args.alpha;
  params.seed = args.seed;
  params.noise_magnitude = args.noise;
  redist::write_image(args.output,
                      redist::mosaic(redist::read_image(args.canvas), tiles, params));
  return exit_ok;
}

int run_augment(const ImageArgs& args) {
  std::vector<redist::ImageTensor> batch;
  for (const std::string& path : args.inputs) batch.push_back(redist::read_image(path));
  const auto grid = redist::augment_batch(batch, args.noise, args.seed);
  std::filesystem::create_directories(args.out_dir);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid[i].size(); ++j) {
      const auto path = std::filesystem::path(args.out_dir) /
                        ("aug_" + std::to_string(i) + "_" + std::to_string(j) + ".png");
      redist::write_image(path, grid[i][j]);
    }
  }
  std::cout << "wrote " << grid.size() * grid.size() << " images to " << args.out_dir << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution matching: fit CDF/PPF estimators and redistribute data and images"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a distribution to samples and save it as JSON");
  fit_cmd->add_option("input", fit.input, "Samples (.f64 binary or one value per line)")->required();
  fit_cmd->add_option("-o,--output", fit.output, "Distribution document to write")->required();
  fit_cmd->add_option("--estimator", fit.estimator, "learned or kde")
      ->check(CLI::IsMember({"learned", "kde"}));
  fit_cmd->add_option("--bins", fit.bins, "Lattice size K (learned)");
  fit_cmd->add_option("--bandwidth", fit.bandwidth, "Kernel standard deviation (kde)");
  fit_cmd->add_option("--grid-density", fit.grid_density, "CDF grid size (kde)");
  fit_cmd->add_option("--boundary-a", fit.boundary_a, "Known left end of the support (learned)");
  fit_cmd->add_option("--boundary-b", fit.boundary_b, "Known right end of the support (learned)");
  fit_cmd->add_option("--noise", fit.noise, "Break duplicate samples with noise of this magnitude");
  fit_cmd->add_option("--seed", fit.seed);

  StreamArgs stream;
  Stage stage = Stage::transform;
  auto add_stream = [&](const char* name, const char* help, Stage which) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("input", stream.input, "Values to map")->required();
    cmd->add_option("-o,--output", stream.output, "Where to write the mapped values")->required();
    cmd->add_option("--source", stream.source, "Source distribution spec")->required();
    cmd->add_option("--target", stream.target, "Target distribution spec")->required();
    cmd->add_option("--chunk-size", stream.chunk_size, "Values per streamed chunk");
    cmd->callback([&stage, which] { stage = which; });
    return cmd;
  };
  auto* transform_cmd = add_stream("transform", "Map values with target.ppf(source.cdf(x))", Stage::transform);
  auto* inverse_cmd = add_stream("inverse-transform", "Map values with source.ppf(target.cdf(y))", Stage::inverse);
  auto* cdt_cmd = add_stream("cdt", "Cumulative distribution transform (R(x) - x) sqrt(f_S(x))", Stage::cdt);

  std::string ks_sample;
  std::string ks_target;
  auto* ks_cmd = app.add_subcommand("ks-check", "One-sample Kolmogorov-Smirnov test at alpha = 0.01");
  ks_cmd->add_option("sample", ks_sample)->required();
  ks_cmd->add_option("--target", ks_target, "Reference distribution spec")->required();

  ConsistencyArgs consistency;
  auto* consistency_cmd = app.add_subcommand(
      "consistency", "Monte Carlo variance of sqrt(n)(R_hat(x) - R(x)) against its limit");
  consistency_cmd->add_option("--trials", consistency.trials);
  consistency_cmd->add_option("--n", consistency.n);
  consistency_cmd->add_option("--source", consistency.source, "Analytic source spec");
  consistency_cmd->add_option("--target", consistency.target);
  consistency_cmd->add_option("--x", consistency.x);
  consistency_cmd->add_option("--seed", consistency.seed);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time learned and KDE fits; CSV output");
  bench_cmd->add_option("--n", bench.ns, "Sample counts")->delimiter(',');
  bench_cmd->add_option("--k", bench.ks, "Bins / grid densities")->delimiter(',');
  bench_cmd->add_option("--algorithms", bench.algorithms, "learned,kde")->delimiter(',');
  bench_cmd->add_option("--reps", bench.repetitions, "Repetitions (median reported)");
  bench_cmd->add_flag("--presorted", bench.presorted, "Feed sorted samples");
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("-o,--output", bench.output, "CSV path (stdout if omitted)");

  ImageArgs image;
  auto* match_cmd = app.add_subcommand("match-colors", "Match an image's colors to a reference");
  match_cmd->add_option("--source", image.source)->required();
  match_cmd->add_option("--reference", image.reference)->required();
  match_cmd->add_option("-o,--output", image.output)->required();
  match_cmd->add_flag("--pooled", image.pooled, "One fit over all channels");
  match_cmd->add_option("--noise", image.noise);
  match_cmd->add_option("--seed", image.seed);

  auto* mosaic_cmd = app.add_subcommand("mosaic", "Build a photomosaic of a canvas image");
  mosaic_cmd->add_option("--canvas", image.canvas)->required();
  mosaic_cmd->add_option("--tiles", image.tiles)->required();
  mosaic_cmd->add_option("-o,--output", image.output)->required();
  mosaic_cmd->add_option("--tile-size", image.tile_size);
  mosaic_cmd->add_option("--sigma", image.sigma);
  mosaic_cmd->add_option("--alpha", image.alpha);
  mosaic_cmd->add_option("--noise", image.noise);
  mosaic_cmd->add_option("--seed", image.seed);

  auto* augment_cmd = app.add_subcommand("augment", "Redistribute every image of a batch to every other");
  augment_cmd->add_option("--inputs", image.inputs)->required();
  augment_cmd->add_option("--out-dir", image.out_dir)->required();
  augment_cmd->add_option("--noise", image.noise);
  augment_cmd->add_option("--seed", image.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit);
    if (transform_cmd->parsed() || inverse_cmd->parsed() || cdt_cmd->parsed())
      return run_stream(stream, stage);
    if (ks_cmd->parsed()) return run_ks_check(ks_sample, ks_target);
    if (consistency_cmd->parsed()) return run_consistency(consistency);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (match_cmd->parsed()) return run_match_colors(image);
    if (mosaic_cmd->parsed()) return run_mosaic(image);
    if (augment_cmd->parsed()) return run_augment(image);
  } catch (const redist::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const redist::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
