#include "redist/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "redist/error.hpp"
#include "redist/learned.hpp"
#include "redist/normal_math.hpp"
#include "redist/parallel.hpp"
#include "redist/redistributor.hpp"
#include "redist/rng.hpp"

namespace redist {
namespace {

// Fits both sides and maps `values` (in place) onto the reference's
// distribution.
void redistribute(std::span<double> values, std::vector<double> reference,
                  double noise, std::uint64_t seed_source, std::uint64_t seed_reference) {
  make_unique_unordered(values, noise, seed_source);
  make_unique_unordered(reference, noise, seed_reference);
  LearnedOptions source_options;
  source_options.seed = seed_source;
  LearnedOptions reference_options;
  reference_options.keep_input_order = false;
  reference_options.seed = seed_reference;
  const Redistributor transform(fit_learned(values, source_options),
                                fit_learned(reference, reference_options));
  transform.transform(values, values);
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
}

// Learned cdf values of a tile channel: the source side of every cell's
// transform, independent of the cell's target mean.
std::vector<double> tile_probabilities(const ImageTensor& tile, std::size_t c,
                                       double noise, std::uint64_t seed) {
  std::vector<double> values = tile.channel(c);
  make_unique_unordered(values, noise, seed);
  LearnedOptions options;
  options.seed = seed;
  const LearnedDistribution fit = fit_learned(values, options);
  std::vector<double> probabilities(values.size());
  fit.cdf(values, probabilities);
  return probabilities;
}

}  // namespace

ImageTensor match_image(const ImageTensor& source, const ImageTensor& reference,
                        const MatchOptions& options) {
  if (source.channels() != reference.channels())
    throw domain_error("source and reference images have different channel counts");
  ImageTensor out = source;
  if (options.mode == MatchMode::pooled) {
    const auto ref = reference.data();
    redistribute(out.data(), std::vector<double>(ref.begin(), ref.end()),
                 options.noise_magnitude, mix_seed(options.seed, 0, 0),
                 mix_seed(options.seed, 0, 1));
    return out;
  }
  std::vector<std::vector<double>> channels(source.channels());
  parallel::for_each_task(source.channels(), [&](std::size_t c) {
    channels[c] = source.channel(c);
    redistribute(channels[c], reference.channel(c), options.noise_magnitude,
                 mix_seed(options.seed, c, 0), mix_seed(options.seed, c, 1));
  });
  for (std::size_t c = 0; c < channels.size(); ++c) out.set_channel(c, channels[c]);
  return out;
}

ImageTensor prepare_tile(const ImageTensor& tile, std::size_t tile_px) {
  const std::size_t shorter = std::min(tile.height(), tile.width());
  if (tile_px == 0) throw domain_error("tile size must be at least 1 pixel");
  if (shorter < tile_px)
    throw domain_error("tile of " + std::to_string(tile.height()) + "x" +
                       std::to_string(tile.width()) + " is smaller than the " +
                       std::to_string(tile_px) + " px cell size");
  const double scale = static_cast<double>(tile_px) / static_cast<double>(shorter);
  const auto resized_dim = [&](std::size_t d) {
    return std::max(tile_px, static_cast<std::size_t>(std::lround(static_cast<double>(d) * scale)));
  };
  const std::size_t h = resized_dim(tile.height());
  const std::size_t w = resized_dim(tile.width());
  const std::size_t channels = tile.channels();

  // Box-filter downscale: each output pixel averages the source pixels whose
  // indices fall inside its footprint.
  ImageTensor resized(h, w, channels);
  const double fy = static_cast<double>(tile.height()) / static_cast<double>(h);
  const double fx = static_cast<double>(tile.width()) / static_cast<double>(w);
  for (std::size_t r = 0; r < h; ++r) {
    const auto r0 = static_cast<std::size_t>(std::floor(static_cast<double>(r) * fy));
    const auto r1 = std::max(r0 + 1, std::min(tile.height(), static_cast<std::size_t>(std::floor(static_cast<double>(r + 1) * fy))));
    for (std::size_t col = 0; col < w; ++col) {
      const auto c0 = static_cast<std::size_t>(std::floor(static_cast<double>(col) * fx));
      const auto c1 = std::max(c0 + 1, std::min(tile.width(), static_cast<std::size_t>(std::floor(static_cast<double>(col + 1) * fx))));
      const double count = static_cast<double>((r1 - r0) * (c1 - c0));
      for (std::size_t ch = 0; ch < channels; ++ch) {
        double sum = 0.0;
        for (std::size_t y = r0; y < r1; ++y)
          for (std::size_t x = c0; x < c1; ++x) sum += tile.at(y, x, ch);
        resized.at(r, col, ch) = sum / count;
      }
    }
  }

  ImageTensor cropped(tile_px, tile_px, channels);
  const std::size_t top = (h - tile_px) / 2;
  const std::size_t left = (w - tile_px) / 2;
  for (std::size_t r = 0; r < tile_px; ++r)
    for (std::size_t col = 0; col < tile_px; ++col)
      for (std::size_t ch = 0; ch < channels; ++ch)
        cropped.at(r, col, ch) = resized.at(top + r, left + col, ch);
  return cropped;
}

ImageTensor mosaic(const ImageTensor& canvas, std::span<const ImageTensor> tiles,
                   const MosaicParams& params) {
  if (tiles.empty()) throw domain_error("mosaic needs at least one tile");
  if (params.tile_px == 0) throw domain_error("tile size must be at least 1 pixel");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0))
    throw domain_error("alpha must lie in [0, 1]");
  if (!(params.sigma >= 0.0 && std::isfinite(params.sigma)))
    throw domain_error("sigma must be nonnegative");
  const std::size_t channels = canvas.channels();
  for (const ImageTensor& tile : tiles) {
    if (tile.channels() != channels)
      throw domain_error("tile and canvas have different channel counts");
  }

  const std::size_t tile_px = params.tile_px;
  std::vector<ImageTensor> prepared(tiles.size());
  // probabilities[t][c]: learned cdf of each pixel of tile t, channel c
  std::vector<std::vector<std::vector<double>>> probabilities(tiles.size());
  parallel::for_each_task(tiles.size(), [&](std::size_t t) {
    prepared[t] = prepare_tile(tiles[t], tile_px);
    if (params.sigma > 0.0) {
      probabilities[t].resize(channels);
      for (std::size_t c = 0; c < channels; ++c)
        probabilities[t][c] = tile_probabilities(prepared[t], c, params.noise_magnitude,
                                                 mix_seed(params.seed, t, c + 1));
    }
  });

  std::vector<std::size_t> order(tiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(params.seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  const std::size_t rows = (canvas.height() + tile_px - 1) / tile_px;
  const std::size_t cols = (canvas.width() + tile_px - 1) / tile_px;
  ImageTensor out = canvas;
  parallel::for_each_task(rows * cols, [&](std::size_t cell) {
    const std::size_t r0 = (cell / cols) * tile_px;
    const std::size_t c0 = (cell % cols) * tile_px;
    const std::size_t r1 = std::min(r0 + tile_px, canvas.height());
    const std::size_t c1 = std::min(c0 + tile_px, canvas.width());
    const std::size_t t = order[cell % order.size()];
    for (std::size_t ch = 0; ch < channels; ++ch) {
      double mean = 0.0;
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) mean += canvas.at(r, c, ch);
      mean /= static_cast<double>((r1 - r0) * (c1 - c0));
      for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) {
          double value = mean;
          if (params.sigma > 0.0) {
            const double p = probabilities[t][ch][(r - r0) * tile_px + (c - c0)];
            value = std::clamp(mean + params.sigma * normal_math::ppf(p), 0.0, 1.0);
          }
          out.at(r, c, ch) =
              params.alpha * canvas.at(r, c, ch) + (1.0 - params.alpha) * value;
        }
      }
    }
  });
  return out;
}

std::vector<std::vector<ImageTensor>> augment_batch(std::span<const ImageTensor> batch,
                                                    double noise_magnitude,
                                                    std::uint64_t seed) {
  if (batch.empty()) throw domain_error("augmentation needs a nonempty batch");
  for (const ImageTensor& image : batch) {
    if (image.channels() != batch.front().channels())
      throw domain_error("all images in a batch must have the same channel count");
  }
  const std::size_t size = batch.size();
  std::vector<std::vector<ImageTensor>> out(size, std::vector<ImageTensor>(size));
  parallel::for_each_task(size * size, [&](std::size_t cell) {
    const std::size_t i = cell / size;
    const std::size_t j = cell % size;
    if (i == j) {
      out[i][j] = batch[i];
      return;
    }
    MatchOptions options;
    options.noise_magnitude = noise_magnitude;
    options.seed = mix_seed(seed, i, j);
    out[i][j] = match_image(batch[i], batch[j], options);
  });
  return out;
}

}  // namespace redist
