#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "redist/image.hpp"

namespace redist {

// Duplicate-breaking noise for 8-bit data: below half a quantization step,
// so re-quantizing recovers the original values.
inline constexpr double default_image_noise = 0.4 / 255.0;

enum class MatchMode { per_channel, pooled };

struct MatchOptions {
  MatchMode mode = MatchMode::per_channel;
  double noise_magnitude = default_image_noise;
  std::uint64_t seed = 0;
};

// Redistributes `source` so each channel (or all channels jointly in pooled
// mode) follows the distribution of the same channel in `reference`. Both
// sides get make_unique noise, learned fits without boundaries, and the
// result is clipped to [0, 1]. Resolutions may differ; channel counts not.
ImageTensor match_image(const ImageTensor& source, const ImageTensor& reference,
                        const MatchOptions& options = {});

struct MosaicParams {
  std::size_t tile_px = 32;
  double sigma = 0.05;
  double alpha = 0.25;
  std::uint64_t seed = 0;
  double noise_magnitude = default_image_noise;
};

// Downscales (never upscales) so the shorter side equals tile_px, then
// center-crops to tile_px x tile_px. Throws if the tile is too small.
ImageTensor prepare_tile(const ImageTensor& tile, std::size_t tile_px);

// Photomosaic: the canvas is cut into tile_px cells (edge cells cropped);
// each cell receives a tile, cycled in seeded shuffled order, whose channels
// are redistributed to N(cell mean, sigma^2) and clipped. The canvas is then
// overlaid: alpha * canvas + (1 - alpha) * mosaic.
ImageTensor mosaic(const ImageTensor& canvas, std::span<const ImageTensor> tiles,
                   const MosaicParams& params);

// out[i][j] = batch[i] matched to batch[j] per channel; out[i][i] = batch[i].
std::vector<std::vector<ImageTensor>> augment_batch(std::span<const ImageTensor> batch,
                                                    double noise_magnitude,
                                                    std::uint64_t seed);

}  // namespace redist
