#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace redist {

// H x W x C intensities in [0, 1], row-major, channels interleaved.
class ImageTensor {
 public:
  ImageTensor() = default;
  ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
              int source_depth = 8);
  ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
              std::vector<double> data, int source_depth = 8);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t channels() const { return channels_; }
  std::size_t pixel_count() const { return height_ * width_; }
  int source_depth() const { return source_depth_; }

  double& at(std::size_t row, std::size_t col, std::size_t channel) {
    return data_[(row * width_ + col) * channels_ + channel];
  }
  double at(std::size_t row, std::size_t col, std::size_t channel) const {
    return data_[(row * width_ + col) * channels_ + channel];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Copy of one channel as a contiguous H*W array, and the reverse.
  std::vector<double> channel(std::size_t c) const;
  void set_channel(std::size_t c, std::span<const double> values);

  bool operator==(const ImageTensor&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t channels_ = 0;
  int source_depth_ = 8;
  std::vector<double> data_;
};

// 8-bit value v <-> (v + 0.5) / 256; quantization floors x * 256 and clamps.
double dequantize8(std::uint8_t v);
std::uint8_t quantize8(double x);

ImageTensor from_bytes(std::size_t height, std::size_t width, std::size_t channels,
                       std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> to_bytes(const ImageTensor& image);

// PNG or JPEG by extension (.png, .jpg, .jpeg). Gray inputs load with one
// channel, everything else as RGB; alpha is dropped.
ImageTensor read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const ImageTensor& image);

}  // namespace redist
