#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <vector>

namespace redist {

// ".f64" files are raw little-endian IEEE-754 doubles; anything else is text
// with one value per line (blank lines ignored).
enum class SampleFormat { binary_f64, text };

SampleFormat sample_format(const std::filesystem::path& path);

std::vector<double> read_samples(const std::filesystem::path& path);
void write_samples(const std::filesystem::path& path, std::span<const double> values);

// Chunked reader so arbitrarily long files can be streamed in bounded memory.
class SampleReader {
 public:
  explicit SampleReader(const std::filesystem::path& path);

  // Replaces `chunk` with up to `max_count` further values; returns how many
  // were read (0 at end of file).
  std::size_t read(std::vector<double>& chunk, std::size_t max_count);

  // Values delivered so far.
  std::uint64_t position() const { return position_; }

 private:
  std::filesystem::path path_;
  SampleFormat format_;
  std::ifstream in_;
  std::uint64_t position_ = 0;
  std::uint64_t line_ = 0;
};

class SampleWriter {
 public:
  explicit SampleWriter(const std::filesystem::path& path);

  void write(std::span<const double> values);
  // Flushes and reports write failures; the destructor flushes silently.
  void close();

 private:
  std::filesystem::path path_;
  SampleFormat format_;
  std::ofstream out_;
};

}  // namespace redist
