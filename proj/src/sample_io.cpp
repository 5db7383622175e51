#include "redist/sample_io.hpp"

#include <bit>
#include <charconv>
#include <string>

#include "redist/error.hpp"

namespace redist {
namespace {

double from_little_endian(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[b];
  return std::bit_cast<double>(bits);
}

void to_little_endian(double v, unsigned char* bytes) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) {
    bytes[b] = static_cast<unsigned char>(bits & 0xff);
    bits >>= 8;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SampleFormat sample_format(const std::filesystem::path& path) {
  return path.extension() == ".f64" ? SampleFormat::binary_f64 : SampleFormat::text;
}

SampleReader::SampleReader(const std::filesystem::path& path)
    : path_(path), format_(sample_format(path)), in_(path, std::ios::binary) {
  if (!in_) throw io_error("cannot open '" + path.string() + "'");
}

std::size_t SampleReader::read(std::vector<double>& chunk, std::size_t max_count) {
  chunk.clear();
  if (format_ == SampleFormat::binary_f64) {
    std::vector<unsigned char> raw(max_count * 8);
    in_.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got % 8 != 0)
      throw format_error("'" + path_.string() + "' is not a whole number of 64-bit floats");
    chunk.resize(got / 8);
    for (std::size_t i = 0; i < chunk.size(); ++i)
      chunk[i] = from_little_endian(raw.data() + 8 * i);
  } else {
    std::string line;
    while (chunk.size() < max_count && std::getline(in_, line)) {
      ++line_;
      const std::string_view token = trim(line);
      if (token.empty()) continue;
      double v = 0.0;
      const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || end != token.data() + token.size())
        throw format_error("'" + path_.string() + "' line " + std::to_string(line_) +
                           ": cannot parse '" + std::string(token) + "' as a number");
      chunk.push_back(v);
    }
  }
  position_ += chunk.size();
  return chunk.size();
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  SampleReader reader(path);
  std::vector<double> all;
  std::vector<double> chunk;
  while (reader.read(chunk, 1 << 16) > 0) all.insert(all.end(), chunk.begin(), chunk.end());
  return all;
}

SampleWriter::SampleWriter(const std::filesystem::path& path)
    : path_(path), format_(sample_format(path)), out_(path, std::ios::binary) {
  if (!out_) throw io_error("cannot open '" + path.string() + "' for writing");
}

void SampleWriter::write(std::span<const double> values) {
  if (format_ == SampleFormat::binary_f64) {
    std::vector<unsigned char> raw(values.size() * 8);
    for (std::size_t i = 0; i < values.size(); ++i) to_little_endian(values[i], raw.data() + 8 * i);
    out_.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  } else {
    std::string text;
    char buf[32];
    for (const double v : values) {
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
      text.append(buf, end);
      text += '\n';
    }
    out_ << text;
  }
  if (!out_) throw io_error("failed writing '" + path_.string() + "'");
}

void SampleWriter::close() {
  out_.flush();
  if (!out_) throw io_error("failed writing '" + path_.string() + "'");
  out_.close();
}

void write_samples(const std::filesystem::path& path, std::span<const double> values) {
  SampleWriter writer(path);
  writer.write(values);
  writer.close();
}

}  // namespace redist
