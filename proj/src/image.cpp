#include "redist/image.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <jpeglib.h>
#include <memory>
#include <string>

#include "redist/error.hpp"

namespace redist {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

// True for JPEG, false for PNG; any other extension is refused.
bool is_jpeg(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".jpg" || ext == ".jpeg") return true;
  if (ext == ".png") return false;
  throw io_error("unsupported image format '" + ext + "' for '" + path.string() +
                 "' (use .png, .jpg or .jpeg)");
}

ImageTensor read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw io_error("cannot read PNG '" + path.string() + "': " + image.message);
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> bytes(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, bytes.data(), 0, nullptr)) {
    png_image_free(&image);
    throw io_error("cannot decode PNG '" + path.string() + "': " + image.message);
  }
  return from_bytes(image.height, image.width, color ? 3 : 1, bytes);
}

void write_png(const std::filesystem::path& path, const ImageTensor& tensor) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(tensor.width());
  image.height = static_cast<png_uint_32>(tensor.height());
  image.format = tensor.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::vector<std::uint8_t> bytes = to_bytes(tensor);
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr))
    throw io_error("cannot write PNG '" + path.string() + "': " + image.message);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

// libjpeg reports fatal errors through a callback that must not return; it
// jumps back to the caller, which then throws.
struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf escape;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_escape(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->escape, 1);
}

ImageTensor read_jpeg(const std::filesystem::path& path) {
  File file(std::fopen(path.c_str(), "rb"));
  if (!file) throw io_error("cannot open '" + path.string() + "'");
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_escape;
  std::vector<std::uint8_t> bytes;
  std::size_t channels = 0;
  if (setjmp(err.escape)) {
    jpeg_destroy_decompress(&cinfo);
    throw io_error("cannot decode JPEG '" + path.string() + "': " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  const bool gray = cinfo.jpeg_color_space == JCS_GRAYSCALE;
  cinfo.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  channels = gray ? 1 : 3;
  const std::size_t stride = cinfo.output_width * channels;
  bytes.resize(stride * cinfo.output_height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = bytes.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  const std::size_t height = cinfo.output_height;
  const std::size_t width = cinfo.output_width;
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_bytes(height, width, channels, bytes);
}

void write_jpeg(const std::filesystem::path& path, const ImageTensor& tensor) {
  const std::vector<std::uint8_t> bytes = to_bytes(tensor);
  File file(std::fopen(path.c_str(), "wb"));
  if (!file) throw io_error("cannot open '" + path.string() + "' for writing");
  jpeg_compress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_escape;
  if (setjmp(err.escape)) {
    jpeg_destroy_compress(&cinfo);
    throw io_error("cannot write JPEG '" + path.string() + "': " + err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file.get());
  cinfo.image_width = static_cast<JDIMENSION>(tensor.width());
  cinfo.image_height = static_cast<JDIMENSION>(tensor.height());
  cinfo.input_components = static_cast<int>(tensor.channels());
  cinfo.in_color_space = tensor.channels() == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, 95, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = tensor.width() * tensor.channels();
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<std::uint8_t*>(bytes.data()) + stride * cinfo.next_scanline;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
}

}  // namespace

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
                         int source_depth)
    : ImageTensor(height, width, channels,
                  std::vector<double>(height * width * channels, 0.0), source_depth) {}

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
                         std::vector<double> data, int source_depth)
    : height_(height),
      width_(width),
      channels_(channels),
      source_depth_(source_depth),
      data_(std::move(data)) {
  if (channels_ != 1 && channels_ != 3) throw domain_error("images must have 1 or 3 channels");
  if (data_.size() != height_ * width_ * channels_)
    throw domain_error("image data length does not match H x W x C");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!(data_[i] >= 0.0 && data_[i] <= 1.0))
      throw element_error(i, data_[i], "image intensity outside [0, 1]");
  }
}

std::vector<double> ImageTensor::channel(std::size_t c) const {
  std::vector<double> out(pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * channels_ + c];
  return out;
}

void ImageTensor::set_channel(std::size_t c, std::span<const double> values) {
  if (values.size() != pixel_count()) throw domain_error("channel length mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) data_[i * channels_ + c] = values[i];
}

double dequantize8(std::uint8_t v) { return (static_cast<double>(v) + 0.5) / 256.0; }

std::uint8_t quantize8(double x) {
  const double scaled = std::floor(x * 256.0);
  if (!(scaled > 0.0)) return 0;
  if (scaled >= 255.0) return 255;
  return static_cast<std::uint8_t>(scaled);
}

ImageTensor from_bytes(std::size_t height, std::size_t width, std::size_t channels,
                       std::span<const std::uint8_t> bytes) {
  std::vector<double> data(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) data[i] = dequantize8(bytes[i]);
  return ImageTensor(height, width, channels, std::move(data), 8);
}

std::vector<std::uint8_t> to_bytes(const ImageTensor& image) {
  const auto data = image.data();
  std::vector<std::uint8_t> bytes(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) bytes[i] = quantize8(data[i]);
  return bytes;
}

ImageTensor read_image(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw io_error("no such image '" + path.string() + "'");
  return is_jpeg(path) ? read_jpeg(path) : read_png(path);
}

void write_image(const std::filesystem::path& path, const ImageTensor& image) {
  if (is_jpeg(path))
    write_jpeg(path, image);
  else
    write_png(path, image);
}

}  // namespace redist
