#include "stmd/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stmd/errors.hpp"
#include "text_util.hpp"

namespace fs = std::filesystem;

namespace stmd {

namespace {

int read_pnm_token(std::istream& in, const std::string& path) {
  // Skips whitespace and '#' comments between header fields.
  while (true) {
    const int c = in.peek();
    if (c == EOF) throw IoError("truncated PGM header: " + path);
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  int value = 0;
  in >> value;
  if (!in) throw IoError("malformed PGM header: " + path);
  return value;
}

uint8_t quantize(double v) {
  return uint8_t(std::clamp(std::lround(v), 0L, 255L));
}

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw IoError("not a binary PGM (P5) file: " + path);
  }
  const int w = read_pnm_token(in, path);
  const int h = read_pnm_token(in, path);
  const int maxval = read_pnm_token(in, path);
  if (w <= 0 || h <= 0) throw IoError("bad PGM dimensions: " + path);
  if (maxval <= 0 || maxval > 255) {
    throw IoError("only 8-bit PGM is supported: " + path);
  }
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> bytes(std::size_t(w) * h);
  in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!in) throw IoError("truncated PGM pixel data: " + path);
  Frame out(w, h);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out.data()[i] = double(bytes[i]);
  }
  return out;
}

void write_pgm(const Frame& frame, const std::string& path) {
  if (frame.empty()) throw InvalidParameter("cannot write an empty frame");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create image: " + path);
  out << "P5\n" << frame.width() << " " << frame.height() << "\n255\n";
  std::vector<unsigned char> bytes(frame.data().size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = quantize(frame.data()[i]);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw IoError("failed to write image: " + path);
}

Frame read_png(const std::string& path) {
  PngReadCloser c;
  c.fp = std::fopen(path.c_str(), "rb");
  if (!c.fp) throw IoError("cannot open image: " + path);
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, c.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError("not a PNG file: " + path);
  }
  c.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!c.png) throw IoError("libpng initialization failed");
  c.info = png_create_info_struct(c.png);
  if (!c.info) throw IoError("libpng initialization failed");
  if (setjmp(png_jmpbuf(c.png))) {
    throw IoError("corrupt PNG data: " + path);
  }
  png_init_io(c.png, c.fp);
  png_set_sig_bytes(c.png, 8);
  png_read_info(c.png, c.info);

  const png_uint_32 w = png_get_image_width(c.png, c.info);
  const png_uint_32 h = png_get_image_height(c.png, c.info);
  const int color = png_get_color_type(c.png, c.info);
  const int depth = png_get_bit_depth(c.png, c.info);

  if (depth == 16) png_set_strip_16(c.png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(c.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(c.png);
  if (png_get_valid(c.png, c.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(c.png);
  png_set_strip_alpha(c.png);
  png_set_interlace_handling(c.png);
  png_read_update_info(c.png, c.info);

  const int channels = png_get_channels(c.png, c.info);
  if (channels != 1 && channels != 3) {
    throw IoError("unsupported PNG channel layout: " + path);
  }
  std::vector<unsigned char> pixels(std::size_t(w) * h * channels);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = pixels.data() + std::size_t(y) * w * channels;
  }
  png_read_image(c.png, rows.data());

  Frame out{int(w), int(h)};
  for (png_uint_32 y = 0; y < h; ++y) {
    const unsigned char* src = rows[y];
    double* dst = out.row(int(y));
    if (channels == 1) {
      for (png_uint_32 x = 0; x < w; ++x) dst[x] = double(src[x]);
    } else {
      for (png_uint_32 x = 0; x < w; ++x) {
        dst[x] = rec601_luma(src[3 * x], src[3 * x + 1], src[3 * x + 2]);
      }
    }
  }
  return out;
}

void write_png(const Frame& frame, const std::string& path) {
  if (frame.empty()) throw InvalidParameter("cannot write an empty frame");
  PngWriteCloser c;
  c.fp = std::fopen(path.c_str(), "wb");
  if (!c.fp) throw IoError("cannot create image: " + path);
  c.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!c.png) throw IoError("libpng initialization failed");
  c.info = png_create_info_struct(c.png);
  if (!c.info) throw IoError("libpng initialization failed");
  if (setjmp(png_jmpbuf(c.png))) {
    throw IoError("failed to write PNG: " + path);
  }
  png_init_io(c.png, c.fp);
  png_set_IHDR(c.png, c.info, png_uint_32(frame.width()),
               png_uint_32(frame.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(c.png, c.info);
  std::vector<unsigned char> rowbuf(std::size_t(frame.width()));
  for (int y = 0; y < frame.height(); ++y) {
    const double* src = frame.row(y);
    for (int x = 0; x < frame.width(); ++x) rowbuf[x] = quantize(src[x]);
    png_write_row(c.png, rowbuf.data());
  }
  png_write_end(c.png, nullptr);
}

Frame read_image(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png(path);
  throw IoError("unsupported image format (expected .pgm or .png): " + path);
}

FileFrameSource::FileFrameSource(const std::string& source) {
  std::error_code ec;
  if (fs::is_directory(source, ec)) {
    for (const auto& entry : fs::directory_iterator(source)) {
      if (!entry.is_regular_file()) continue;
      const std::string ext = entry.path().extension().string();
      if (ext == ".pgm" || ext == ".png") {
        paths_.push_back(entry.path().string());
      }
    }
    std::sort(paths_.begin(), paths_.end());
    if (paths_.empty()) {
      throw IoError("no .pgm/.png frames in directory: " + source);
    }
  } else if (fs::is_regular_file(source, ec)) {
    std::ifstream in(source);
    if (!in) throw IoError("cannot open manifest: " + source);
    const fs::path base = fs::path(source).parent_path();
    std::string line;
    while (std::getline(in, line)) {
      const auto sv = detail::trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      fs::path p{std::string(sv)};
      if (p.is_relative()) p = base / p;
      paths_.push_back(p.string());
    }
    if (paths_.empty()) throw IoError("manifest lists no frames: " + source);
  } else {
    throw IoError("frame source is neither a directory nor a file: " + source);
  }
}

std::optional<Frame> FileFrameSource::next() {
  if (index_ >= paths_.size()) return std::nullopt;
  const std::string& path = paths_[index_++];
  Frame f = read_image(path);
  if (w_ < 0) {
    w_ = f.width();
    h_ = f.height();
  } else if (f.width() != w_ || f.height() != h_) {
    throw IoError("frame dimensions changed mid-stream at: " + path);
  }
  return f;
}

std::unique_ptr<FrameSource> open_frames(const std::string& source) {
  return std::make_unique<FileFrameSource>(source);
}

}  // namespace stmd
