#include "equisym/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

#include "equisym/log.hpp"

namespace equisym {

namespace {

struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 0;           // 1 or 3
  std::vector<unsigned char> pixels;  // row-major, interleaved
};

int pgm_next_value(std::istream& in) {
  // skips whitespace and '#' comments
  for (;;) {
    int c = in.peek();
    if (c == EOF) throw std::runtime_error("pgm: unexpected end of header");
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  int value = 0;
  if (!(in >> value)) throw std::runtime_error("pgm: malformed header value");
  return value;
}

RawImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
    throw std::runtime_error("unsupported format (expected PGM P2/P5): " + path);
  const bool binary = magic[1] == '5';
  const int width = pgm_next_value(in);
  const int height = pgm_next_value(in);
  const int maxval = pgm_next_value(in);
  if (width <= 0 || height <= 0) throw std::runtime_error("pgm: zero-size image: " + path);
  if (maxval <= 0 || maxval > 255)
    throw std::runtime_error("unsupported pgm bit depth (maxval " + std::to_string(maxval) +
                             "): " + path);
  RawImage raw;
  raw.width = width;
  raw.height = height;
  raw.channels = 1;
  raw.pixels.resize(static_cast<std::size_t>(width) * height);
  if (binary) {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(raw.pixels.data()), static_cast<std::streamsize>(raw.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.pixels.size()))
      throw std::runtime_error("pgm: truncated pixel data: " + path);
  } else {
    for (auto& px : raw.pixels) {
      int v = 0;
      if (!(in >> v)) throw std::runtime_error("pgm: truncated pixel data: " + path);
      if (v < 0 || v > maxval) throw std::runtime_error("pgm: sample out of range: " + path);
      px = static_cast<unsigned char>(v);
    }
  }
  if (maxval != 255)
    for (auto& px : raw.pixels)
      px = static_cast<unsigned char>(std::lround(px * 255.0 / maxval));
  return raw;
}

RawImage load_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open file: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: decode error: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (width <= 0 || height <= 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: zero-size image: " + path);
  }
  if (depth != 8 || (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB)) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("unsupported png (need 8-bit grayscale or RGB, got bit depth " +
                             std::to_string(depth) + ", color type " + std::to_string(color) +
                             "): " + path);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  RawImage raw;
  raw.width = width;
  raw.height = height;
  raw.channels = color == PNG_COLOR_TYPE_GRAY ? 1 : 3;
  raw.pixels.resize(static_cast<std::size_t>(width) * height * raw.channels);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  const std::size_t stride = static_cast<std::size_t>(width) * raw.channels;
  for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = raw.pixels.data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return raw;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  for (auto& c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tail == suffix;
}

}  // namespace

Image load_image(const std::string& path, double mesh_override) {
  RawImage raw;
  if (has_suffix(path, ".png")) {
    raw = load_png(path);
  } else if (has_suffix(path, ".pgm") || has_suffix(path, ".pnm")) {
    raw = load_pgm(path);
  } else {
    // sniff the magic bytes
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    in.close();
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5'))
      raw = load_pgm(path);
    else if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P')
      raw = load_png(path);
    else
      throw std::runtime_error("unsupported format (expected PGM P2/P5 or PNG): " + path);
  }

  const int side = std::min(raw.width, raw.height);
  if (raw.width != raw.height)
    log::warn("load_image: non-square input " + std::to_string(raw.width) + "x" +
              std::to_string(raw.height) + ", center-cropping to " + std::to_string(side) + "x" +
              std::to_string(side) + " (" + path + ")");
  const int off_y = (raw.height - side) / 2;
  const int off_x = (raw.width - side) / 2;

  const double mesh = mesh_override > 0.0 ? mesh_override : 1.0 / side;
  GridSpec grid(mesh, side);
  std::vector<double> values(static_cast<std::size_t>(side) * side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const std::size_t src =
          (static_cast<std::size_t>(r + off_y) * raw.width + (c + off_x)) * raw.channels;
      double v;
      if (raw.channels == 1) {
        v = raw.pixels[src] / 255.0;
      } else {
        v = (0.299 * raw.pixels[src] + 0.587 * raw.pixels[src + 1] + 0.114 * raw.pixels[src + 2]) /
            255.0;
      }
      values[static_cast<std::size_t>(r) * side + c] = v;
    }
  }
  return Image(grid, std::move(values));
}

void save_image(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  const int m = image.side();
  out << "P5\n" << m << " " << m << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      double v = image(r, c);
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      row[static_cast<std::size_t>(c)] = static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
    }
    out.write(reinterpret_cast<const char*>(row.data()), m);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace equisym
