#include "wmark/pnm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmark::pnm {
namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& is) {
  while (true) {
    const int c = is.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(is, ignored);
    } else if (c != EOF && std::isspace(c)) {
      is.get();
    } else {
      return;
    }
  }
}

std::size_t read_header_value(std::istream& is, const char* what) {
  skip_separators(is);
  long long v = -1;
  if (!(is >> v) || v <= 0) throw std::runtime_error(std::string("PNM: bad ") + what);
  return static_cast<std::size_t>(v);
}

std::string read_magic(std::istream& is) {
  char magic[2] = {0, 0};
  if (!is.read(magic, 2) || magic[0] != 'P') throw std::runtime_error("PNM: missing magic number");
  return std::string(magic, 2);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

GrayImage read_gray_body(std::istream& is, const std::string& magic) {
  const std::size_t width = read_header_value(is, "width");
  const std::size_t height = read_header_value(is, "height");
  const std::size_t maxval = read_header_value(is, "maxval");
  if (maxval > 255) throw std::runtime_error("PGM: only 8-bit images are supported");

  std::vector<std::uint8_t> data(width * height);
  if (magic == "P5") {
    is.get();  // single whitespace after maxval
    if (!is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()))) {
      throw std::runtime_error("PGM: truncated pixel data");
    }
  } else {
    for (auto& p : data) {
      skip_separators(is);
      int v = -1;
      if (!(is >> v) || v < 0 || static_cast<std::size_t>(v) > maxval) {
        throw std::runtime_error("PGM: bad ASCII pixel");
      }
      p = static_cast<std::uint8_t>(v);
    }
  }
  if (maxval != 255) {
    for (auto& p : data) {
      p = static_cast<std::uint8_t>(std::lround(p * 255.0 / static_cast<double>(maxval)));
    }
  }
  return GrayImage(width, height, std::move(data));
}

WatermarkBits read_bits_body(std::istream& is, const std::string& magic) {
  const std::size_t width = read_header_value(is, "width");
  const std::size_t height = read_header_value(is, "height");
  std::vector<std::uint8_t> bits(width * height);
  if (magic == "P4") {
    is.get();
    const std::size_t row_bytes = (width + 7) / 8;
    std::vector<unsigned char> row(row_bytes);
    for (std::size_t y = 0; y < height; ++y) {
      if (!is.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row_bytes))) {
        throw std::runtime_error("PBM: truncated bit data");
      }
      for (std::size_t x = 0; x < width; ++x) {
        bits[y * width + x] = (row[x / 8] >> (7 - x % 8)) & 1U;
      }
    }
  } else {
    for (auto& b : bits) {
      skip_separators(is);
      const int c = is.get();
      if (c != '0' && c != '1') throw std::runtime_error("PBM: bad ASCII bit");
      b = c == '1' ? 1 : 0;
    }
  }
  return WatermarkBits(width, height, std::move(bits));
}

}  // namespace

GrayImage read_pgm(std::istream& is) {
  const std::string magic = read_magic(is);
  if (magic != "P5" && magic != "P2") throw std::runtime_error("not a PGM file (magic " + magic + ")");
  return read_gray_body(is, magic);
}

GrayImage read_pgm(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    return read_pgm(is);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& os, const GrayImage& img) {
  os << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels().data()),
           static_cast<std::streamsize>(img.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  auto os = open_out(path);
  write_pgm(os, img);
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

WatermarkBits read_pbm(std::istream& is) {
  const std::string magic = read_magic(is);
  if (magic != "P4" && magic != "P1") throw std::runtime_error("not a PBM file (magic " + magic + ")");
  return read_bits_body(is, magic);
}

void write_pbm(std::ostream& os, const WatermarkBits& bits) {
  os << "P4\n" << bits.width() << ' ' << bits.height() << '\n';
  const std::size_t row_bytes = (bits.width() + 7) / 8;
  std::vector<unsigned char> row(row_bytes);
  for (std::size_t y = 0; y < bits.height(); ++y) {
    std::ranges::fill(row, 0);
    for (std::size_t x = 0; x < bits.width(); ++x) {
      if (bits[y * bits.width() + x]) row[x / 8] |= static_cast<unsigned char>(0x80U >> (x % 8));
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row_bytes));
  }
}

WatermarkBits read_logo(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    const std::string magic = read_magic(is);
    if (magic == "P4" || magic == "P1") return read_bits_body(is, magic);
    if (magic == "P5" || magic == "P2") return WatermarkBits::from_image(read_gray_body(is, magic));
    throw std::runtime_error("unsupported logo format (magic " + magic + ")");
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_logo(const std::filesystem::path& path, const WatermarkBits& bits) {
  auto os = open_out(path);
  std::string ext = path.extension().string();
  std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".pgm") {
    write_pgm(os, bits.to_image());
  } else {
    write_pbm(os, bits);
  }
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace wmark::pnm
