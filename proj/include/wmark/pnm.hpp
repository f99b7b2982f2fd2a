#pragma once

// Netpbm I/O. Grayscale images are PGM (P5 written, P5/P2 read); binary
// logos are PBM (P4 written, P4/P1 read) or PGM with any nonzero pixel = 1.
// All readers throw std::runtime_error on malformed or unreadable files.

#include <filesystem>
#include <iosfwd>

#include "wmark/image.hpp"
#include "wmark/watermark.hpp"

namespace wmark::pnm {

GrayImage read_pgm(std::istream& is);
GrayImage read_pgm(const std::filesystem::path& path);

void write_pgm(std::ostream& os, const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

/// PBM raster bit 1 (black) maps to watermark bit 1.
WatermarkBits read_pbm(std::istream& is);
void write_pbm(std::ostream& os, const WatermarkBits& bits);

/// Reads a logo from PBM or PGM, dispatching on the magic number.
WatermarkBits read_logo(const std::filesystem::path& path);

/// Writes PBM unless the extension is .pgm, in which case 1 bits become 255.
void write_logo(const std::filesystem::path& path, const WatermarkBits& bits);

}  // namespace wmark::pnm
