#pragma once

#include "threshforge/types.hpp"

#include <string>

namespace threshforge {

/// Reads a PGM (P2 or P5, maxval 255) or an 8-bit grayscale/RGB PNG,
/// sniffing the format from the file's magic bytes. RGB input is
/// converted through to_grayscale. 16-bit, palette and alpha images
/// are rejected with FormatError.
GrayImage read_image(const std::string& path);

/// Writes PGM P5 for .pgm paths and 8-bit grayscale PNG for .png.
void write_image(const GrayImage& img, const std::string& path);

/// Masks serialize with label 1 as intensity 255.
void write_mask(const BinaryMask& mask, const std::string& path);

}  // namespace threshforge
