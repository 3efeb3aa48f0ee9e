#pragma once

#include "scenetext/eval.hpp"
#include "scenetext/image.hpp"

#include <string>
#include <vector>

namespace scenetext {

/// Reads an 8-bit PNG, PGM or PPM (by magic bytes). 16-bit, palette and
/// alpha PNGs are converted to plain 8-bit gray or RGB.
ImageU8 read_image(const std::string& path);

/// Writes 8-bit grayscale (1ch) or RGB (3ch) PNG.
void write_png(const std::string& path, const ImageU8& img);

/// Mask as a binary PNG: members 255, rest 0.
void write_png(const std::string& path, const PixelMask& mask);

ImageU8 mask_to_u8(const PixelMask& mask);
PixelMask mask_from_u8(const ImageU8& img);  // nonzero = member

/// Boxes as either a JSON array of {x,y,w,h,...} objects or whitespace
/// separated "x y w h" lines; the format is sniffed.
std::vector<Box> read_boxes(const std::string& path);

void write_boxes_text(const std::string& path, const std::vector<Box>& boxes);

}  // namespace scenetext
