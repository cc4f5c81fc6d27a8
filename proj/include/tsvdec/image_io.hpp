#pragma once

#include <string>

#include "tsvdec/field.hpp"

namespace tsvdec {

/// Thrown for unreadable, unwritable or malformed image files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Loads an 8-bit grayscale image (binary P5 PGM with maxval 255, or a PNG;
/// color PNGs are converted to luma). Samples map to [0,1] as value/255.
ScalarField load_image(const std::string& path);

enum class SaveMode {
    Clamp01,   ///< round(255 * clamp(x, 0, 1))
    Texture,   ///< round(255 * clamp(x/2 + 0.5, 0, 1)); zero maps to mid-gray
    Normalize, ///< affine [min, max] -> [0, 255]; a constant field maps to 0
};

/// Writes an 8-bit grayscale image; format chosen by extension (.pgm or .png).
void save_image(const ScalarField& f, const std::string& path, SaveMode mode);

/// Raw float dump: 16-byte header (magic "TSVF", u32 rows, u32 cols,
/// u32 reserved = 0, all little-endian) followed by row-major float64 samples.
void write_raw_field(const ScalarField& f, const std::string& path);
ScalarField read_raw_field(const std::string& path);

} // namespace tsvdec
