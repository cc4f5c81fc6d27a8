#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsvdec/field.hpp"

namespace tsvdec {

enum class PhantomKind { Stripes, Tiles, TwoScale };

PhantomKind phantom_kind_from_string(const std::string& name);

/// Region masks for property checks. The three masks are disjoint; pixels in
/// none of them form the declared don't-care band (step haloes, the frame
/// band where the periodic wrap of the baseline ramp lands, and everything
/// in between).
struct PhantomMasks {
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> boundaryBand;
    std::vector<std::uint8_t> textureInterior;
    std::vector<std::uint8_t> flatInterior;
};

struct Phantom {
    ScalarField f;
    PhantomMasks masks;
    /// Half-spectrum bins (row, col) of the two carriers; set for TwoScale.
    int coarseBin[2] = {0, 0};
    int fineBin[2] = {0, 0};
};

/// Deterministic synthetic test images. All kinds sit on a linear intensity
/// ramp: the ramp keeps the symmetric-variation weight strictly away from
/// its floor everywhere (the frozen-coefficient g-solve needs the weight
/// above ~1/sqrt(2 cFrozen) to be stable), while adding no texture and no
/// boundaries of its own.
///
///  - stripes:  flat half | fine sinusoidal stripes, vertical step boundary
///  - tiles:    2x2-checker patch on a flat background
///  - two-scale: coarse carrier everywhere, 4x finer carrier inside a patch
Phantom make_phantom(PhantomKind kind, int rows, int cols, std::uint64_t seed);

} // namespace tsvdec
