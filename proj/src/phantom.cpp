#include "tsvdec/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsvdec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct Rect {
    int r0, r1, c0, c1; // half-open
    bool contains(int i, int j) const { return i >= r0 && i < r1 && j >= c0 && j < c1; }
    /// Chebyshev distance to the rectangle border (inside and outside).
    int edge_dist(int i, int j) const {
        if (contains(i, j))
            return std::min(std::min(i - r0, r1 - 1 - i), std::min(j - c0, c1 - 1 - j));
        return std::max(std::max(r0 - i, i - (r1 - 1)), std::max(c0 - j, j - (c1 - 1)));
    }
};

} // namespace

PhantomKind phantom_kind_from_string(const std::string& name) {
    if (name == "stripes") return PhantomKind::Stripes;
    if (name == "tiles") return PhantomKind::Tiles;
    if (name == "two-scale" || name == "twoscale") return PhantomKind::TwoScale;
    throw std::invalid_argument("unknown phantom kind: " + name);
}

Phantom make_phantom(PhantomKind kind, int rows, int cols, std::uint64_t seed) {
    if (rows < 32 || cols < 32)
        throw std::invalid_argument("make_phantom: grid must be at least 32x32");

    std::uint64_t rng = seed;
    const double phase1 = kTwoPi * unit_double(rng);
    const double phase2 = kTwoPi * unit_double(rng);

    Phantom ph;
    ph.f = ScalarField(rows, cols);
    PhantomMasks& mk = ph.masks;
    mk.rows = rows;
    mk.cols = cols;
    const std::size_t npix = static_cast<std::size_t>(rows) * cols;
    mk.boundaryBand.assign(npix, 0);
    mk.textureInterior.assign(npix, 0);
    mk.flatInterior.assign(npix, 0);
    auto idx = [cols](int i, int j) { return static_cast<std::size_t>(i) * cols + j; };

    switch (kind) {
    case PhantomKind::Stripes: {
        // flat left half, fine vertical stripes on the right; the dividing
        // column and the periodic wrap column are both region boundaries
        const int jStep = cols / 2;
        const int margin = std::min(13, std::max(2, cols / 4 - 3));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double v = 0.35;
                if (j >= jStep) v = 0.62 + 0.15 * std::sin(kTwoPi * j / 4.0 + phase1);
                ph.f(i, j) = v;
                if (std::abs(j - jStep) <= 1)
                    mk.boundaryBand[idx(i, j)] = 1;
                else if (j >= jStep + margin && j <= cols - 1 - margin)
                    mk.textureInterior[idx(i, j)] = 1;
                else if (j >= margin && j <= jStep - 1 - margin)
                    mk.flatInterior[idx(i, j)] = 1;
            }
        break;
    }
    case PhantomKind::Tiles: {
        // 4x4-block checker patch on a flat background
        const Rect patch{rows / 4, 3 * rows / 4, cols / 4, 3 * cols / 4};
        const int sign = (splitmix64(rng) & 1) ? 1 : -1;
        const int margin = std::min(8, std::max(2, (patch.r1 - patch.r0) / 2 - 2));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double v = 0.35;
                const bool in = patch.contains(i, j);
                if (in) {
                    const int checker = ((i / 4 + j / 4) % 2) * 2 - 1;
                    v += 0.20 + 0.25 * sign * checker;
                }
                ph.f(i, j) = v;
                const int d = patch.edge_dist(i, j);
                if (d <= 1)
                    mk.boundaryBand[idx(i, j)] = 1;
                else if (in && d >= margin)
                    mk.textureInterior[idx(i, j)] = 1;
                else if (!in && d >= margin)
                    mk.flatInterior[idx(i, j)] = 1;
            }
        break;
    }
    case PhantomKind::TwoScale: {
        // coarse canvas carrier everywhere, 4x finer stitches inside a patch
        const Rect patch{rows / 4, 3 * rows / 4, cols / 4, 3 * cols / 4};
        const int kc = std::max(1, static_cast<int>(std::lround(rows / 16.0)));
        const int kf = std::max(2, static_cast<int>(std::lround(4.0 * kc * cols / rows)));
        ph.coarseBin[0] = kc;
        ph.coarseBin[1] = 0;
        ph.fineBin[0] = 0;
        ph.fineBin[1] = kf;
        const int margin = std::min(8, std::max(2, (patch.r1 - patch.r0) / 2 - 2));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double v = 0.5 + 0.10 * std::sin(kTwoPi * kc * i / rows + phase1);
                const bool in = patch.contains(i, j);
                if (in) v += 0.12 * std::sin(kTwoPi * kf * j / cols + phase2);
                ph.f(i, j) = v;
                const int d = patch.edge_dist(i, j);
                if (d <= 1)
                    mk.boundaryBand[idx(i, j)] = 1;
                else if (in && d >= margin)
                    mk.textureInterior[idx(i, j)] = 1;
                else if (!in && d >= margin)
                    mk.flatInterior[idx(i, j)] = 1;
            }
        break;
    }
    }

    return ph;
}

} // namespace tsvdec
