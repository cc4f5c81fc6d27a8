#include "tsvdec/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <png.h>

namespace tsvdec {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// --- PGM (binary P5, maxval 255) ---

int pgm_next_token(std::FILE* fp, char* buf, int cap) {
    int c;
    do {
        c = std::fgetc(fp);
        if (c == '#') // comment to end of line
            do { c = std::fgetc(fp); } while (c != '\n' && c != EOF);
    } while (c == ' ' || c == '\t' || c == '\n' || c == '\r');
    int len = 0;
    while (c != EOF && !std::isspace(c) && len < cap - 1) {
        buf[len++] = static_cast<char>(c);
        c = std::fgetc(fp);
    }
    buf[len] = '\0';
    return len;
}

ScalarField load_pgm(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);

    char tok[64];
    if (!pgm_next_token(fp.get(), tok, sizeof tok) || std::strcmp(tok, "P5") != 0)
        throw IoError(path + ": not a binary PGM (P5) file");
    pgm_next_token(fp.get(), tok, sizeof tok);
    const int w = std::atoi(tok);
    pgm_next_token(fp.get(), tok, sizeof tok);
    const int h = std::atoi(tok);
    pgm_next_token(fp.get(), tok, sizeof tok);
    const int maxv = std::atoi(tok);
    if (w < 4 || h < 4) throw IoError(path + ": image smaller than 4x4");
    if (maxv != 255) throw IoError(path + ": only maxval 255 is supported");

    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h);
    if (std::fread(bytes.data(), 1, bytes.size(), fp.get()) != bytes.size())
        throw IoError(path + ": truncated pixel data");

    ScalarField f(h, w);
    for (std::size_t k = 0; k < bytes.size(); ++k) f.data()[k] = bytes[k] / 255.0;
    return f;
}

void save_pgm(const std::string& path, const std::vector<std::uint8_t>& bytes, int h, int w) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path);
    std::fprintf(fp.get(), "P5\n%d %d\n255\n", w, h);
    if (std::fwrite(bytes.data(), 1, bytes.size(), fp.get()) != bytes.size())
        throw IoError("short write to " + path);
}

// --- PNG via libpng ---

ScalarField load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng init failed");
    }
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rowPtrs;
    int w = 0, h = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": PNG decode failed");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);
    w = static_cast<int>(png_get_image_width(png, info));
    h = static_cast<int>(png_get_image_height(png, info));
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (depth == 16) png_set_strip_16(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE)
        png_set_rgb_to_gray_fixed(png, 1 /*silent*/, -1, -1); // default luma weights
    png_read_update_info(png, info);

    pixels.resize(static_cast<std::size_t>(w) * h);
    rowPtrs.resize(h);
    for (int i = 0; i < h; ++i) rowPtrs[i] = pixels.data() + static_cast<std::size_t>(i) * w;
    png_read_image(png, rowPtrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    if (w < 4 || h < 4) throw IoError(path + ": image smaller than 4x4");
    ScalarField f(h, w);
    for (std::size_t k = 0; k < pixels.size(); ++k) f.data()[k] = pixels[k] / 255.0;
    return f;
}

void save_png(const std::string& path, const std::vector<std::uint8_t>& bytes, int h, int w) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG encode failed");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int i = 0; i < h; ++i)
        png_write_row(png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(i) * w));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::uint8_t to_byte(double x) {
    const double c = std::clamp(x, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(255.0 * c));
}

void put_u32le(std::uint8_t* p, std::uint32_t v) {
    p[0] = v & 0xff;
    p[1] = (v >> 8) & 0xff;
    p[2] = (v >> 16) & 0xff;
    p[3] = (v >> 24) & 0xff;
}

std::uint32_t get_u32le(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

} // namespace

ScalarField load_image(const std::string& path) {
    if (has_suffix(path, ".pgm") || has_suffix(path, ".PGM")) return load_pgm(path);
    if (has_suffix(path, ".png") || has_suffix(path, ".PNG")) return load_png(path);
    throw IoError(path + ": unsupported format (expect .pgm or .png)");
}

void save_image(const ScalarField& f, const std::string& path, SaveMode mode) {
    const int h = f.rows(), w = f.cols();
    std::vector<std::uint8_t> bytes(f.size());

    switch (mode) {
    case SaveMode::Clamp01:
        for (std::size_t k = 0; k < f.size(); ++k) bytes[k] = to_byte(f.data()[k]);
        break;
    case SaveMode::Texture:
        for (std::size_t k = 0; k < f.size(); ++k) bytes[k] = to_byte(f.data()[k] / 2.0 + 0.5);
        break;
    case SaveMode::Normalize: {
        const double lo = field_min(f), hi = field_max(f);
        if (hi > lo) {
            const double s = 1.0 / (hi - lo);
            for (std::size_t k = 0; k < f.size(); ++k) bytes[k] = to_byte((f.data()[k] - lo) * s);
        } // else: degenerate range, all zero
        break;
    }
    }

    if (has_suffix(path, ".pgm") || has_suffix(path, ".PGM"))
        save_pgm(path, bytes, h, w);
    else if (has_suffix(path, ".png") || has_suffix(path, ".PNG"))
        save_png(path, bytes, h, w);
    else
        throw IoError(path + ": unsupported format (expect .pgm or .png)");
}

void write_raw_field(const ScalarField& f, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path);
    std::uint8_t header[16] = {'T', 'S', 'V', 'F'};
    put_u32le(header + 4, static_cast<std::uint32_t>(f.rows()));
    put_u32le(header + 8, static_cast<std::uint32_t>(f.cols()));
    put_u32le(header + 12, 0);
    if (std::fwrite(header, 1, 16, fp.get()) != 16 ||
        std::fwrite(f.data(), sizeof(double), f.size(), fp.get()) != f.size())
        throw IoError("short write to " + path);
}

ScalarField read_raw_field(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);
    std::uint8_t header[16];
    if (std::fread(header, 1, 16, fp.get()) != 16 || std::memcmp(header, "TSVF", 4) != 0)
        throw IoError(path + ": not a TSVF raw field");
    const int rows = static_cast<int>(get_u32le(header + 4));
    const int cols = static_cast<int>(get_u32le(header + 8));
    ScalarField f(rows, cols);
    if (std::fread(f.data(), sizeof(double), f.size(), fp.get()) != f.size())
        throw IoError(path + ": truncated sample data");
    return f;
}

} // namespace tsvdec
