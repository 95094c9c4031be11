#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chaosync {

struct image_matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> pixels; // row-major

    std::uint8_t& at(std::size_t r, std::size_t c) { return pixels[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
    bool same_shape(const image_matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// binary PGM (P5), maxval 255
image_matrix read_pgm(const std::string& path);
void write_pgm(const image_matrix& img, const std::string& path);

// column-major flattening: s11, s21, ..., sm1, s12, ...
std::vector<std::int64_t> image_to_symbols(const image_matrix& img);
image_matrix symbols_to_image(const std::vector<std::int64_t>& symbols, std::size_t rows,
                              std::size_t cols);

// gaussian noise with the given variance on [0,1]-scaled intensities,
// clipped and re-quantized to 8 bits
image_matrix add_image_noise(const image_matrix& img, double variance, std::uint64_t seed);

} // namespace chaosync
