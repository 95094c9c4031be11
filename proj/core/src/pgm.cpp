#include "chaosync/image.hpp"

#include "chaosync/errors.hpp"
#include "chaosync/rng.hpp"

#include <cmath>
#include <fstream>

namespace chaosync {

namespace {

// reads the next PGM header token, skipping whitespace and # comments
std::string next_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok += static_cast<char>(c);
    }
    if (tok.empty()) throw io_error(path + ": truncated pgm header");
    return tok;
}

std::size_t parse_dim(const std::string& tok, const std::string& path) {
    std::size_t v = 0;
    for (const char c : tok) {
        if (c < '0' || c > '9') throw io_error(path + ": malformed pgm header field '" + tok + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

} // namespace

image_matrix read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path);
    if (next_token(f, path) != "P5") throw io_error(path + ": not a binary pgm (P5) file");
    image_matrix img;
    img.cols = parse_dim(next_token(f, path), path);
    img.rows = parse_dim(next_token(f, path), path);
    const std::size_t maxval = parse_dim(next_token(f, path), path);
    if (maxval != 255) throw io_error(path + ": unsupported pgm maxval " + std::to_string(maxval));
    if (img.rows == 0 || img.cols == 0) throw io_error(path + ": empty image");
    img.pixels.resize(img.rows * img.cols);
    f.read(reinterpret_cast<char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw io_error(path + ": truncated pixel data");
    return img;
}

void write_pgm(const image_matrix& img, const std::string& path) {
    if (img.pixels.size() != img.rows * img.cols)
        throw dimension_mismatch("pixel buffer does not match image dimensions");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (!f) throw io_error("write failed: " + path);
}

std::vector<std::int64_t> image_to_symbols(const image_matrix& img) {
    if (img.pixels.size() != img.rows * img.cols)
        throw dimension_mismatch("pixel buffer does not match image dimensions");
    std::vector<std::int64_t> out;
    out.reserve(img.pixels.size());
    for (std::size_t c = 0; c < img.cols; ++c)
        for (std::size_t r = 0; r < img.rows; ++r) out.push_back(img.at(r, c));
    return out;
}

image_matrix symbols_to_image(const std::vector<std::int64_t>& symbols, std::size_t rows,
                              std::size_t cols) {
    if (symbols.size() != rows * cols)
        throw dimension_mismatch("symbol count does not match image dimensions");
    image_matrix img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.resize(rows * cols);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r, ++k) {
            const std::int64_t v = symbols[k];
            if (v < 0 || v > 255)
                throw pixel_out_of_range("pixel value " + std::to_string(v) + " outside 0..255");
            img.at(r, c) = static_cast<std::uint8_t>(v);
        }
    return img;
}

image_matrix add_image_noise(const image_matrix& img, double variance, std::uint64_t seed) {
    if (variance < 0.0) throw negative_sigma();
    image_matrix out = img;
    if (variance == 0.0) return out;
    const double sd = std::sqrt(variance);
    gaussian_stream g(seed);
    for (std::uint8_t& p : out.pixels) {
        double v = static_cast<double>(p) / 255.0 + sd * g.next();
        v = std::min(1.0, std::max(0.0, v));
        p = static_cast<std::uint8_t>(std::llround(v * 255.0));
    }
    return out;
}

} // namespace chaosync
