#pragma once

#include <string>
#include <vector>

#include "rwls/fbm.hpp"

namespace rwls {

enum class Axis { Row, Col };

/// Grayscale image; pixels(r, c) with r in [0, height), c in [0, width).
/// Values are doubles, nominally [0, 255] for 8-bit sources.
struct ImageGray {
    Mat pixels;

    ImageGray() = default;
    explicit ImageGray(Mat m) : pixels(std::move(m)) {}

    int width() const { return static_cast<int>(pixels.cols()); }
    int height() const { return static_cast<int>(pixels.rows()); }
};

/// Binary PGM (P5), 8-bit only. Comments and arbitrary whitespace in the
/// header are handled; maxval > 255 is rejected.
ImageGray read_pgm(const std::string& path);

/// Writes P5 with maxval 255; pixels are rounded and clipped to [0, 255].
void write_pgm(const ImageGray& img, const std::string& path);

/// Row-wise (row-major) or column-wise (column-major) vectorization.
std::vector<double> vectorize(const ImageGray& img, Axis axis);

} // namespace rwls
