#include "rwls/image.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rwls {

namespace {

int next_header_int(std::istream& in, const std::string& path) {
    // Skip whitespace and '#' comments, then read one integer.
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            in.unget();
            break;
        }
        ch = in.get();
    }
    int value = 0;
    if (!(in >> value)) throw std::runtime_error("read_pgm: malformed header in " + path);
    return value;
}

} // namespace

ImageGray read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') throw std::runtime_error("read_pgm: not a binary PGM (P5): " + path);
    const int w = next_header_int(in, path);
    const int h = next_header_int(in, path);
    const int maxval = next_header_int(in, path);
    if (w <= 0 || h <= 0) throw std::runtime_error("read_pgm: bad dimensions in " + path);
    if (maxval <= 0 || maxval > 255) throw std::runtime_error("read_pgm: only 8-bit PGM supported: " + path);
    in.get(); // single whitespace byte after maxval
    std::vector<unsigned char> buf(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
        throw std::runtime_error("read_pgm: truncated pixel data in " + path);
    ImageGray img;
    img.pixels.resize(h, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            img.pixels(r, c) = static_cast<double>(buf[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)]);
    return img;
}

void write_pgm(const ImageGray& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path + " for writing");
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<unsigned char> buf(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height()));
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const double v = std::round(img.pixels(r, c));
            buf[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width()) + static_cast<std::size_t>(c)] =
                static_cast<unsigned char>(std::min(255.0, std::max(0.0, v)));
        }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write_pgm: write failed for " + path);
}

std::vector<double> vectorize(const ImageGray& img, Axis axis) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height()));
    if (axis == Axis::Row) {
        for (int r = 0; r < img.height(); ++r)
            for (int c = 0; c < img.width(); ++c) out.push_back(img.pixels(r, c));
    } else {
        for (int c = 0; c < img.width(); ++c)
            for (int r = 0; r < img.height(); ++r) out.push_back(img.pixels(r, c));
    }
    return out;
}

} // namespace rwls
