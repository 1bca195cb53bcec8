#include "rwls/poly_matrix.hpp"

#include <stdexcept>

namespace rwls {

PolyMatrix PolyMatrix::identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one();
    return m;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    PolyMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            LaurentPoly acc;
            for (int k = 0; k < a.cols; ++k) acc = add(acc, mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = acc;
        }
    return out;
}

PolyMatrix mat_scale(const PolyMatrix& a, const LaurentPoly& p) {
    PolyMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = mul(a.e[i], p);
    return out;
}

namespace {

LaurentPoly det2(const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d) {
    return sub(mul(a, d), mul(b, c));
}

} // namespace

LaurentPoly mat_det3(const PolyMatrix& a) {
    if (a.rows != 3 || a.cols != 3) throw std::invalid_argument("mat_det3: matrix must be 3x3");
    LaurentPoly d;
    d = mul(a.at(0, 0), det2(a.at(1, 1), a.at(1, 2), a.at(2, 1), a.at(2, 2)));
    d = sub(d, mul(a.at(0, 1), det2(a.at(1, 0), a.at(1, 2), a.at(2, 0), a.at(2, 2))));
    d = add(d, mul(a.at(0, 2), det2(a.at(1, 0), a.at(1, 1), a.at(2, 0), a.at(2, 1))));
    return d;
}

PolyMatrix mat_adjugate3(const PolyMatrix& a) {
    if (a.rows != 3 || a.cols != 3) throw std::invalid_argument("mat_adjugate3: matrix must be 3x3");
    PolyMatrix out(3, 3);
    // adj(A)[i][j] = (-1)^(i+j) * minor(j, i): cofactor matrix transposed.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            // Cyclic index choice absorbs the cofactor sign.
            out.at(i, j) = det2(a.at(r0, c0), a.at(r0, c1), a.at(r1, c0), a.at(r1, c1));
        }
    }
    return out;
}

double mat_max_abs_diff(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.e.size(); ++i) m = std::max(m, max_abs_diff(a.e[i], b.e[i]));
    return m;
}

} // namespace rwls
