#pragma once

#include <vector>

#include "rwls/laurent.hpp"

namespace rwls {

/// Rectangular matrix over the Laurent-polynomial ring. Row-major storage.
struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<LaurentPoly> e;

    PolyMatrix() = default;
    PolyMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}

    static PolyMatrix identity(int n);

    LaurentPoly& at(int r, int c) { return e[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    const LaurentPoly& at(int r, int c) const { return e[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_scale(const PolyMatrix& a, const LaurentPoly& p);

LaurentPoly mat_det3(const PolyMatrix& a);
PolyMatrix mat_adjugate3(const PolyMatrix& a); // A * adj(A) = det(A) * I

/// Largest |coefficient| of (A - B) over all entries.
double mat_max_abs_diff(const PolyMatrix& a, const PolyMatrix& b);

} // namespace rwls
