#include "rwls/laurent.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace rwls {

namespace {

int floor_mod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

} // namespace

LaurentPoly::LaurentPoly(int lo_exp, std::vector<double> coeffs) : lo(lo_exp), c(std::move(coeffs)) {
    normalize();
}

LaurentPoly LaurentPoly::monomial(double a, int exp) {
    LaurentPoly p;
    if (a != 0.0) {
        p.lo = exp;
        p.c = {a};
    }
    return p;
}

double LaurentPoly::at(int exp) const {
    if (is_zero() || exp < lo || exp > hi()) return 0.0;
    return c[static_cast<std::size_t>(exp - lo)];
}

void LaurentPoly::normalize(double tol) {
    std::size_t first = 0;
    while (first < c.size() && std::abs(c[first]) < tol) ++first;
    std::size_t last = c.size();
    while (last > first && std::abs(c[last - 1]) < tol) --last;
    if (first == last) {
        lo = 0;
        c.clear();
        return;
    }
    lo += static_cast<int>(first);
    c = std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(first),
                            c.begin() + static_cast<std::ptrdiff_t>(last));
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.hi(), b.hi());
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (int k = 0; k < a.length(); ++k) out[static_cast<std::size_t>(a.lo + k - lo)] += a.c[static_cast<std::size_t>(k)];
    for (int k = 0; k < b.length(); ++k) out[static_cast<std::size_t>(b.lo + k - lo)] += b.c[static_cast<std::size_t>(k)];
    return LaurentPoly(lo, std::move(out));
}

LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) {
    return add(a, scale(b, -1.0));
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly::zero();
    std::vector<double> out(static_cast<std::size_t>(a.length() + b.length() - 1), 0.0);
    for (int i = 0; i < a.length(); ++i)
        for (int j = 0; j < b.length(); ++j)
            out[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    return LaurentPoly(a.lo + b.lo, std::move(out));
}

LaurentPoly scale(const LaurentPoly& p, double a) {
    if (a == 0.0 || p.is_zero()) return LaurentPoly::zero();
    LaurentPoly out = p;
    for (double& v : out.c) v *= a;
    out.normalize();
    return out;
}

LaurentPoly shift(const LaurentPoly& p, int k) {
    LaurentPoly out = p;
    if (!out.is_zero()) out.lo += k;
    return out;
}

LaurentPoly upsample(const LaurentPoly& p, int m) {
    if (m < 1) throw std::invalid_argument("upsample: m must be >= 1");
    if (p.is_zero() || m == 1) return p;
    LaurentPoly out;
    out.lo = p.lo * m;
    out.c.assign(static_cast<std::size_t>((p.length() - 1) * m + 1), 0.0);
    for (int k = 0; k < p.length(); ++k) out.c[static_cast<std::size_t>(k * m)] = p.c[static_cast<std::size_t>(k)];
    out.normalize();
    return out;
}

LaurentPoly polyphase_split(const LaurentPoly& p, int m, int phase) {
    if (m < 1) throw std::invalid_argument("polyphase_split: m must be >= 1");
    if (phase < 0 || phase >= m) throw std::invalid_argument("polyphase_split: phase out of [0, m)");
    LaurentPoly out;
    if (p.is_zero()) return out;
    for (int k = 0; k < p.length(); ++k) {
        const int e = p.lo + k;
        if (floor_mod(e, m) != phase) continue;
        const int r = (e - phase) / m; // exact: m | (e - phase)
        out = add(out, LaurentPoly::monomial(p.c[static_cast<std::size_t>(k)], r));
    }
    return out;
}

LaurentPoly polyphase_merge(const std::vector<LaurentPoly>& phases) {
    const int m = static_cast<int>(phases.size());
    LaurentPoly out;
    for (int k = 0; k < m; ++k) out = add(out, shift(upsample(phases[static_cast<std::size_t>(k)], m), k));
    return out;
}

double max_abs_diff(const LaurentPoly& a, const LaurentPoly& b) {
    const LaurentPoly d = sub(a, b);
    double m = 0.0;
    for (double v : d.c) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> eval_unit_circle(const LaurentPoly& p, double omega) {
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < p.length(); ++k) {
        const double e = static_cast<double>(p.lo + k) * omega;
        acc += p.c[static_cast<std::size_t>(k)] * std::complex<double>(std::cos(e), std::sin(e));
    }
    return acc;
}

std::vector<std::pair<double, std::complex<double>>> freq_response(const LaurentPoly& p, int n_points) {
    if (n_points < 2) throw std::invalid_argument("freq_response: n_points must be >= 2");
    std::vector<std::pair<double, std::complex<double>>> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double w = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        out.emplace_back(w, eval_unit_circle(p, w));
    }
    return out;
}

} // namespace rwls
