#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace rwls {

/// Finitely supported real Laurent polynomial: sum_k c[k] * z^(lo + k).
///
/// Exponents are signed; positive powers (advances) are first-class, so
/// non-causal filters such as z^2 need no special casing. The zero
/// polynomial is the canonical empty form (lo == 0, c empty). After
/// normalize(), the first and last stored coefficients are nonzero.
struct LaurentPoly {
    int lo = 0;
    std::vector<double> c;

    LaurentPoly() = default;
    LaurentPoly(int lo_exp, std::vector<double> coeffs);

    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return monomial(1.0, 0); }
    static LaurentPoly monomial(double a, int exp);

    bool is_zero() const { return c.empty(); }
    int hi() const { return lo + static_cast<int>(c.size()) - 1; }
    int length() const { return static_cast<int>(c.size()); }

    /// Coefficient of z^exp (0 outside the stored range).
    double at(int exp) const;

    /// Trim leading/trailing coefficients with |c| < tol. Keeps lifting
    /// cascades finitely supported despite floating-point residue.
    void normalize(double tol = kTrimTol);

    static constexpr double kTrimTol = 1e-12;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(const LaurentPoly& p, double a);
LaurentPoly shift(const LaurentPoly& p, int k);    // p(z) * z^k
LaurentPoly upsample(const LaurentPoly& p, int m); // p(z^m)

/// Type-1 polyphase component: collects the exponents of p congruent to
/// `phase` (mod m) and divides them down, q(z) = sum_r p[r*m+phase] z^r,
/// so that p(z) = sum_phase z^phase q_phase(z^m). Residues use the
/// mathematical (non-negative) mod, so negative exponents split correctly.
LaurentPoly polyphase_split(const LaurentPoly& p, int m, int phase);

/// Inverse of polyphase_split: p(z) = sum_k z^k phases[k](z^m).
LaurentPoly polyphase_merge(const std::vector<LaurentPoly>& phases);

double max_abs_diff(const LaurentPoly& a, const LaurentPoly& b);

std::complex<double> eval_unit_circle(const LaurentPoly& p, double omega);

/// p evaluated at z = e^{j w}, w uniform on [0, pi], n_points samples.
std::vector<std::pair<double, std::complex<double>>> freq_response(const LaurentPoly& p,
                                                                   int n_points);

} // namespace rwls
