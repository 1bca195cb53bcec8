#pragma once

#include <array>
#include <nlohmann/json.hpp>
#include <utility>

#include "rwls/fbm.hpp"
#include "rwls/laurent.hpp"
#include "rwls/poly_matrix.hpp"

namespace rwls {

enum class BankKind { Rational23, Dyadic };

/// One lifting stage: a predict filter T(z) or an update filter S(z).
struct LiftingStep {
    enum class Kind { Predict, Update };
    Kind kind;
    LaurentPoly filter;
};

/// Two-channel analysis/synthesis filter set. For kind Rational23 the
/// channels carry 2/3 (lowpass) and 1/3 (highpass) of the input rate; for
/// kind Dyadic both carry 1/2. `gain` and `delay` record the scalar c and
/// advance n0 of the polyphase product R(z)E(z) = c z^-n0 I; synthesis
/// compensates them so round trips are alignment-exact.
struct FilterBank {
    BankKind kind = BankKind::Rational23;
    LaurentPoly g_l, g_h; // analysis low / high
    LaurentPoly f_l, f_h; // synthesis low / high
    double gain = 1.0;    // c
    int delay = 0;        // n0
    nlohmann::json metadata;

    int decimation() const { return kind == BankKind::Dyadic ? 2 : 3; }
};

/// Uniformly decimated 3-band equivalent of the rational bank.
struct MBandBank {
    std::array<LaurentPoly, 3> analysis;
    std::array<LaurentPoly, 3> synthesis;
    double gain = 1.0;
    int delay = 0;
};

/// 3-band bank that only routes samples by index residue: G_i = z^i,
/// F_i = z^-i.
MBandBank lazy_mband();

/// Dyadic bank routing even samples to the low channel, odd to the high.
FilterBank lazy_dyadic();
FilterBank lazy_rational();

/// 3-band -> 2-channel rational conversion:
///   g_l = G0(z^2) + z^3 G1(z^2),  f_l = F0(z^2) + z^-3 F1(z^2),
///   g_h = G2,                     f_h = F2.
FilterBank mband_to_rational(const MBandBank& b);
MBandBank rational_to_mband(const FilterBank& b);

/// Dyadic lifting (in place):
///   predict: G_h -= G_l T(z^2); F_l += F_h T(z^2)
///   update:  G_l += G_h S(z^2); F_h -= F_l S(z^2)
void dyadic_predict(FilterBank& b, const LaurentPoly& t);
void dyadic_update(FilterBank& b, const LaurentPoly& s);
void apply_lifting(FilterBank& b, const LiftingStep& step);
/// Channel gain normalization: G_l *= k, F_l /= k, G_h /= k, F_h *= k.
void dyadic_scale(FilterBank& b, double k);

/// Biorthogonal 5/3 and 9/7 banks built from their lifting factorizations
/// (Daubechies & Sweldens, J. Fourier Anal. Appl. 4(3), 1998).
FilterBank cdf53();
FilterBank cdf97();

/// Type-1 analysis polyphase matrix: E[i][j] = phase-j component of
/// analysis filter i. For the Lazy bank this is the identity.
PolyMatrix analysis_polyphase(const MBandBank& b);
PolyMatrix analysis_polyphase(const FilterBank& b);
/// Type-2 synthesis polyphase matrix R built from the synthesis filters;
/// R[j][i] pairs output phase j with channel i.
PolyMatrix synthesis_polyphase(const MBandBank& b);
PolyMatrix synthesis_polyphase(const FilterBank& b);

struct PrSynthesis {
    PolyMatrix r;
    double gain; // c
    int delay;   // n0
};

/// FIR inversion of the analysis polyphase matrix: requires det(E) to be
/// a nonzero monomial c z^k and returns R = adj(E)/c with R E = z^k I,
/// i.e. gain 1 and delay n0 = -k. Throws otherwise.
PrSynthesis pr_synthesis(const PolyMatrix& e);

/// Recomputes the synthesis filters of `b` from its analysis side via
/// pr_synthesis.
void rederive_synthesis(MBandBank& b);

struct PrCheck {
    bool ok = false;
    double gain = 1.0;
    int delay = 0;
    double max_err = 0.0; // largest stray coefficient in R E - c z^-n0 I
};

/// Verifies R(z)E(z) = c z^-n0 I for the bank's stored filters.
PrCheck pr_check(const MBandBank& b);
PrCheck pr_check(const FilterBank& b);

/// Periodic M-channel analysis: y_i[n] = sum_e g_i[e] x[(M n + e) mod N].
std::array<Vec, 3> mband_analyze(const MBandBank& b, const Vec& x);
Vec mband_synthesize(const MBandBank& b, const std::array<Vec, 3>& y, int n);

/// Splits x (length divisible by the decimation factor) into approximation
/// and detail streams; rational banks produce |a| = 2N/3 and |d| = N/3 with
/// a interleaving the two low channels. Periodic extension throughout, so
/// synthesize_1d(analyze_1d(x)) = x up to roundoff.
std::pair<Vec, Vec> analyze_1d(const FilterBank& b, const Vec& x);
Vec synthesize_1d(const FilterBank& b, const Vec& a, const Vec& d);

nlohmann::json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);
nlohmann::json bank_to_json(const FilterBank& b);
FilterBank bank_from_json(const nlohmann::json& j);

} // namespace rwls
