#include "rwls/filterbank.hpp"

#include <cmath>
#include <stdexcept>

namespace rwls {

namespace {

int pmod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

/// y[n] = sum_e p[e] x[(m*n + e) mod N], n = 0..N/m-1.
Vec decimating_filter(const LaurentPoly& p, const Vec& x, int m) {
    const int n_in = static_cast<int>(x.size());
    const int n_out = n_in / m;
    Vec y = Vec::Zero(n_out);
    for (int n = 0; n < n_out; ++n) {
        double acc = 0.0;
        for (int k = 0; k < p.length(); ++k)
            acc += p.c[static_cast<std::size_t>(k)] * x(pmod(static_cast<long long>(m) * n + p.lo + k, n_in));
        y(n) = acc;
    }
    return y;
}

/// x[(m*r - e) mod N] += p[e] y[r] for every tap e and coefficient r.
void interpolating_accumulate(const LaurentPoly& p, const Vec& y, int m, Vec& x) {
    const int n_out = static_cast<int>(x.size());
    for (int r = 0; r < static_cast<int>(y.size()); ++r) {
        const double v = y(r);
        if (v == 0.0) continue;
        for (int k = 0; k < p.length(); ++k)
            x(pmod(static_cast<long long>(m) * r - (p.lo + k), n_out)) += p.c[static_cast<std::size_t>(k)] * v;
    }
}

PolyMatrix analysis_polyphase_impl(const LaurentPoly* filters, int m) {
    PolyMatrix e(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) e.at(i, j) = polyphase_split(filters[i], m, j);
    return e;
}

PolyMatrix synthesis_polyphase_impl(const LaurentPoly* filters, int m) {
    PolyMatrix r(m, m);
    for (int i = 0; i < m; ++i) {
        r.at(0, i) = polyphase_split(filters[i], m, 0);
        for (int j = 1; j < m; ++j) r.at(j, i) = shift(polyphase_split(filters[i], m, m - j), 1);
    }
    return r;
}

/// Inverse of synthesis_polyphase_impl: F_i = sum_j z^-j R[j][i](z^m).
LaurentPoly synthesis_filter_from_polyphase(const PolyMatrix& r, int channel, int m) {
    LaurentPoly f;
    for (int j = 0; j < m; ++j) f = add(f, shift(upsample(r.at(j, channel), m), -j));
    return f;
}

PrCheck pr_check_impl(const PolyMatrix& r, const PolyMatrix& e, double gain, int delay) {
    PrCheck out;
    const PolyMatrix prod = mat_mul(r, e);
    // Expected c z^-n0 on the diagonal; everything else is error.
    const LaurentPoly want = LaurentPoly::monomial(gain, -delay);
    double err = 0.0;
    for (int i = 0; i < prod.rows; ++i)
        for (int j = 0; j < prod.cols; ++j)
            err = std::max(err, max_abs_diff(prod.at(i, j), i == j ? want : LaurentPoly::zero()));
    out.gain = gain;
    out.delay = delay;
    out.max_err = err;
    out.ok = err < 1e-9;
    return out;
}

} // namespace

MBandBank lazy_mband() {
    MBandBank b;
    for (int i = 0; i < 3; ++i) {
        b.analysis[static_cast<std::size_t>(i)] = LaurentPoly::monomial(1.0, i);
        b.synthesis[static_cast<std::size_t>(i)] = LaurentPoly::monomial(1.0, -i);
    }
    return b;
}

FilterBank lazy_dyadic() {
    FilterBank b;
    b.kind = BankKind::Dyadic;
    b.g_l = LaurentPoly::one();
    b.g_h = LaurentPoly::monomial(1.0, 1);
    b.f_l = LaurentPoly::one();
    b.f_h = LaurentPoly::monomial(1.0, -1);
    return b;
}

FilterBank lazy_rational() {
    return mband_to_rational(lazy_mband());
}

FilterBank mband_to_rational(const MBandBank& b) {
    FilterBank out;
    out.kind = BankKind::Rational23;
    out.g_l = add(upsample(b.analysis[0], 2), shift(upsample(b.analysis[1], 2), 3));
    out.f_l = add(upsample(b.synthesis[0], 2), shift(upsample(b.synthesis[1], 2), -3));
    out.g_h = b.analysis[2];
    out.f_h = b.synthesis[2];
    out.gain = b.gain;
    out.delay = b.delay;
    return out;
}

MBandBank rational_to_mband(const FilterBank& b) {
    if (b.kind != BankKind::Rational23) throw std::invalid_argument("rational_to_mband: bank is not rational");
    MBandBank out;
    out.analysis[0] = polyphase_split(b.g_l, 2, 0);
    out.analysis[1] = shift(polyphase_split(b.g_l, 2, 1), -1);
    out.analysis[2] = b.g_h;
    out.synthesis[0] = polyphase_split(b.f_l, 2, 0);
    out.synthesis[1] = shift(polyphase_split(b.f_l, 2, 1), 2);
    out.synthesis[2] = b.f_h;
    out.gain = b.gain;
    out.delay = b.delay;
    return out;
}

void dyadic_predict(FilterBank& b, const LaurentPoly& t) {
    if (b.kind != BankKind::Dyadic) throw std::invalid_argument("dyadic_predict: bank is not dyadic");
    const LaurentPoly t2 = upsample(t, 2);
    b.g_h = sub(b.g_h, mul(b.g_l, t2));
    b.f_l = add(b.f_l, mul(b.f_h, t2));
}

void dyadic_update(FilterBank& b, const LaurentPoly& s) {
    if (b.kind != BankKind::Dyadic) throw std::invalid_argument("dyadic_update: bank is not dyadic");
    const LaurentPoly s2 = upsample(s, 2);
    b.g_l = add(b.g_l, mul(b.g_h, s2));
    b.f_h = sub(b.f_h, mul(b.f_l, s2));
}

void apply_lifting(FilterBank& b, const LiftingStep& step) {
    if (step.kind == LiftingStep::Kind::Predict)
        dyadic_predict(b, step.filter);
    else
        dyadic_update(b, step.filter);
}

void dyadic_scale(FilterBank& b, double k) {
    b.g_l = scale(b.g_l, k);
    b.f_l = scale(b.f_l, 1.0 / k);
    b.g_h = scale(b.g_h, 1.0 / k);
    b.f_h = scale(b.f_h, k);
}

FilterBank cdf53() {
    FilterBank b = lazy_dyadic();
    dyadic_predict(b, LaurentPoly(0, {0.5, 0.5}));   // T(z) = (1 + z)/2
    dyadic_update(b, LaurentPoly(-1, {0.25, 0.25})); // S(z) = (z^-1 + 1)/4
    b.metadata["name"] = "cdf53";
    return b;
}

FilterBank cdf97() {
    // Lifting constants from the 9/7 factorization (Daubechies & Sweldens
    // 1998, Table 6; the JPEG 2000 irreversible filter).
    constexpr double alpha = -1.586134342059924;
    constexpr double beta = -0.052980118572961;
    constexpr double gamma = 0.882911075530934;
    constexpr double delta = 0.443506852043971;
    constexpr double kappa = 1.230174104914001;
    FilterBank b = lazy_dyadic();
    dyadic_predict(b, LaurentPoly(0, {-alpha, -alpha}));
    dyadic_update(b, LaurentPoly(-1, {beta, beta}));
    dyadic_predict(b, LaurentPoly(0, {-gamma, -gamma}));
    dyadic_update(b, LaurentPoly(-1, {delta, delta}));
    dyadic_scale(b, 1.0 / kappa);
    b.metadata["name"] = "cdf97";
    return b;
}

PolyMatrix analysis_polyphase(const MBandBank& b) {
    return analysis_polyphase_impl(b.analysis.data(), 3);
}

PolyMatrix analysis_polyphase(const FilterBank& b) {
    if (b.kind == BankKind::Dyadic) {
        const LaurentPoly f[2] = {b.g_l, b.g_h};
        return analysis_polyphase_impl(f, 2);
    }
    return analysis_polyphase(rational_to_mband(b));
}

PolyMatrix synthesis_polyphase(const MBandBank& b) {
    return synthesis_polyphase_impl(b.synthesis.data(), 3);
}

PolyMatrix synthesis_polyphase(const FilterBank& b) {
    if (b.kind == BankKind::Dyadic) {
        const LaurentPoly f[2] = {b.f_l, b.f_h};
        return synthesis_polyphase_impl(f, 2);
    }
    return synthesis_polyphase(rational_to_mband(b));
}

PrSynthesis pr_synthesis(const PolyMatrix& e) {
    const LaurentPoly det = mat_det3(e);
    if (det.length() != 1)
        throw std::runtime_error("pr_synthesis: bank not losslessly invertible with FIR synthesis");
    const double c = det.c[0];
    const int k = det.lo;
    PrSynthesis out;
    out.r = mat_scale(mat_adjugate3(e), LaurentPoly::monomial(1.0 / c, 0));
    out.gain = 1.0;
    out.delay = -k;
    return out;
}

void rederive_synthesis(MBandBank& b) {
    const PrSynthesis pr = pr_synthesis(analysis_polyphase(b));
    for (int i = 0; i < 3; ++i) b.synthesis[static_cast<std::size_t>(i)] = synthesis_filter_from_polyphase(pr.r, i, 3);
    b.gain = pr.gain;
    b.delay = pr.delay;
}

PrCheck pr_check(const MBandBank& b) {
    return pr_check_impl(synthesis_polyphase(b), analysis_polyphase(b), b.gain, b.delay);
}

PrCheck pr_check(const FilterBank& b) {
    return pr_check_impl(synthesis_polyphase(b), analysis_polyphase(b), b.gain, b.delay);
}

std::array<Vec, 3> mband_analyze(const MBandBank& b, const Vec& x) {
    if (x.size() % 3 != 0) throw std::invalid_argument("mband_analyze: length not divisible by 3");
    return {decimating_filter(b.analysis[0], x, 3), decimating_filter(b.analysis[1], x, 3),
            decimating_filter(b.analysis[2], x, 3)};
}

Vec mband_synthesize(const MBandBank& b, const std::array<Vec, 3>& y, int n) {
    Vec x = Vec::Zero(n);
    for (int i = 0; i < 3; ++i) interpolating_accumulate(b.synthesis[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)], 3, x);
    // Compensate the recorded delay/gain: raw output is c x[n - 3 n0].
    if (b.delay != 0) {
        Vec shifted(n);
        for (int i = 0; i < n; ++i) shifted(i) = x(pmod(static_cast<long long>(i) + 3LL * b.delay, n));
        x = shifted;
    }
    if (b.gain != 1.0) x /= b.gain;
    return x;
}

std::pair<Vec, Vec> analyze_1d(const FilterBank& b, const Vec& x) {
    const int n = static_cast<int>(x.size());
    if (n % b.decimation() != 0) throw std::invalid_argument("analyze_1d: length not divisible by decimation factor");
    if (b.kind == BankKind::Dyadic) {
        return {decimating_filter(b.g_l, x, 2), decimating_filter(b.g_h, x, 2)};
    }
    const MBandBank mb = rational_to_mband(b);
    const std::array<Vec, 3> y = mband_analyze(mb, x);
    Vec a(2 * (n / 3));
    for (int k = 0; k < n / 3; ++k) {
        a(2 * k) = y[0](k);
        a(2 * k + 1) = y[1](k);
    }
    return {a, y[2]};
}

Vec synthesize_1d(const FilterBank& b, const Vec& a, const Vec& d) {
    if (b.kind == BankKind::Dyadic) {
        if (a.size() != d.size()) throw std::invalid_argument("synthesize_1d: channel length mismatch");
        const int n = 2 * static_cast<int>(a.size());
        Vec x = Vec::Zero(n);
        interpolating_accumulate(b.f_l, a, 2, x);
        interpolating_accumulate(b.f_h, d, 2, x);
        if (b.delay != 0) {
            Vec shifted(n);
            for (int i = 0; i < n; ++i) shifted(i) = x(pmod(static_cast<long long>(i) + 2LL * b.delay, n));
            x = shifted;
        }
        if (b.gain != 1.0) x /= b.gain;
        return x;
    }
    if (a.size() != 2 * d.size()) throw std::invalid_argument("synthesize_1d: channel length mismatch");
    const int half = static_cast<int>(d.size());
    std::array<Vec, 3> y = {Vec(half), Vec(half), d};
    for (int k = 0; k < half; ++k) {
        y[0](k) = a(2 * k);
        y[1](k) = a(2 * k + 1);
    }
    const MBandBank mb = rational_to_mband(b);
    return mband_synthesize(mb, y, 3 * half);
}

nlohmann::json laurent_to_json(const LaurentPoly& p) {
    return {{"lo_exp", p.lo}, {"coeffs", p.c}};
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
    return LaurentPoly(j.at("lo_exp").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

nlohmann::json bank_to_json(const FilterBank& b) {
    nlohmann::json j;
    j["kind"] = b.kind == BankKind::Dyadic ? "dyadic" : "rational-2/3";
    j["analysis"] = {{"low", laurent_to_json(b.g_l)}, {"high", laurent_to_json(b.g_h)}};
    j["synthesis"] = {{"low", laurent_to_json(b.f_l)}, {"high", laurent_to_json(b.f_h)}};
    j["c"] = b.gain;
    j["n0"] = b.delay;
    j["metadata"] = b.metadata.is_null() ? nlohmann::json::object() : b.metadata;
    return j;
}

FilterBank bank_from_json(const nlohmann::json& j) {
    FilterBank b;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "dyadic")
        b.kind = BankKind::Dyadic;
    else if (kind == "rational-2/3")
        b.kind = BankKind::Rational23;
    else
        throw std::runtime_error("bank_from_json: unknown kind '" + kind + "'");
    b.g_l = laurent_from_json(j.at("analysis").at("low"));
    b.g_h = laurent_from_json(j.at("analysis").at("high"));
    b.f_l = laurent_from_json(j.at("synthesis").at("low"));
    b.f_h = laurent_from_json(j.at("synthesis").at("high"));
    b.gain = j.at("c").get<double>();
    b.delay = j.at("n0").get<int>();
    if (j.contains("metadata")) b.metadata = j.at("metadata");
    return b;
}

} // namespace rwls
