#include "rwls/learn.hpp"

#include <cmath>
#include <stdexcept>

namespace rwls {

namespace {

Eigen::Vector2d solve_minnorm(const Eigen::Matrix2d& m, const Eigen::Vector2d& v) {
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    return svd.solve(v);
}

int ceil_div(int a, int b) { // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

int floor_div(int a, int b) { // b > 0
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

/// Coefficient indices m for which the window of `g` at 3m stays inside
/// [0, n-1]: 3m + g.lo >= 0 and 3m + g.hi <= n-1.
std::pair<int, int> valid_coeff_range(const LaurentPoly& g, int n) {
    if (g.is_zero()) return {0, n / 3 - 1};
    return {std::max(0, ceil_div(-g.lo, 3)), std::min(n / 3 - 1, floor_div(n - 1 - g.hi, 3))};
}

/// Boundary-free decimated filtering: entries outside the valid range are
/// left at zero.
Vec valid_decimate(const LaurentPoly& g, const Vec& x, std::pair<int, int> range) {
    const int nc = static_cast<int>(x.size()) / 3;
    Vec y = Vec::Zero(nc);
    for (int m = range.first; m <= range.second; ++m) {
        double acc = 0.0;
        for (int k = 0; k < g.length(); ++k) acc += g.c[static_cast<std::size_t>(k)] * x(3 * m + g.lo + k);
        y(m) = acc;
    }
    return y;
}

/// x_out[3r - e] += f[e] stream[r], skipping out-of-range targets.
void accumulate_branch(const LaurentPoly& f, const Vec& stream, Vec& x_out) {
    const int n = static_cast<int>(x_out.size());
    for (int r = 0; r < static_cast<int>(stream.size()); ++r) {
        const double v = stream(r);
        if (v == 0.0) continue;
        for (int k = 0; k < f.length(); ++k) {
            const int p = 3 * r - (f.lo + k);
            if (p >= 0 && p < n) x_out(p) += f.c[static_cast<std::size_t>(k)] * v;
        }
    }
}

/// Positions p whose branch contributions reference only coefficients in
/// [c_lo, c_hi]: referenced indices are (p+e)/3 for taps e with 3|(p+e).
void intersect_position_range(const LaurentPoly& f, int c_lo, int c_hi, int& p_lo, int& p_hi) {
    if (f.is_zero()) return;
    p_lo = std::max(p_lo, 3 * c_lo - 2 - f.lo);
    p_hi = std::min(p_hi, 3 * c_hi + 2 - f.hi());
}

} // namespace

TrainingSource TrainingSource::from_model(const FbmModel& m, int n_train) {
    TrainingSource src;
    src.mode = Mode::Fbm;
    src.model = m;
    src.n_train = n_train;
    return src;
}

TrainingSource TrainingSource::from_signal(std::vector<double> x) {
    TrainingSource src;
    src.mode = Mode::Empirical;
    src.signal = std::move(x);
    src.n_train = std::max(0, (static_cast<int>(src.signal.size()) - 4) / 3 + 1);
    return src;
}

PredictStats predict_stats(const TrainingSource& src) {
    PredictStats st;
    if (src.mode == TrainingSource::Mode::Fbm) {
        if (src.n_train < 1) throw std::invalid_argument("predict_stats: n_train must be >= 1");
        for (int n = 0; n < src.n_train; ++n) {
            const long i1 = 3L * n + 1, i2 = 3L * n + 2, i3 = 3L * n + 3;
            st.m(0, 0) += autocov(src.model, i1, i1);
            st.m(0, 1) += autocov(src.model, i1, i3);
            st.m(1, 1) += autocov(src.model, i3, i3);
            st.v(0) += autocov(src.model, i1, i2);
            st.v(1) += autocov(src.model, i3, i2);
            st.r22 += autocov(src.model, i2, i2);
        }
        const double inv = 1.0 / static_cast<double>(src.n_train);
        st.m *= inv;
        st.v *= inv;
        st.r22 *= inv;
        st.m(1, 0) = st.m(0, 1);
        return st;
    }
    const auto& x = src.signal;
    if (x.size() < 6) throw std::invalid_argument("predict_stats: empirical signal shorter than 6 samples");
    int count = 0;
    for (std::size_t n = 0; 3 * n + 3 < x.size(); ++n) {
        const double a0 = x[3 * n + 1], a1 = x[3 * n + 3], b = x[3 * n + 2];
        st.m(0, 0) += a0 * a0;
        st.m(0, 1) += a0 * a1;
        st.m(1, 1) += a1 * a1;
        st.v(0) += a0 * b;
        st.v(1) += a1 * b;
        st.r22 += b * b;
        ++count;
    }
    const double inv = 1.0 / static_cast<double>(count);
    st.m *= inv;
    st.v *= inv;
    st.r22 *= inv;
    st.m(1, 0) = st.m(0, 1);
    return st;
}

PredictFilter learn_predict(const TrainingSource& src) {
    const PredictStats st = predict_stats(src);
    const Eigen::Vector2d t = solve_minnorm(st.m, st.v);
    return {t(0), t(1)};
}

double mse_predict(const TrainingSource& src, const PredictFilter& t) {
    const PredictStats st = predict_stats(src);
    const Eigen::Vector2d tv(t.t0, t.t1);
    return st.r22 - 2.0 * tv.dot(st.v) + tv.dot(st.m * tv);
}

MBandBank apply_predict(const MBandBank& bank, const PredictFilter& t) {
    MBandBank out = bank;
    out.analysis[2] = sub(sub(bank.analysis[2], scale(bank.analysis[1], t.t0)),
                          scale(shift(bank.analysis[0], 3), t.t1));
    rederive_synthesis(out);
    return out;
}

UpdateSystem build_update_system(const MBandBank& post_predict, const Vec& x) {
    const int n = static_cast<int>(x.size());
    if (n % 3 != 0 || n < 12) throw std::invalid_argument("build_update_system: signal length must be >= 12 and divisible by 3");
    if (x.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("build_update_system: all-zero training signal");

    const LaurentPoly& g0 = post_predict.analysis[0];
    const LaurentPoly& g1 = post_predict.analysis[1];
    const LaurentPoly& g2 = post_predict.analysis[2];
    const LaurentPoly& f0 = post_predict.synthesis[0];
    const LaurentPoly& f1 = post_predict.synthesis[1];

    const auto d_range = valid_coeff_range(g2, n);
    const auto y0_range = valid_coeff_range(g0, n);
    const auto y1_range = valid_coeff_range(g1, n);
    const Vec d = valid_decimate(g2, x, d_range);
    const Vec y0 = valid_decimate(g0, x, y0_range);
    const Vec y1 = valid_decimate(g1, x, y1_range);

    // The update adds s0 d[m] + s1 d[m-1] to the even lowpass channel, so
    // its valid range also needs d[m] and d[m-1].
    const int z0_lo = std::max(y0_range.first, d_range.first + 1);
    const int z0_hi = std::min(y0_range.second, d_range.second);

    int p_lo = 0, p_hi = n - 1;
    intersect_position_range(f0, z0_lo, z0_hi, p_lo, p_hi);
    intersect_position_range(f1, y1_range.first, y1_range.second, p_lo, p_hi);
    p_lo = std::max(p_lo, 0);
    p_hi = std::min(p_hi, n - 1);
    if (p_hi - p_lo + 1 < 4) throw std::invalid_argument("build_update_system: signal too short for boundary-free fit");

    Vec x_u0 = Vec::Zero(n), u0 = Vec::Zero(n), u1 = Vec::Zero(n);
    accumulate_branch(f0, y0, x_u0);
    accumulate_branch(f1, y1, x_u0);
    accumulate_branch(f0, d, u0);
    Vec d_shift = Vec::Zero(d.size());
    d_shift.tail(d.size() - 1) = d.head(d.size() - 1);
    accumulate_branch(f0, d_shift, u1);

    const int len = p_hi - p_lo + 1;
    UpdateSystem sys;
    sys.rhs = x.segment(p_lo, len) - x_u0.segment(p_lo, len);
    sys.u0 = u0.segment(p_lo, len);
    sys.u1 = u1.segment(p_lo, len);
    return sys;
}

double update_objective(const UpdateSystem& sys, const UpdateFilter& s) {
    return (sys.rhs - s.s0 * sys.u0 - s.s1 * sys.u1).squaredNorm();
}

UpdateFilter learn_update(const MBandBank& post_predict, const Vec& x) {
    const UpdateSystem sys = build_update_system(post_predict, x);
    Eigen::Matrix2d gram;
    gram << sys.u0.dot(sys.u0), sys.u0.dot(sys.u1), sys.u0.dot(sys.u1), sys.u1.dot(sys.u1);
    const Eigen::Vector2d rhs(sys.u0.dot(sys.rhs), sys.u1.dot(sys.rhs));
    const Eigen::Vector2d s = solve_minnorm(gram, rhs);
    return {s(0), s(1)};
}

MBandBank apply_update(const MBandBank& bank, const UpdateFilter& s) {
    const LaurentPoly g_l = add(upsample(bank.analysis[0], 2), shift(upsample(bank.analysis[1], 2), 3));
    const LaurentPoly& g_h = bank.analysis[2];
    LaurentPoly s_up; // S(z^3) for S(z) = s0 + s1 z^-2
    s_up = add(LaurentPoly::monomial(s.s0, 0), LaurentPoly::monomial(s.s1, -6));
    const LaurentPoly g_l_new = add(g_l, mul(upsample(g_h, 2), s_up));

    MBandBank out = bank;
    out.analysis[0] = polyphase_split(g_l_new, 2, 0);
    out.analysis[1] = shift(polyphase_split(g_l_new, 2, 1), -1);
    rederive_synthesis(out);
    return out;
}

FilterBank learn_rwls_1d(const std::vector<ImageGray>& images, Axis axis, const LearnOptions& opt) {
    if (images.empty()) throw std::invalid_argument("learn_rwls_1d: empty image collection");

    std::vector<double> concatenated;
    double h_sum = 0.0;
    for (const ImageGray& img : images) {
        const std::vector<double> v = vectorize(img, axis);
        // H per image: increments never cross the seam between images.
        h_sum += estimate_hurst(v, opt.hurst).hurst;
        concatenated.insert(concatenated.end(), v.begin(), v.end());
    }
    const double hurst = h_sum / static_cast<double>(images.size());

    TrainingSource src = opt.predict_mode == TrainingSource::Mode::Fbm
                             ? TrainingSource::from_model(fbm_from_hurst(hurst), opt.n_train)
                             : TrainingSource::from_signal(concatenated);
    const PredictFilter t = learn_predict(src);
    const MBandBank post_predict = apply_predict(lazy_mband(), t);

    const int usable = static_cast<int>(concatenated.size()) - static_cast<int>(concatenated.size() % 3);
    Vec xtrain = Eigen::Map<const Vec>(concatenated.data(), usable);
    const UpdateFilter s = learn_update(post_predict, xtrain);
    const MBandBank learned = apply_update(post_predict, s);

    FilterBank bank = mband_to_rational(learned);
    bank.metadata["name"] = "rwls";
    bank.metadata["learning"] = {
        {"mode", opt.predict_mode == TrainingSource::Mode::Fbm ? "fbm" : "empirical"},
        {"H", hurst},
        {"n_train", opt.n_train},
        {"axis", axis == Axis::Row ? "row" : "col"},
        {"t", {t.t0, t.t1}},
        {"s", {s.s0, s.s1}},
    };
    return bank;
}

std::pair<FilterBank, FilterBank> learn_rwls_2d(const std::vector<ImageGray>& images, const LearnOptions& opt) {
    return {learn_rwls_1d(images, Axis::Row, opt), learn_rwls_1d(images, Axis::Col, opt)};
}

} // namespace rwls
