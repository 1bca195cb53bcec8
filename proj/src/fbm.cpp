#include "rwls/fbm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace rwls {

namespace {

constexpr double kGolden = 0.6180339887498949; // (sqrt(5) - 1) / 2

double pow2h(double x, double two_h) {
    return x == 0.0 ? 0.0 : std::pow(std::abs(x), two_h);
}

/// Durbin-Levinson pass over a Toeplitz covariance with first row `r`:
/// accumulates log det and the quadratic form y' C^-1 y through the
/// one-step prediction errors.
void durbin_levinson(const std::vector<double>& r, std::span<const double> y,
                     double& log_det, double& quad) {
    const int n = static_cast<int>(y.size());
    log_det = std::log(r[0]);
    quad = y[0] * y[0] / r[0];
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
    std::vector<double> phi_prev(static_cast<std::size_t>(n), 0.0);
    double v = r[0];
    for (int t = 1; t < n; ++t) {
        double acc = r[static_cast<std::size_t>(t)];
        for (int j = 1; j < t; ++j) acc -= phi_prev[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(t - j)];
        const double k = acc / v;
        phi[static_cast<std::size_t>(t)] = k;
        for (int j = 1; j < t; ++j)
            phi[static_cast<std::size_t>(j)] = phi_prev[static_cast<std::size_t>(j)] - k * phi_prev[static_cast<std::size_t>(t - j)];
        v *= (1.0 - k * k);
        double pred = 0.0;
        for (int j = 1; j <= t; ++j) pred += phi[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(t - j)];
        const double innov = y[static_cast<std::size_t>(t)] - pred;
        log_det += std::log(v);
        quad += innov * innov / v;
        std::swap(phi, phi_prev);
    }
}

double block_loglik(std::span<const double> y, double hurst) {
    const int n = static_cast<int>(y.size());
    const FbmModel unit{hurst, 1.0};
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] = increment_autocov(unit, k);
    double log_det = 0.0, quad = 0.0;
    durbin_levinson(r, y, log_det, quad);
    const double nn = static_cast<double>(n);
    return -0.5 * (nn * std::log(quad / nn) + log_det);
}

double block_profiled_sigma2(std::span<const double> y, double hurst) {
    const int n = static_cast<int>(y.size());
    const FbmModel unit{hurst, 1.0};
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] = increment_autocov(unit, k);
    double log_det = 0.0, quad = 0.0;
    durbin_levinson(r, y, log_det, quad);
    return quad / static_cast<double>(n);
}

double maximize_hurst(std::span<const double> y) {
    double best_h = 0.5, best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 98; ++i) {
        const double h = 0.01 * static_cast<double>(i);
        const double ll = block_loglik(y, h);
        if (ll > best_ll) {
            best_ll = ll;
            best_h = h;
        }
    }
    // Golden-section refinement inside the bracketing grid cells.
    double a = std::max(0.005, best_h - 0.01), b = std::min(0.995, best_h + 0.01);
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = block_loglik(y, x1), f2 = block_loglik(y, x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = block_loglik(y, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = block_loglik(y, x1);
        }
    }
    return 0.5 * (a + b);
}

/// Normal deviates via Box-Muller on a raw mt19937_64 stream; avoids the
/// implementation-defined std::normal_distribution so seeds reproduce
/// across standard libraries.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : eng_(seed) {}
    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_ = true;
        return r * std::cos(t);
    }

  private:
    double uniform01() {
        return (static_cast<double>(eng_() >> 11)) * 0x1.0p-53;
    }
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_ = false;
};

} // namespace

double sigma_h(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("sigma_h: H must lie in (0, 1)");
    return 1.0 / (std::tgamma(2.0 * hurst + 1.0) * std::abs(std::sin(std::numbers::pi * hurst)));
}

FbmModel fbm_from_hurst(double hurst) {
    return {hurst, sigma_h(hurst)};
}

double autocov(const FbmModel& model, long n1, long n2) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("autocov: negative index");
    const double two_h = 2.0 * model.hurst;
    return 0.5 * model.sigma2 *
           (pow2h(static_cast<double>(n1), two_h) - pow2h(static_cast<double>(n1 - n2), two_h) +
            pow2h(static_cast<double>(n2), two_h));
}

double increment_autocov(const FbmModel& model, long k) {
    const double two_h = 2.0 * model.hurst;
    const double kk = static_cast<double>(k);
    return 0.5 * model.sigma2 * (pow2h(kk + 1.0, two_h) - 2.0 * pow2h(kk, two_h) + pow2h(kk - 1.0, two_h));
}

double fgn_profile_loglik(std::span<const double> increments, double hurst) {
    if (increments.size() < 2) throw std::invalid_argument("fgn_profile_loglik: need at least 2 samples");
    return block_loglik(increments, hurst);
}

FbmModel estimate_hurst(std::span<const double> path, const HurstOptions& opt) {
    if (path.size() < 64) throw std::invalid_argument("estimate_hurst: need at least 64 samples");
    std::vector<double> incr(path.size() - 1);
    double max_abs = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        incr[i] = path[i + 1] - path[i];
        max_abs = std::max(max_abs, std::abs(incr[i]));
    }
    if (max_abs == 0.0) throw std::runtime_error("estimate_hurst: zero-variance increments");

    const int block = std::min(std::max(opt.block_len, 64), 4096);
    const long n = static_cast<long>(incr.size());
    std::vector<std::pair<long, long>> spans; // (start, len)
    if (n <= block) {
        spans.emplace_back(0, n);
    } else {
        const int k = std::min<long>(opt.max_blocks, n / block);
        for (int i = 0; i < k; ++i) {
            const long start = (k == 1) ? 0 : (n - block) * i / (k - 1);
            spans.emplace_back(start, block);
        }
    }

    double h_sum = 0.0, s2_sum = 0.0;
    int used = 0;
    for (auto [start, len] : spans) {
        std::span<const double> y(incr.data() + start, static_cast<std::size_t>(len));
        double lo = 0.0, hi = 0.0;
        for (double v : y) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi == lo) continue; // constant block carries no information
        const double h = maximize_hurst(y);
        h_sum += h;
        s2_sum += block_profiled_sigma2(y, h);
        ++used;
    }
    if (used == 0) throw std::runtime_error("estimate_hurst: zero-variance increments");
    return {h_sum / used, s2_sum / used};
}

FbmSampler::FbmSampler(const FbmModel& model, int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("FbmSampler: n must be >= 2");
    if (n > 8192) throw std::invalid_argument("FbmSampler: n exceeds factorization cap (8192)");
    Mat cov(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) cov(i - 1, j - 1) = autocov(model, i, j);
    Eigen::LLT<Mat> llt(cov);
    if (llt.info() != Eigen::Success) throw std::runtime_error("FbmSampler: covariance not positive definite");
    chol_ = llt.matrixL();
}

Vec FbmSampler::draw(std::uint64_t seed) const {
    NormalStream rng(seed);
    Vec z(n_ - 1);
    for (int i = 0; i < n_ - 1; ++i) z(i) = rng.next();
    Vec path(n_);
    path(0) = 0.0; // B_H[0] = 0 by definition
    path.tail(n_ - 1) = chol_ * z;
    return path;
}

Vec synth_fbm(const FbmModel& model, int n, std::uint64_t seed) {
    return FbmSampler(model, n).draw(seed);
}

} // namespace rwls
