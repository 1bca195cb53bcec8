#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

namespace rwls {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Second-order description of a fractional Brownian motion path: Hurst
/// exponent H in (0,1) and sigma2 = var of the unit-step increment.
struct FbmModel {
    double hurst = 0.5;
    double sigma2 = 1.0;
};

/// Variance of the unit increment implied by H alone:
/// 1 / (Gamma(2H+1) * |sin(pi H)|).
double sigma_h(double hurst);

FbmModel fbm_from_hurst(double hurst);

/// Path auto-covariance (sigma2/2) * (n1^2H - |n1-n2|^2H + n2^2H).
double autocov(const FbmModel& model, long n1, long n2);

/// Stationary increment (fGn) auto-covariance at lag k:
/// (sigma2/2) * (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double increment_autocov(const FbmModel& model, long k);

/// Exact Gaussian log-likelihood of an fGn sample with the scale profiled
/// out analytically; constants dropped. Evaluated in O(n^2) via the
/// Durbin-Levinson innovations recursion.
double fgn_profile_loglik(std::span<const double> increments, double hurst);

struct HurstOptions {
    int block_len = 1024;  // contiguous samples per likelihood block (capped at 4096)
    int max_blocks = 8;    // evenly spaced blocks taken from long inputs
};

/// Maximum-likelihood Hurst estimate from a sample path. Differences the
/// input, evaluates the profiled fGn likelihood per block on a 0.01 grid
/// over (0.01, 0.99) and refines by golden section to 1e-4, then averages
/// block estimates. Throws on zero-variance increments.
FbmModel estimate_hurst(std::span<const double> path, const HurstOptions& opt = {});

/// Draws exact fBm paths of fixed length by Cholesky factorization of the
/// path covariance; the factor is computed once and reused across seeds.
class FbmSampler {
  public:
    FbmSampler(const FbmModel& model, int n);
    /// Deterministic for a given seed; path[0] == 0 exactly.
    Vec draw(std::uint64_t seed) const;
    int size() const { return n_; }

  private:
    int n_;
    Mat chol_;
};

/// One-shot convenience wrapper around FbmSampler (n capped at 8192).
Vec synth_fbm(const FbmModel& model, int n, std::uint64_t seed);

} // namespace rwls
