#pragma once

#include <vector>

#include "rwls/fbm.hpp"
#include "rwls/filterbank.hpp"
#include "rwls/image.hpp"

namespace rwls {

/// Two-tap predict filter T(z) = t0 z + t1 z^2: estimates each x[3n+2]
/// from its neighbors x[3n+1] and x[3n+3].
struct PredictFilter {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Two-tap update filter S(z) = s0 + s1 z^-2.
struct UpdateFilter {
    double s0 = 0.0;
    double s1 = 0.0;
};

/// Where the second-order statistics for predict learning come from:
/// either an fBm model (expectations in closed form) or an observed
/// signal (sample averages).
struct TrainingSource {
    enum class Mode { Fbm, Empirical };
    Mode mode = Mode::Fbm;
    FbmModel model{};
    std::vector<double> signal;
    int n_train = 1024; // index positions averaged in Fbm mode

    static TrainingSource from_model(const FbmModel& m, int n_train = 1024);
    static TrainingSource from_signal(std::vector<double> x);
};

/// Normal-equation blocks of the prediction problem: minimize
/// E[(x[3n+2] - t0 x[3n+1] - t1 x[3n+3])^2], i.e. solve M t = v with
/// M = E[A'A], v = E[A'b]. The index-dependent expectations are averaged
/// uniformly over n.
struct PredictStats {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    double r22 = 0.0; // E[x[3n+2]^2], averaged
};

PredictStats predict_stats(const TrainingSource& src);

/// Closed-form least-squares predict filter. Singular systems get the
/// minimum-norm solution (relative singular-value cutoff 1e-10).
PredictFilter learn_predict(const TrainingSource& src);

/// Mean squared prediction error at t (expected or sample mean depending
/// on the source mode).
double mse_predict(const TrainingSource& src, const PredictFilter& t);

/// Lifts the analysis highpass: G2 <- G2 - t0 G1 - t1 z^3 G0 (on the Lazy
/// bank this realizes d_new[n] = x[3n+2] - t0 x[3n+1] - t1 x[3n+3]);
/// synthesis is re-derived from the polyphase inverse.
MBandBank apply_predict(const MBandBank& bank, const PredictFilter& t);

/// Linear model of the lowpass-branch reconstruction against the update
/// taps: x_u(s) = x_u0 + s0 u0 + s1 u1, restricted to interior positions
/// whose every contribution is free of boundary effects.
struct UpdateSystem {
    Vec rhs; // x - x_u0 on the valid interior
    Vec u0;
    Vec u1;
};

UpdateSystem build_update_system(const MBandBank& post_predict, const Vec& x);

double update_objective(const UpdateSystem& sys, const UpdateFilter& s);

/// Least-squares update filter minimizing ||x - x_u(s)||^2 on the valid
/// interior; minimum-norm on singular systems.
UpdateFilter learn_update(const MBandBank& post_predict, const Vec& x);

/// Lifts the analysis lowpass in the two-channel domain,
/// g_l <- g_l + g_h(z^2) S(z^3), then maps back to the 3-band filters and
/// re-derives the synthesis side.
MBandBank apply_update(const MBandBank& bank, const UpdateFilter& s);

struct LearnOptions {
    TrainingSource::Mode predict_mode = TrainingSource::Mode::Fbm;
    int n_train = 1024;
    HurstOptions hurst{};
};

/// Full 1-D pipeline: vectorize the ensemble along `axis`, estimate H,
/// learn predict (fbm-model statistics by default) and update (empirical),
/// and assemble the learned rational bank with learning metadata.
FilterBank learn_rwls_1d(const std::vector<ImageGray>& images, Axis axis, const LearnOptions& opt = {});

/// Separable 2-D learning: one bank matched to the row space, one to the
/// column space.
std::pair<FilterBank, FilterBank> learn_rwls_2d(const std::vector<ImageGray>& images,
                                                const LearnOptions& opt = {});

} // namespace rwls
