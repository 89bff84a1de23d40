// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "relight/image.hpp"

namespace relight {

using LatentVec = Eigen::VectorXd;

/// Sinusoidal direction embedding (sin theta, cos theta, sin phi, cos phi).
class LightCondition {
public:
    static LightCondition from_angles(double theta, double phi);

    const std::array<double, 4>& components() const { return c_; }
    Eigen::Vector4d vector() const { return {c_[0], c_[1], c_[2], c_[3]}; }
    double operator[](std::size_t i) const { return c_[i]; }

private:
    explicit LightCondition(const std::array<double, 4>& c) : c_(c) {}
    std::array<double, 4> c_;
};

LightCondition encode_light_condition(double theta, double phi);

/// One draw of the stochastic bridge between a uniform-light latent z_u and
/// a single-light latent z_l.
struct BridgeSample {
    LatentVec z_u;
    LatentVec z_l;
    double t = 0.0;
    double sigma = 0.0;
    LatentVec noise;
    LatentVec z_t;
    LightCondition c = LightCondition::from_angles(0.0, 0.0);
};

/// z_t = (1 - t) z_u + t z_l + sigma sqrt(t (1 - t)) noise.
LatentVec bridge_interpolate(const LatentVec& z_u, const LatentVec& z_l, double t, double sigma,
                             const LatentVec& noise);

/// Builds a sample whose z_t is consistent with the stored noise.
BridgeSample make_bridge_sample(const LatentVec& z_u, const LatentVec& z_l, double t, double sigma,
                                const LatentVec& noise, const LightCondition& c);

/// (z_l - z_t) / (1 - t). Throws NumericError for t >= 1.
LatentVec target_drift(const LatentVec& z_l, const LatentVec& z_t, double t);

/// Affine drift model A z + a t + B c + d.
class VelocityField {
public:
    explicit VelocityField(int dim);
    VelocityField(Eigen::MatrixXd a, Eigen::VectorXd a_t, Eigen::Matrix<double, Eigen::Dynamic, 4> b,
                  Eigen::VectorXd bias);

    int dim() const { return static_cast<int>(bias_.size()); }
    LatentVec operator()(const LatentVec& z, double t, const LightCondition& c) const;

    const Eigen::MatrixXd& latent_matrix() const { return a_; }
    const Eigen::VectorXd& time_vector() const { return a_t_; }
    const Eigen::Matrix<double, Eigen::Dynamic, 4>& condition_matrix() const { return b_; }
    const Eigen::VectorXd& bias() const { return bias_; }

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd a_t_;
    Eigen::Matrix<double, Eigen::Dynamic, 4> b_;
    Eigen::VectorXd bias_;
};

using DriftFn = std::function<LatentVec(const LatentVec&, double, const LightCondition&)>;

/// Mean over samples of || v(z_t, t, c) - target_drift ||^2. Throws on an
/// empty batch.
double lbm_loss(const DriftFn& field, std::span<const BridgeSample> batch);
double lbm_loss(const VelocityField& field, std::span<const BridgeSample> batch);

/// Paired endpoints for one subject under one light direction.
struct BridgePair {
    LatentVec z_u;
    LatentVec z_l;
    LightCondition c;
};

/// Bridge times drawn per pair during fitting. Times are kept in
/// [0, t_max] with t_max < 1 because the target drift blows up at t = 1.
struct TimeSchedule {
    enum class Kind { Grid, Uniform };
    Kind kind = Kind::Grid;
    int count = 10;
    double t_max = 0.9;

    static TimeSchedule grid(int count, double t_max = 0.9) { return {Kind::Grid, count, t_max}; }
    static TimeSchedule uniform(int count, double t_max = 0.9) { return {Kind::Uniform, count, t_max}; }
};

/// Expands pairs into bridge samples. Noise and uniform times come from a
/// seeded 64-bit Mersenne twister, so the batch is reproducible.
std::vector<BridgeSample> make_bridge_batch(std::span<const BridgePair> pairs, double sigma,
                                            const TimeSchedule& schedule, std::uint64_t seed);

/// Mean of sigma^2 t / (1 - t) ||noise||^2: the loss a drift model pays for
/// noise it cannot see.
double sigma_floor(std::span<const BridgeSample> batch);

struct VelocityFit {
    VelocityField field;
    double loss = 0.0;               // lbm_loss on the fitting batch
    double condition_number = 0.0;   // of the design matrix
    int rank = 0;
    int parameters = 0;              // per output dimension
};

/// Least-squares minimizer of lbm_loss over the affine drift class on `batch`,
/// solved by column-pivoted QR. Throws NumericError for rank-deficient
/// designs, reporting rank and condition number.
VelocityFit fit_linear_velocity(std::span<const BridgeSample> batch);

VelocityFit fit_linear_velocity(std::span<const BridgePair> pairs, double sigma, const TimeSchedule& schedule,
                                std::uint64_t seed);

/// z_u + field(z_u, 0, c): the single jump from t = 0 to t = 1.
LatentVec one_step_transport(const VelocityField& field, const LatentVec& z_u, const LightCondition& c);
LatentVec one_step_transport(const DriftFn& field, const LatentVec& z_u, const LightCondition& c);

/// Per-pixel min(1, kappa * L / mean(L)) over Rec. 709 luminance.
std::vector<double> pixel_weight_mask(const LinearImage& img, double kappa = 1.0);

/// Mean of mask * |pred - gt| over pixels and channels.
double weighted_pixel_loss(const LinearImage& pred, const LinearImage& gt, std::span<const double> mask);

/// | ||pred||_1 / ||gt||_1 - 1 |.
double energy_loss(const LinearImage& pred, const LinearImage& gt);

struct LossWeights {
    double lambda_pix = 1.0;
    double lambda_energy = 0.1;
};

void validate(const LossWeights& lw);

/// lbm + lambda_pix * pix + lambda_energy * energy.
double combine_losses(double lbm, double pix, double energy, const LossWeights& lw);

/// Optional image-space losses keyed by name (for example "id"). Nothing is
/// registered by default.
class AuxLossRegistry {
public:
    using LossFn = std::function<double(const LinearImage& pred, const LinearImage& ref)>;

    void add(const std::string& key, double lambda, LossFn fn);
    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    std::size_t size() const { return entries_.size(); }

    /// Sum of lambda * loss over registered providers.
    double evaluate(const LinearImage& pred, const LinearImage& ref) const;

private:
    struct Entry {
        double lambda;
        LossFn fn;
    };
    std::map<std::string, Entry> entries_;
};

}  // namespace relight
