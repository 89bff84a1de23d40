// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/bridge.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "relight/color.hpp"
#include "relight/error.hpp"

namespace relight {

namespace {

void require_same_dim(const LatentVec& a, const LatentVec& b, const char* what) {
    if (a.size() != b.size()) {
        throw DomainError(fmt::format("{}: dimension mismatch ({} vs {})", what, a.size(), b.size()));
    }
}

void require_same_size(const LinearImage& a, const LinearImage& b, const char* what) {
    if (!a.same_size(b)) {
        throw ValidationError(
            fmt::format("{}: size mismatch ({}x{} vs {}x{})", what, a.width(), a.height(), b.width(), b.height()));
    }
}

// Design-matrix row: [z, t, c, 1].
constexpr int kExtraColumns = 1 + 4 + 1;

}  // namespace

LightCondition LightCondition::from_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("light condition angles must be finite");
    return LightCondition({std::sin(theta), std::cos(theta), std::sin(phi), std::cos(phi)});
}

LightCondition encode_light_condition(double theta, double phi) { return LightCondition::from_angles(theta, phi); }

LatentVec bridge_interpolate(const LatentVec& z_u, const LatentVec& z_l, double t, double sigma,
                             const LatentVec& noise) {
    require_same_dim(z_u, z_l, "bridge_interpolate");
    require_same_dim(z_u, noise, "bridge_interpolate");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError(fmt::format("bridge time {} outside [0, 1]", t));
    if (t == 0.0) return z_u;
    if (t == 1.0) return z_l;
    return (1.0 - t) * z_u + t * z_l + (sigma * std::sqrt(t * (1.0 - t))) * noise;
}

BridgeSample make_bridge_sample(const LatentVec& z_u, const LatentVec& z_l, double t, double sigma,
                                const LatentVec& noise, const LightCondition& c) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError(fmt::format("bridge sample time {} outside [0, 1)", t));
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    BridgeSample s;
    s.z_u = z_u;
    s.z_l = z_l;
    s.t = t;
    s.sigma = sigma;
    s.noise = noise;
    s.z_t = bridge_interpolate(z_u, z_l, t, sigma, noise);
    s.c = c;
    return s;
}

LatentVec target_drift(const LatentVec& z_l, const LatentVec& z_t, double t) {
    require_same_dim(z_l, z_t, "target_drift");
    if (!(t < 1.0)) throw NumericError(fmt::format("target drift is singular at t = {} (requires t < 1)", t));
    return (z_l - z_t) / (1.0 - t);
}

VelocityField::VelocityField(int dim)
    : a_(Eigen::MatrixXd::Zero(dim, dim)),
      a_t_(Eigen::VectorXd::Zero(dim)),
      b_(Eigen::Matrix<double, Eigen::Dynamic, 4>::Zero(dim, 4)),
      bias_(Eigen::VectorXd::Zero(dim)) {
    if (dim < 1) throw DomainError("velocity field dimension must be >= 1");
}

VelocityField::VelocityField(Eigen::MatrixXd a, Eigen::VectorXd a_t, Eigen::Matrix<double, Eigen::Dynamic, 4> b,
                             Eigen::VectorXd bias)
    : a_(std::move(a)), a_t_(std::move(a_t)), b_(std::move(b)), bias_(std::move(bias)) {
    const auto d = bias_.size();
    if (d < 1 || a_.rows() != d || a_.cols() != d || a_t_.size() != d || b_.rows() != d) {
        throw DomainError("velocity field parameter shapes do not agree");
    }
}

LatentVec VelocityField::operator()(const LatentVec& z, double t, const LightCondition& c) const {
    if (z.size() != bias_.size()) {
        throw DomainError(fmt::format("velocity field expects dimension {}, got {}", bias_.size(), z.size()));
    }
    return a_ * z + a_t_ * t + b_ * c.vector() + bias_;
}

double lbm_loss(const DriftFn& field, std::span<const BridgeSample> batch) {
    if (batch.empty()) throw DomainError("lbm_loss needs a non-empty batch");
    double total = 0.0;
    for (const BridgeSample& s : batch) {
        const LatentVec residual = field(s.z_t, s.t, s.c) - target_drift(s.z_l, s.z_t, s.t);
        total += residual.squaredNorm();
    }
    return total / static_cast<double>(batch.size());
}

double lbm_loss(const VelocityField& field, std::span<const BridgeSample> batch) {
    return lbm_loss(DriftFn([&field](const LatentVec& z, double t, const LightCondition& c) { return field(z, t, c); }),
                    batch);
}

std::vector<BridgeSample> make_bridge_batch(std::span<const BridgePair> pairs, double sigma,
                                            const TimeSchedule& schedule, std::uint64_t seed) {
    if (schedule.count < 1) throw DomainError("time schedule needs at least one time");
    if (!(schedule.t_max >= 0.0 && schedule.t_max < 1.0)) throw DomainError("time schedule t_max must lie in [0, 1)");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, schedule.t_max);

    std::vector<BridgeSample> batch;
    batch.reserve(pairs.size() * static_cast<std::size_t>(schedule.count));
    for (const BridgePair& p : pairs) {
        require_same_dim(p.z_u, p.z_l, "bridge pair");
        for (int k = 0; k < schedule.count; ++k) {
            const double t = schedule.kind == TimeSchedule::Kind::Grid
                                 ? (schedule.count == 1 ? 0.0 : schedule.t_max * k / (schedule.count - 1))
                                 : uniform(rng);
            LatentVec noise(p.z_u.size());
            for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = gauss(rng);
            batch.push_back(make_bridge_sample(p.z_u, p.z_l, t, sigma, noise, p.c));
        }
    }
    return batch;
}

double sigma_floor(std::span<const BridgeSample> batch) {
    if (batch.empty()) throw DomainError("sigma_floor needs a non-empty batch");
    double total = 0.0;
    for (const BridgeSample& s : batch) total += s.sigma * s.sigma * s.t / (1.0 - s.t) * s.noise.squaredNorm();
    return total / static_cast<double>(batch.size());
}

VelocityFit fit_linear_velocity(std::span<const BridgeSample> batch) {
    if (batch.empty()) throw DomainError("fit_linear_velocity needs a non-empty batch");
    const Eigen::Index d = batch.front().z_t.size();
    const Eigen::Index p = d + kExtraColumns;
    const Eigen::Index n = static_cast<Eigen::Index>(batch.size());

    Eigen::MatrixXd x(n, p);
    Eigen::MatrixXd y(n, d);
    for (Eigen::Index r = 0; r < n; ++r) {
        const BridgeSample& s = batch[static_cast<std::size_t>(r)];
        if (s.z_t.size() != d) throw DomainError("bridge samples have mixed dimensions");
        x.row(r).head(d) = s.z_t.transpose();
        x(r, d) = s.t;
        for (int k = 0; k < 4; ++k) x(r, d + 1 + k) = s.c[static_cast<std::size_t>(k)];
        x(r, d + 5) = 1.0;
        y.row(r) = target_drift(s.z_l, s.z_t, s.t).transpose();
    }

    // Condition diagnostics from the Gram matrix; the solve itself uses QR on x.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(x.transpose() * x, Eigen::EigenvaluesOnly);
    const double lambda_max = std::max(gram.eigenvalues().maxCoeff(), 0.0);
    const double lambda_min = std::max(gram.eigenvalues().minCoeff(), 0.0);
    const double condition = lambda_min > 0.0 ? std::sqrt(lambda_max / lambda_min)
                                              : std::numeric_limits<double>::infinity();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-12);
    const int rank = static_cast<int>(qr.rank());
    if (rank < p || !(condition < 1e12)) {
        throw NumericError(fmt::format(
            "rank-deficient velocity fit: rank {} of {} parameters, condition number {:.3g}, {} samples", rank, p,
            condition, n));
    }
    const Eigen::MatrixXd theta = qr.solve(y);  // p x d

    VelocityField field(theta.topRows(d).transpose(), theta.row(d).transpose(),
                        theta.middleRows(d + 1, 4).transpose(), theta.row(d + 5).transpose());
    VelocityFit fit{std::move(field), 0.0, condition, rank, static_cast<int>(p)};
    fit.loss = lbm_loss(fit.field, batch);
    return fit;
}

VelocityFit fit_linear_velocity(std::span<const BridgePair> pairs, double sigma, const TimeSchedule& schedule,
                                std::uint64_t seed) {
    const auto batch = make_bridge_batch(pairs, sigma, schedule, seed);
    return fit_linear_velocity(batch);
}

LatentVec one_step_transport(const VelocityField& field, const LatentVec& z_u, const LightCondition& c) {
    return z_u + field(z_u, 0.0, c);
}

LatentVec one_step_transport(const DriftFn& field, const LatentVec& z_u, const LightCondition& c) {
    return z_u + field(z_u, 0.0, c);
}

std::vector<double> pixel_weight_mask(const LinearImage& img, double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be >= 0");
    const std::size_t n = img.pixel_count();
    std::vector<double> lum(n);
    double mean = 0.0;
    const auto s = img.samples();
    for (std::size_t p = 0; p < n; ++p) {
        lum[p] = luminance(s[3 * p], s[3 * p + 1], s[3 * p + 2]);
        mean += lum[p];
    }
    mean = n ? mean / static_cast<double>(n) : 0.0;
    if (!(mean > 0.0)) throw NumericError("pixel weight mask: image mean luminance is zero");
    for (double& v : lum) v = std::clamp(kappa * v / mean, 0.0, 1.0);
    return lum;
}

double weighted_pixel_loss(const LinearImage& pred, const LinearImage& gt, std::span<const double> mask) {
    require_same_size(pred, gt, "weighted_pixel_loss");
    if (mask.size() != pred.pixel_count()) {
        throw ValidationError(
            fmt::format("weighted_pixel_loss: mask has {} entries for {} pixels", mask.size(), pred.pixel_count()));
    }
    if (pred.empty()) return 0.0;
    const auto a = pred.samples();
    const auto b = gt.samples();
    double total = 0.0;
    for (std::size_t p = 0; p < mask.size(); ++p) {
        for (int c = 0; c < 3; ++c) total += mask[p] * std::abs(static_cast<double>(a[3 * p + c]) - b[3 * p + c]);
    }
    return total / static_cast<double>(a.size());
}

double energy_loss(const LinearImage& pred, const LinearImage& gt) {
    require_same_size(pred, gt, "energy_loss");
    double num = 0.0;
    double den = 0.0;
    for (float v : pred.samples()) num += std::abs(v);
    for (float v : gt.samples()) den += std::abs(v);
    if (!(den > 0.0)) throw NumericError("energy_loss: ground truth has zero energy");
    return std::abs(num / den - 1.0);
}

void validate(const LossWeights& lw) {
    if (!(lw.lambda_pix >= 0.0) || !(lw.lambda_energy >= 0.0)) throw DomainError("loss weights must be >= 0");
}

double combine_losses(double lbm, double pix, double energy, const LossWeights& lw) {
    validate(lw);
    return lbm + lw.lambda_pix * pix + lw.lambda_energy * energy;
}

void AuxLossRegistry::add(const std::string& key, double lambda, LossFn fn) {
    if (!(lambda >= 0.0)) throw DomainError(fmt::format("loss weight for '{}' must be >= 0", key));
    if (!fn) throw DomainError(fmt::format("loss provider '{}' is empty", key));
    if (!entries_.emplace(key, Entry{lambda, std::move(fn)}).second) {
        throw ValidationError(fmt::format("loss provider '{}' is already registered", key));
    }
}

double AuxLossRegistry::evaluate(const LinearImage& pred, const LinearImage& ref) const {
    double total = 0.0;
    for (const auto& [key, entry] : entries_) total += entry.lambda * entry.fn(pred, ref);
    return total;
}

}  // namespace relight
