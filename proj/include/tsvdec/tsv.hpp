#pragma once

#include <array>
#include <vector>

#include "tsvdec/field.hpp"

namespace tsvdec {

struct TsvParams {
    double sigma1 = 2.75; ///< spread along the probing line (line length)
    double sigma2 = 0.75; ///< spread across the probing line (line width)
    int window = 20;      ///< kernel support extent; radius = window/2
    double kappa = 0.1;   ///< strictly positive floor of the weight field

    void validate() const {
        if (sigma1 <= 0 || sigma2 <= 0)
            throw std::invalid_argument("TsvParams: sigmas must be positive");
        if (kappa <= 0)
            throw std::invalid_argument("TsvParams: kappa must be positive");
        if (window < 3)
            throw std::invalid_argument("TsvParams: window must be at least 3");
    }

    int radius() const { return window / 2; }
};

/// Normalized, point-symmetric nonnegative weights on a (2R+1)^2 support.
class Kernel {
public:
    explicit Kernel(int radius)
        : radius_(radius), w_(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1), 0.0) {}

    int radius() const { return radius_; }
    int extent() const { return 2 * radius_ + 1; }

    /// k, l are offsets in [-R, R].
    double& at(int k, int l) {
        return w_[static_cast<std::size_t>(k + radius_) * extent() + (l + radius_)];
    }
    double at(int k, int l) const {
        return w_[static_cast<std::size_t>(k + radius_) * extent() + (l + radius_)];
    }

    double sum() const;

    /// Wraps the support onto an M x N periodic grid, accumulating offsets
    /// that collide modulo the grid (supports smaller grids than the kernel).
    ScalarField wrapped(int rows, int cols) const;

private:
    int radius_;
    std::vector<double> w_;
};

/// Directional kernel w_theta(k,l) ~ exp(-(a k^2 + 2b k l + c l^2)) with
///   a = cos^2(t)/(2 s1) + sin^2(t)/(2 s2)
///   b = sin(2t)/(4 s1) - sin(2t)/(4 s2)
///   c = sin^2(t)/(2 s1) + cos^2(t)/(2 s2)
/// normalized to unit sum over the support.
Kernel build_kernel(double theta, const TsvParams& p);

/// The quadratic-form coefficients above, exposed for tests.
struct KernelCoeffs { double a, b, c; };
KernelCoeffs kernel_coeffs(double theta, double sigma1, double sigma2);

/// One kernel per probing direction theta in {0, pi/2, pi/4, 3pi/4},
/// aligned with difference axes 1..4.
struct KernelStack {
    std::array<Kernel, 4> k;
    static const std::array<double, 4>& thetas();
};

KernelStack build_kernel_stack(const TsvParams& p);

/// Signed directional terms of the symmetric-variation map: for each
/// direction, the kernel-weighted periodic correlation of the forward
/// difference along that direction.
std::array<ScalarField, 4> compute_tsv_terms(const ScalarField& f, const TsvParams& p);

/// Total symmetric variation: sum over the four directions of the absolute
/// value of the weighted directional difference. Nonnegative; near zero in
/// homogeneous or uniformly textured interiors, large at region boundaries.
ScalarField compute_tsv(const ScalarField& f, const TsvParams& p);

/// eta = kappa + TSV, strictly positive everywhere.
struct WeightField {
    ScalarField eta;
    double kappa = 0.0;
};

WeightField build_eta(const ScalarField& f, const TsvParams& p);

/// Spatially constant weight (the plain G-norm baseline).
WeightField constant_eta(int rows, int cols, double value);

} // namespace tsvdec
