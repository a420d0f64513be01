// Exact discretization of two-dimensional linear SDEs

#pragma once

#include <Eigen/Dense>

namespace qle::linear_sde {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

// dZ = A Z dt + dW with ⟨dW dWᵀ⟩ = D dt. Over a step h the update is
// Z ← Φ Z + L ξ, ξ ~ N(0, I), with LLᵀ the accumulated step covariance.
struct Transition {
    Mat2 propagator;
    Mat2 covariance;
    Mat2 noise_factor;  // lower triangular
};

// Van Loan block exponential. D must be symmetric positive semidefinite.
Transition exact_transition(const Mat2& drift, const Mat2& diffusion, double h);

// Solves A S + S Aᵀ + D = 0. Throws std::domain_error unless A is stable.
Mat2 stationary_covariance(const Mat2& drift, const Mat2& diffusion);

// Lower Cholesky factor of a 2×2 PSD matrix; singular directions get zero.
Mat2 psd_cholesky(const Mat2& m);

} // namespace qle::linear_sde
