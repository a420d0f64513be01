#include "qle/linear_sde.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qle::linear_sde {

Mat2 psd_cholesky(const Mat2& m) {
    Mat2 l = Mat2::Zero();
    const double a = std::max(m(0, 0), 0.0);
    l(0, 0) = std::sqrt(a);
    l(1, 0) = l(0, 0) > 0.0 ? m(1, 0) / l(0, 0) : 0.0;
    l(1, 1) = std::sqrt(std::max(m(1, 1) - l(1, 0) * l(1, 0), 0.0));
    return l;
}

Transition exact_transition(const Mat2& drift, const Mat2& diffusion, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("exact_transition: step must be positive");
    Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
    block.topLeftCorner<2, 2>() = -drift * h;
    block.topRightCorner<2, 2>() = diffusion * h;
    block.bottomRightCorner<2, 2>() = drift.transpose() * h;
    const Eigen::Matrix4d e = block.exp();

    Transition t;
    t.propagator = e.bottomRightCorner<2, 2>().transpose();
    Mat2 q = t.propagator * e.topRightCorner<2, 2>();
    q = 0.5 * (q + q.transpose());
    t.covariance = q;
    t.noise_factor = psd_cholesky(q);
    return t;
}

Mat2 stationary_covariance(const Mat2& drift, const Mat2& diffusion) {
    const Eigen::Vector2cd ev = drift.eigenvalues();
    if (!(ev[0].real() < 0.0 && ev[1].real() < 0.0)) {
        throw std::domain_error("stationary_covariance: drift is not stable");
    }
    // (I ⊗ A + A ⊗ I) vec(S) = −vec(D), column-major vec.
    const Mat2 id = Mat2::Identity();
    Eigen::Matrix4d k;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            k.block<2, 2>(2 * i, 2 * j) = id(i, j) * drift + drift(i, j) * id;
        }
    }
    const Eigen::Vector4d rhs = -Eigen::Map<const Eigen::Vector4d>(diffusion.data());
    const Eigen::Vector4d vec_s = k.fullPivLu().solve(rhs);
    Mat2 s = Eigen::Map<const Mat2>(vec_s.data());
    return 0.5 * (s + s.transpose());
}

} // namespace qle::linear_sde
