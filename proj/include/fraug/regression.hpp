#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fraug/error.hpp"

namespace fraug {

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd std_errors;
    double rss = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ X with classical standard errors.
/// @throws Error SingularRegression when X is rank deficient or has no
///         residual degrees of freedom.
[[nodiscard]] inline OlsFit ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const auto n = x.rows();
    const auto p = x.cols();
    if (n <= p) {
        fail(ErrorCode::SingularRegression, "regression has no residual degrees of freedom");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < p) {
        fail(ErrorCode::SingularRegression, "design matrix is rank deficient");
    }
    OlsFit fit;
    fit.beta = qr.solve(y);
    const Eigen::VectorXd resid = y - x * fit.beta;
    fit.rss = resid.squaredNorm();
    const double sigma2 = fit.rss / static_cast<double>(n - p);
    const Eigen::MatrixXd xtx_inv =
        (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    fit.std_errors = (sigma2 * xtx_inv.diagonal()).cwiseSqrt();
    const double tss = (y.array() - y.mean()).square().sum();
    fit.r2 = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
    return fit;
}

/// Intercept and slope of y on x.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};

[[nodiscard]] inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::LengthMismatch, "x and y differ in length");
    if (x.size() < 2) fail(ErrorCode::SingularRegression, "a line needs at least 2 points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) fail(ErrorCode::SingularRegression, "x has zero variance");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace fraug
