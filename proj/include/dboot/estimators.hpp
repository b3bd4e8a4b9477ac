#pragma once

#include <cstddef>
#include <span>

#include "dboot/dataset.hpp"
#include "dboot/functional.hpp"
#include "dboot/resample.hpp"

namespace dboot {

/// Point estimate theta = f(mean) plus the studentizing scale sigma and the
/// n used in sqrt(n) scaling. sigma^2 is the delta-method quadratic form
/// sum_{j,k} f_j(mean) f_k(mean) Cov_hat(j, k) with divisor-n covariances;
/// under componentwise independence the covariance is diagonal and each
/// variance is rescaled by n_eff / n_j.
struct PointEstimate {
    double theta = 0.0;
    double sigma = 0.0;
    std::size_t n_eff = 0;
};

/// f(mean); throws NonFiniteValue when the result is NaN or infinite.
double theta_hat(const SmoothFunctional& f, std::span<const double> mean);

/// Delta-method scale on the original sample or on a resample.
double sigma_hat(const SmoothFunctional& f, const Dataset& ds);
double sigma_hat(const SmoothFunctional& f, const Dataset& ds, const Resample& rs);

/// theta and sigma in one pass.
PointEstimate point_estimate(const SmoothFunctional& f, const Dataset& ds);
PointEstimate point_estimate(const SmoothFunctional& f, const Dataset& ds, const Resample& rs);

} // namespace dboot
