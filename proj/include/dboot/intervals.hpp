#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dboot/dataset.hpp"
#include "dboot/estimators.hpp"
#include "dboot/functional.hpp"
#include "dboot/plan.hpp"

namespace dboot {

/// Right-continuous empirical distribution of a set of roots. quantile(a)
/// returns the ceil(a * B)-th order statistic, the exact inverse of the step
/// CDF, so F(quantile(a)) >= a always holds. Levels must lie in (0, 1].
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> values);

    double quantile(double level) const;
    double operator()(double x) const;
    std::size_t size() const { return sorted_.size(); }
    std::span<const double> sorted_values() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

/// Bootstrap roots of one nested run. outer_root[b] compares resample b
/// against the sample; inner_root[b * C + c] compares inner resample (b, c)
/// against outer resample b. Studentized roots with a zero scale are mapped
/// to 0 when the numerator is also zero and to +/-infinity otherwise;
/// degenerate_count says how often that happened.
struct RootSample {
    RootKind kind = RootKind::percentile_t;
    double theta = 0.0;
    double sigma = 0.0;
    std::size_t n_eff = 0;
    std::size_t n_inner = 0;
    std::vector<double> outer_root;
    std::vector<double> inner_root;
    std::size_t degenerate_count = 0;
};

/// Draw plan.n_outer outer resamples (and plan.n_inner inner resamples under
/// each) and form the roots of plan.root_kind. Scales are recomputed on every
/// resample; nothing is reused from the original sample.
RootSample compute_roots(const Dataset& ds, const SmoothFunctional& f, const BootstrapPlan& plan,
                         std::uint64_t trial = 0);

/// Open interval; one-sided bounds use +infinity as the upper end.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double x) const { return lower < x && x < upper; }
};

/// Uncalibrated single-bootstrap interval at level alpha from the empirical
/// distribution of outer roots:
///   percentile-t upper:  (theta - sigma * q(alpha) / sqrt(n), +inf)
///   percentile upper:    (theta - q(alpha) / sqrt(n), +inf)
/// Two-sided intervals are equal-tailed at levels (1 +/- alpha) / 2.
/// Throws InvalidLevel for alpha outside (0, 1).
Interval single_interval(const PointEstimate& pe, const EmpiricalCdf& outer_cdf, RootKind kind,
                         Side side, double alpha);

/// Calibration result. When no candidate level reaches the nominal coverage,
/// the search saturates at the most conservative expressible level (1 for
/// upper bounds, 1 - 1/(2K) for an equal-tailed K-point grid, which cannot
/// express level 1) and out_of_range is set, so beta_hat is nondecreasing in
/// alpha either way.
struct Calibrated {
    Interval interval;
    double beta_hat = 0.0;
    bool out_of_range = false;
};

/// Warp-speed calibration: one inner root per outer resample. The nominal
/// level is adjusted to the smallest beta on the grid {k/B} whose
/// interval-from-inner-quantiles would have covered theta_hat in at least
/// alpha of the outer resamples; the returned interval is the single-level
/// interval at level beta_hat. Uses inner root c = 0 when the run kept more.
Calibrated warp_speed_calibrated_interval(const PointEstimate& pe, const RootSample& roots,
                                          Side side, double alpha);

/// Conventional nested calibration: each outer resample b gets its own
/// empirical inner distribution, the coverage indicator compares the outer
/// root against that b-specific quantile, and beta is searched on the grid
/// {k/C}. With C = 1 every inner quantile collapses to the single inner root
/// and the search is flat; warp_speed_calibrated_interval is the estimator
/// meant for that regime.
Calibrated conventional_calibrated_interval(const PointEstimate& pe, const RootSample& roots,
                                            Side side, double alpha);

} // namespace dboot
