#pragma once

// Internal layer behind the public calibrated-interval functions. The
// experiment runner evaluates several sides and methods on one RootSample;
// these contexts hold the sorted state so that work happens once.

#include <cstddef>
#include <vector>

#include "dboot/estimators.hpp"
#include "dboot/intervals.hpp"
#include "dboot/plan.hpp"

namespace dboot::detail {

/// Percentile and studentized roots from one set of draws. The numerator
/// passes are shared, so this costs one nested sweep, not two.
struct RootSamplePair {
    RootSample percentile;
    RootSample studentized;
};

RootSamplePair compute_roots_both(const Dataset& ds, const SmoothFunctional& f,
                                  const BootstrapPlan& plan, std::uint64_t trial);

/// Interval endpoints at an arbitrary (possibly calibrated) level from the
/// sorted outer roots. level may be 1 after boundary fallbacks.
Interval interval_at(const PointEstimate& pe, const EmpiricalCdf& outer_cdf, RootKind kind,
                     Side side, double level);

struct BetaSearch {
    double beta_hat = 0.0;
    bool out_of_range = false;
};

/// Warp-speed shared state: sorted outer roots and sorted single inner roots.
struct WarpContext {
    explicit WarpContext(const RootSample& roots);

    BetaSearch search(Side side, double alpha) const;

    std::vector<double> outer_sorted;
    std::vector<double> inner_sorted;
};

/// Conventional nested shared state: sorted outer roots plus each outer
/// resample's inner roots sorted within their row.
struct NestedContext {
    explicit NestedContext(const RootSample& roots);

    BetaSearch search(Side side, double alpha) const;

    std::vector<double> outer_root; // original order
    std::vector<double> inner_rows; // B x C, each row sorted
    std::size_t n_inner = 0;
};

} // namespace dboot::detail
