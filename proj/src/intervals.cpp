#include "dboot/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "calibrate.hpp"
#include "dboot/errors.hpp"
#include "dboot/resample.hpp"

namespace dboot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_level_open(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw InvalidLevel("confidence level must lie strictly between 0 and 1");
    }
}

/// ceil(level * m) as an order-statistic index, snapping products that land
/// within a few ulps of an integer (levels are often formed as k / m).
std::size_t order_index(double level, std::size_t m) {
    const double scaled = level * static_cast<double>(m);
    const double nearest = std::round(scaled);
    std::size_t k;
    if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, scaled)) {
        k = static_cast<std::size_t>(nearest);
    } else {
        k = static_cast<std::size_t>(std::ceil(scaled));
    }
    return std::clamp<std::size_t>(k, 1, m);
}

double form_root(RootKind kind, double sqn, double num, double sig, std::size_t& degenerate) {
    if (kind == RootKind::percentile) return sqn * num;
    if (sig == 0.0) {
        ++degenerate;
        return num == 0.0 ? 0.0 : std::copysign(kInf, num);
    }
    return sqn * num / sig;
}

void require_monotone(std::size_t covered, std::size_t previous) {
    if (covered < previous) {
        throw std::logic_error("calibration coverage is not monotone in the candidate level");
    }
}

} // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw TooFewObservations("empirical distribution needs at least one value");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::quantile(double level) const {
    if (!(level > 0.0 && level <= 1.0)) {
        throw InvalidLevel("quantile level must lie in (0, 1]");
    }
    return sorted_[order_index(level, sorted_.size()) - 1];
}

double EmpiricalCdf::operator()(double x) const {
    const auto pos = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(pos) / static_cast<double>(sorted_.size());
}

namespace detail {

RootSamplePair compute_roots_both(const Dataset& ds, const SmoothFunctional& f,
                                  const BootstrapPlan& plan, std::uint64_t trial) {
    validate_dataset(ds, 1);
    if (plan.n_outer == 0) throw ConfigError("root computation needs at least one outer resample");

    const PointEstimate pe = point_estimate(f, ds);
    const double sqn = std::sqrt(static_cast<double>(pe.n_eff));
    const std::size_t B = plan.n_outer;
    const std::size_t C = plan.n_inner;

    RootSamplePair out;
    for (RootSample* rs : {&out.percentile, &out.studentized}) {
        rs->theta = pe.theta;
        rs->sigma = pe.sigma;
        rs->n_eff = pe.n_eff;
        rs->n_inner = C;
        rs->outer_root.resize(B);
        rs->inner_root.resize(B * C);
    }
    out.percentile.kind = RootKind::percentile;
    out.studentized.kind = RootKind::percentile_t;

    Resample outer;
    Resample inner;
    std::size_t ignored = 0;
    for (std::size_t b = 0; b < B; ++b) {
        draw_outer_into(outer, ds, plan.seed, trial, b);
        const PointEstimate ob = point_estimate(f, ds, outer);
        const double num_b = ob.theta - pe.theta;
        out.percentile.outer_root[b] =
            form_root(RootKind::percentile, sqn, num_b, ob.sigma, ignored);
        out.studentized.outer_root[b] =
            form_root(RootKind::percentile_t, sqn, num_b, ob.sigma, out.studentized.degenerate_count);
        for (std::size_t c = 0; c < C; ++c) {
            draw_inner_into(inner, ds, outer, plan.seed, trial, b, c);
            const PointEstimate ic = point_estimate(f, ds, inner);
            const double num_c = ic.theta - ob.theta;
            out.percentile.inner_root[b * C + c] =
                form_root(RootKind::percentile, sqn, num_c, ic.sigma, ignored);
            out.studentized.inner_root[b * C + c] = form_root(
                RootKind::percentile_t, sqn, num_c, ic.sigma, out.studentized.degenerate_count);
        }
    }
    return out;
}

Interval interval_at(const PointEstimate& pe, const EmpiricalCdf& outer_cdf, RootKind kind,
                     Side side, double level) {
    const double scale =
        (kind == RootKind::percentile_t ? pe.sigma : 1.0) / std::sqrt(static_cast<double>(pe.n_eff));
    if (side == Side::upper) {
        return Interval{pe.theta - scale * outer_cdf.quantile(level), kInf};
    }
    const double hi = outer_cdf.quantile((1.0 + level) / 2.0);
    const double lo = outer_cdf.quantile((1.0 - level) / 2.0);
    return Interval{pe.theta - scale * hi, pe.theta - scale * lo};
}

WarpContext::WarpContext(const RootSample& roots) {
    const std::size_t B = roots.outer_root.size();
    if (B == 0) throw TooFewObservations("calibration needs at least one outer resample");
    if (roots.n_inner < 1 || roots.inner_root.size() != B * roots.n_inner) {
        throw DimensionMismatch("warp-speed calibration needs an inner root per outer resample");
    }
    outer_sorted = roots.outer_root;
    std::sort(outer_sorted.begin(), outer_sorted.end());
    inner_sorted.resize(B);
    for (std::size_t b = 0; b < B; ++b) inner_sorted[b] = roots.inner_root[b * roots.n_inner];
    std::sort(inner_sorted.begin(), inner_sorted.end());
}

BetaSearch WarpContext::search(Side side, double alpha) const {
    const std::size_t B = outer_sorted.size();
    const auto grid_level = [B](std::size_t k) {
        return static_cast<double>(k) / static_cast<double>(B);
    };

    if (side == Side::upper) {
        // Candidate level k/B covers when the outer root falls strictly below
        // the k-th inner order statistic; the count is nondecreasing in k.
        std::size_t covered = 0;
        for (std::size_t k = 1; k <= B; ++k) {
            const double crit = inner_sorted[k - 1];
            const std::size_t previous = covered;
            while (covered < B && outer_sorted[covered] < crit) ++covered;
            require_monotone(covered, previous);
            if (static_cast<double>(covered) / static_cast<double>(B) >= alpha) {
                return BetaSearch{grid_level(k), false};
            }
        }
        // even the top candidate missed; saturate there so the reported level
        // never drops as alpha rises
        return BetaSearch{1.0, true};
    }

    // Equal-tailed candidate at level k/B uses the inner order statistics at
    // ceil((B -/+ k) / 2); both tails move outward as k grows.
    std::size_t below_hi = 0;
    std::size_t at_or_below_lo = B;
    std::size_t previous = 0;
    for (std::size_t k = 1; k + 1 <= B; ++k) {
        const double hi = inner_sorted[(B + k + 1) / 2 - 1];
        const double lo = inner_sorted[(B - k + 1) / 2 - 1];
        while (below_hi < B && outer_sorted[below_hi] < hi) ++below_hi;
        while (at_or_below_lo > 0 && outer_sorted[at_or_below_lo - 1] > lo) --at_or_below_lo;
        // when the two order statistics tie the bracket is empty; the raw
        // difference would wrap below zero
        const std::size_t covered = below_hi > at_or_below_lo ? below_hi - at_or_below_lo : 0;
        require_monotone(covered, previous);
        previous = covered;
        if (static_cast<double>(covered) / static_cast<double>(B) >= alpha) {
            return BetaSearch{grid_level(k), false};
        }
    }
    return BetaSearch{1.0 - 1.0 / (2.0 * static_cast<double>(B)), true};
}

NestedContext::NestedContext(const RootSample& roots) {
    const std::size_t B = roots.outer_root.size();
    if (B == 0) throw TooFewObservations("calibration needs at least one outer resample");
    if (roots.n_inner < 1 || roots.inner_root.size() != B * roots.n_inner) {
        throw DimensionMismatch("nested calibration needs inner roots for every outer resample");
    }
    outer_root = roots.outer_root;
    inner_rows = roots.inner_root;
    n_inner = roots.n_inner;
    for (std::size_t b = 0; b < B; ++b) {
        auto row = inner_rows.begin() + static_cast<std::ptrdiff_t>(b * n_inner);
        std::sort(row, row + static_cast<std::ptrdiff_t>(n_inner));
    }
}

BetaSearch NestedContext::search(Side side, double alpha) const {
    const std::size_t B = outer_root.size();
    const std::size_t C = n_inner;
    // hist[j] counts outer resamples first covered at candidate level j/C;
    // the last slot absorbs resamples no candidate covers.
    const std::size_t grid_max = side == Side::upper ? C : (C >= 2 ? C - 1 : 0);
    std::vector<std::size_t> hist(grid_max + 2, 0);

    for (std::size_t b = 0; b < B; ++b) {
        const double* row = inner_rows.data() + b * C;
        const double rb = outer_root[b];
        std::size_t jb = grid_max + 1;
        if (side == Side::upper) {
            const std::size_t at_or_below =
                static_cast<std::size_t>(std::upper_bound(row, row + C, rb) - row);
            jb = at_or_below + 1; // smallest j with row[j - 1] > rb
        } else {
            // Indicator is monotone in j: find the smallest candidate whose
            // equal-tailed inner quantiles bracket the outer root.
            std::size_t lo = 1;
            std::size_t hi = grid_max + 1;
            const auto brackets = [&](std::size_t j) {
                const double hv = row[(C + j + 1) / 2 - 1];
                const double lv = row[(C - j + 1) / 2 - 1];
                return lv < rb && rb < hv;
            };
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (brackets(mid)) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            jb = lo;
        }
        ++hist[std::min(jb, grid_max + 1)];
    }

    std::size_t covered = 0;
    for (std::size_t j = 1; j <= grid_max; ++j) {
        covered += hist[j];
        if (static_cast<double>(covered) / static_cast<double>(B) >= alpha) {
            return BetaSearch{static_cast<double>(j) / static_cast<double>(C), false};
        }
    }
    // the upper grid ends at level 1, so saturate there; an equal-tailed
    // interval cannot express level 1 and stops half a step past its grid
    if (side == Side::upper) return BetaSearch{1.0, true};
    return BetaSearch{1.0 - 1.0 / (2.0 * static_cast<double>(C)), true};
}

} // namespace detail

RootSample compute_roots(const Dataset& ds, const SmoothFunctional& f, const BootstrapPlan& plan,
                         std::uint64_t trial) {
    auto pair = detail::compute_roots_both(ds, f, plan, trial);
    return plan.root_kind == RootKind::percentile ? std::move(pair.percentile)
                                                  : std::move(pair.studentized);
}

Interval single_interval(const PointEstimate& pe, const EmpiricalCdf& outer_cdf, RootKind kind,
                         Side side, double alpha) {
    require_level_open(alpha);
    return detail::interval_at(pe, outer_cdf, kind, side, alpha);
}

Calibrated warp_speed_calibrated_interval(const PointEstimate& pe, const RootSample& roots,
                                          Side side, double alpha) {
    require_level_open(alpha);
    const detail::WarpContext ctx(roots);
    const auto found = ctx.search(side, alpha);
    const EmpiricalCdf outer_cdf(roots.outer_root);
    return Calibrated{detail::interval_at(pe, outer_cdf, roots.kind, side, found.beta_hat),
                      found.beta_hat, found.out_of_range};
}

Calibrated conventional_calibrated_interval(const PointEstimate& pe, const RootSample& roots,
                                            Side side, double alpha) {
    require_level_open(alpha);
    const detail::NestedContext ctx(roots);
    const auto found = ctx.search(side, alpha);
    const EmpiricalCdf outer_cdf(roots.outer_root);
    return Calibrated{detail::interval_at(pe, outer_cdf, roots.kind, side, found.beta_hat),
                      found.beta_hat, found.out_of_range};
}

} // namespace dboot
