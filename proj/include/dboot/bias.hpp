#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dboot/dataset.hpp"
#include "dboot/functional.hpp"
#include "dboot/plan.hpp"

namespace dboot {

/// How much of the inner level a bias run keeps. `sums` stores one
/// accumulated sum per outer resample (enough for every estimator here);
/// `full` additionally retains all B*C inner estimates; `none` skips the
/// inner level entirely.
enum class InnerRetention {
    none,
    sums,
    full,
};

enum class BiasKind {
    single_level,
    double_level,
};

/// Raw material of one nested bias-correction run: the point estimate, the B
/// outer estimates theta*_b, and per-b sums of the C inner estimates
/// theta**_bc. All cross-b reductions later use fixed pairwise order, so
/// results do not depend on how work was scheduled.
struct BiasRun {
    double theta = 0.0;
    std::vector<double> outer_theta;
    std::vector<double> inner_sum;   // empty when the inner level was skipped
    std::vector<double> inner_theta; // B*C row-major; only with InnerRetention::full
    std::size_t n_inner = 0;
    std::size_t n_eff = 0;
};

/// Draw B outer resamples and, when plan.n_inner > 0 and retention allows, C
/// inner resamples under each, evaluating f on every resample mean. Streams
/// are addressed by (seed, trial, level, b, c), so any (b, c) cell can be
/// reproduced in isolation.
BiasRun run_bias_bootstrap(const Dataset& ds, const SmoothFunctional& f, const BootstrapPlan& plan,
                           std::uint64_t trial = 0,
                           InnerRetention retention = InnerRetention::sums);

/// Bias-corrected estimates:
///   single: 2 theta - mean_b theta*_b
///   double: 3 theta - (3/B) sum_b theta*_b + (1/(B C)) sum_bc theta**_bc
double bc_single(const BiasRun& run);
double bc_double(const BiasRun& run);

/// Additive bias estimate such that theta - bias_estimate(run, kind) equals
/// the corrected estimate of the same kind, exactly in floating point.
double bias_estimate(const BiasRun& run, BiasKind kind);

/// One pass that serves several inner sizes at once: inner estimates for
/// c < C_max are accumulated and snapshotted at each requested C, giving
/// results bit-identical to separate runs at those C (the level-2 stream for
/// (b, c) does not depend on C). c_values must be ascending and positive.
struct MultiCBias {
    double theta = 0.0;
    double single_estimate = 0.0;               // bias estimate, single level
    std::vector<double> double_estimate;        // bias estimate per requested C
};
MultiCBias run_bias_multi_c(const Dataset& ds, const SmoothFunctional& f, std::size_t n_outer,
                            std::span<const std::size_t> c_values, std::uint64_t seed,
                            std::uint64_t trial = 0);

} // namespace dboot
