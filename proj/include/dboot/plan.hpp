#pragma once

#include <cstddef>
#include <cstdint>

namespace dboot {

/// Which root the bootstrap distribution is built from.
/// percentile:   sqrt(n) * (theta* - theta)
/// percentile_t: sqrt(n) * (theta* - theta) / sigma*, with sigma* recomputed
///               on the resample the numerator came from.
enum class RootKind {
    percentile,
    percentile_t,
};

/// One-sided intervals are upper confidence bounds open to +infinity;
/// two-sided intervals are equal-tailed.
enum class Side {
    upper,
    two_sided,
};

/// Replication sizes and seed for a nested bootstrap run. n_inner = 0 means a
/// single-level run; n_inner = 1 is the warp-speed regime.
struct BootstrapPlan {
    std::size_t n_outer = 0;
    std::size_t n_inner = 0;
    std::uint64_t seed = 0;
    RootKind root_kind = RootKind::percentile_t;

    /// Plan with the heavy inner rule C = floor(10 * sqrt(B)) used by the
    /// conventional nested bootstrap.
    static BootstrapPlan with_sqrt_inner_rule(std::size_t n_outer, std::uint64_t seed,
                                              RootKind kind = RootKind::percentile_t);
};

/// floor(10 * sqrt(B)).
std::size_t sqrt_inner_rule(std::size_t n_outer);

} // namespace dboot
