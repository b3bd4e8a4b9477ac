#include "dboot/plan.hpp"

#include <cmath>

namespace dboot {

std::size_t sqrt_inner_rule(std::size_t n_outer) {
    return static_cast<std::size_t>(std::floor(10.0 * std::sqrt(static_cast<double>(n_outer))));
}

BootstrapPlan BootstrapPlan::with_sqrt_inner_rule(std::size_t n_outer, std::uint64_t seed,
                                                  RootKind kind) {
    return BootstrapPlan{n_outer, dboot::sqrt_inner_rule(n_outer), seed, kind};
}

} // namespace dboot
