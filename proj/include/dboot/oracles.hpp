#pragma once

#include <cstddef>
#include <cstdint>

#include "dboot/bias.hpp"
#include "dboot/dataset.hpp"
#include "dboot/functional.hpp"
#include "dboot/plan.hpp"

namespace dboot {

/// Univariate moment triple (mean, central variance, third central moment).
/// The fourth-order contraction entering the expansion terms is 3 * variance^2
/// by definition (the pairwise product combination), not the fourth moment.
struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;
    double third_central = 0.0;

    double fourth_contraction() const { return 3.0 * variance * variance; }
};

/// Divisor-n plug-in moments of a univariate dataset.
MomentSet empirical_moments(const Dataset& ds);

/// Derivative-weighted contractions at the mean:
///   g2 = variance * f''(mean)
///   g3 = third_central * f'''(mean)
///   g4 = 3 * variance^2 * f''''(mean)
struct GammaSet {
    double g2 = 0.0;
    double g3 = 0.0;
    double g4 = 0.0;
};
GammaSet gamma_contractions(const SmoothFunctional& f, const MomentSet& m);

/// Two-term expansion of E f(sample mean) - f(mu):
///   g2 / (2 n) + (g3 / 6 + g4 / 24) / n^2.
/// Throws DerivativeUnavailable unless derivatives up to order 4 exist.
double analytic_bias(const SmoothFunctional& f, const MomentSet& m, std::size_t n);

/// Asymptotic variance scale of sqrt(n) (theta_hat - theta):
/// variance * f'(mean)^2.
double tau_squared(const SmoothFunctional& f, const MomentSet& m);

/// Infinite-replication limits of the bias-corrected estimators on a fixed
/// sample, from the plug-in expansion with e_r the empirical gamma
/// contractions at the sample mean:
///   single: theta - e2/(2n) - (e3/6 + e4/24)/n^2
///   double: theta - (1 + 1/n) e2/(2n) + (e3/3 + e4/24)/n^2
/// The Monte Carlo estimators converge to these as B (and C) grow, up to
/// O(n^-3) remainders. For a cubic f the single formula is the exact limit
/// and the double one misses it by an explicit e3-level n^-3 term; the
/// oracle tests pin both against closed-form resampling moments.
struct IdealCorrected {
    double single_level = 0.0;
    double double_level = 0.0;
};
IdealCorrected ideal_corrected_expansion(const Dataset& ds, const SmoothFunctional& f);

/// Re-run the nested bias bootstrap m_reruns times on the same dataset with
/// replicate-indexed streams and compare the spread of the corrected
/// estimates against theory: Var(single) ~ tau^2 / (B n) and
/// Var(double) / Var(single) ~ 4 + 1/C.
struct VarianceCheck {
    double var_single = 0.0;
    double var_double = 0.0;
    double ratio = 0.0;          // var_double / var_single
    double expected_ratio = 0.0; // 4 + 1/C
    double tau2_plugin = 0.0;    // tau_squared at the empirical moments
    double bn_var_single = 0.0;  // B * n * var_single, comparable to tau2
    std::size_t reruns = 0;
};
VarianceCheck mc_variance_check(const Dataset& ds, const SmoothFunctional& f,
                                const BootstrapPlan& plan, std::size_t m_reruns,
                                std::size_t threads = 1);

} // namespace dboot
