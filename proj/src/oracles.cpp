#include "dboot/oracles.hpp"

#include <cmath>
#include <vector>

#include "dboot/errors.hpp"
#include "dboot/estimators.hpp"
#include "dboot/math.hpp"
#include "dboot/parallel.hpp"

namespace dboot {

namespace {

void require_univariate(std::size_t dim, const char* what) {
    if (dim != 1) throw DimensionMismatch(std::string(what) + " is defined for one column only");
}

void require_order(const SmoothFunctional& f, int order) {
    if (f.derivative_order() < order) {
        throw DerivativeUnavailable("expansion needs derivatives up to order 4");
    }
}

} // namespace

MomentSet empirical_moments(const Dataset& ds) {
    require_univariate(ds.dim(), "empirical_moments");
    validate_dataset(ds, 1);
    const auto col = ds.column(0);
    MomentSet m;
    m.mean = pairwise_mean(col);
    m.variance = central_moment(col, 2);
    m.third_central = central_moment(col, 3);
    return m;
}

GammaSet gamma_contractions(const SmoothFunctional& f, const MomentSet& m) {
    require_univariate(f.dim(), "gamma_contractions");
    require_order(f, 4);
    GammaSet g;
    g.g2 = m.variance * f.derivative(2, m.mean);
    g.g3 = m.third_central * f.derivative(3, m.mean);
    g.g4 = m.fourth_contraction() * f.derivative(4, m.mean);
    return g;
}

double analytic_bias(const SmoothFunctional& f, const MomentSet& m, std::size_t n) {
    if (n < 1) throw TooFewObservations("analytic bias needs n >= 1");
    const GammaSet g = gamma_contractions(f, m);
    const double dn = static_cast<double>(n);
    return g.g2 / (2.0 * dn) + (g.g3 / 6.0 + g.g4 / 24.0) / (dn * dn);
}

double tau_squared(const SmoothFunctional& f, const MomentSet& m) {
    require_univariate(f.dim(), "tau_squared");
    const double d1 = f.derivative(1, m.mean);
    return m.variance * d1 * d1;
}

IdealCorrected ideal_corrected_expansion(const Dataset& ds, const SmoothFunctional& f) {
    require_univariate(f.dim(), "ideal_corrected_expansion");
    require_order(f, 4);
    const MomentSet m = empirical_moments(ds);
    const GammaSet e = gamma_contractions(f, m);
    const double theta = theta_hat(f, std::vector<double>{m.mean});
    const double dn = static_cast<double>(ds.rows(0));
    const double n2 = dn * dn;

    IdealCorrected out;
    out.single_level = theta - e.g2 / (2.0 * dn) - (e.g3 / 6.0 + e.g4 / 24.0) / n2;
    out.double_level =
        theta - (1.0 + 1.0 / dn) * e.g2 / (2.0 * dn) + (e.g3 / 3.0 + e.g4 / 24.0) / n2;
    return out;
}

VarianceCheck mc_variance_check(const Dataset& ds, const SmoothFunctional& f,
                                const BootstrapPlan& plan, std::size_t m_reruns,
                                std::size_t threads) {
    require_univariate(ds.dim(), "mc_variance_check");
    if (m_reruns < 2) throw ConfigError("variance check needs at least two reruns");
    if (plan.n_outer < 1 || plan.n_inner < 1) {
        throw ConfigError("variance check needs a nested plan (n_outer, n_inner >= 1)");
    }

    std::vector<double> single(m_reruns);
    std::vector<double> dbl(m_reruns);
    parallel_for(m_reruns, threads, [&](std::size_t m) {
        const BiasRun run = run_bias_bootstrap(ds, f, plan, m, InnerRetention::sums);
        single[m] = bc_single(run);
        dbl[m] = bc_double(run);
    });

    VarianceCheck out;
    out.reruns = m_reruns;
    out.var_single = sample_variance(single);
    out.var_double = sample_variance(dbl);
    out.ratio = out.var_double / out.var_single;
    out.expected_ratio = 4.0 + 1.0 / static_cast<double>(plan.n_inner);
    out.tau2_plugin = tau_squared(f, empirical_moments(ds));
    out.bn_var_single =
        static_cast<double>(plan.n_outer) * static_cast<double>(ds.rows(0)) * out.var_single;
    return out;
}

} // namespace dboot
