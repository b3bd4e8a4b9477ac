#include "dboot/bias.hpp"

#include <stdexcept>
#include <vector>

#include "dboot/estimators.hpp"
#include "dboot/math.hpp"
#include "dboot/resample.hpp"
#include "dboot/rng.hpp"

namespace dboot {

namespace {

// Shared scratch for one nested sweep over a dataset: outer index buffers and
// per-column accumulators, reused across all (b, c).
struct Sweep {
    const Dataset& ds;
    const SmoothFunctional& f;
    std::uint64_t seed;
    std::uint64_t trial;
    Resample outer;
    std::vector<double> mean;

    Sweep(const Dataset& ds_, const SmoothFunctional& f_, std::uint64_t seed_,
          std::uint64_t trial_)
        : ds(ds_), f(f_), seed(seed_), trial(trial_), mean(ds_.dim()) {}

    double outer_theta(std::uint64_t b) {
        draw_outer_into(outer, ds, seed, trial, b);
        for (std::size_t j = 0; j < ds.dim(); ++j) {
            const auto col = ds.column(j);
            const auto idx = outer.column_indices(j);
            double s = 0.0;
            for (std::uint32_t i : idx) s += col[i];
            mean[j] = s / static_cast<double>(idx.size());
        }
        return theta_hat(f, mean);
    }

    // Inner estimate (b, c), composing position draws through the current
    // outer resample. Consumes the level-2 stream of (trial, b, c) in exactly
    // the order draw_inner does, so the value matches the materialized path
    // bit for bit.
    double inner_theta(std::uint64_t b, std::uint64_t c) {
        CounterRng rng = make_stream(seed, SeedPath::inner(trial, b, c));
        for (std::size_t j = 0; j < outer.seq.size(); ++j) {
            const auto& src = outer.seq[j];
            const auto n = static_cast<std::uint32_t>(src.size());
            if (ds.model() == DependenceModel::vector_iid) {
                // One shared index sequence feeds every column.
                double sums[8] = {};
                for (std::uint32_t i = 0; i < n; ++i) {
                    const std::uint32_t r = src[rng.next_index(n)];
                    for (std::size_t k = 0; k < ds.dim(); ++k) sums[k] += ds.column(k)[r];
                }
                for (std::size_t k = 0; k < ds.dim(); ++k)
                    mean[k] = sums[k] / static_cast<double>(n);
            } else {
                const auto col = ds.column(j);
                double s = 0.0;
                for (std::uint32_t i = 0; i < n; ++i) s += col[src[rng.next_index(n)]];
                mean[j] = s / static_cast<double>(n);
            }
        }
        return theta_hat(f, mean);
    }
};

// Additive double-level bias estimate (3/B) sum theta* - (1/(BC)) sum theta**
// - 2 theta.
double double_bias_estimate(double theta, std::span<const double> outer_theta,
                            std::span<const double> inner_sum, std::size_t n_inner) {
    const double outer_mean = pairwise_mean(outer_theta);
    const double inner_mean =
        pairwise_sum(inner_sum) /
        (static_cast<double>(outer_theta.size()) * static_cast<double>(n_inner));
    return 3.0 * outer_mean - inner_mean - 2.0 * theta;
}

} // namespace

BiasRun run_bias_bootstrap(const Dataset& ds, const SmoothFunctional& f, const BootstrapPlan& plan,
                           std::uint64_t trial, InnerRetention retention) {
    if (plan.n_outer == 0) throw std::invalid_argument("bias bootstrap needs n_outer >= 1");
    const bool want_inner = retention != InnerRetention::none;
    if (want_inner && plan.n_inner == 0)
        throw std::invalid_argument("inner retention requested with n_inner = 0");

    BiasRun run;
    run.n_eff = ds.n_eff();
    run.theta = theta_hat(f, sample_mean(ds));
    run.outer_theta.resize(plan.n_outer);
    const std::size_t c_count = want_inner ? plan.n_inner : 0;
    run.n_inner = c_count;
    if (c_count > 0) run.inner_sum.resize(plan.n_outer);
    if (retention == InnerRetention::full) run.inner_theta.resize(plan.n_outer * c_count);

    Sweep sweep(ds, f, plan.seed, trial);
    for (std::uint64_t b = 0; b < plan.n_outer; ++b) {
        run.outer_theta[b] = sweep.outer_theta(b);
        if (c_count == 0) continue;
        double s = 0.0;
        for (std::uint64_t c = 0; c < c_count; ++c) {
            const double t = sweep.inner_theta(b, c);
            if (retention == InnerRetention::full) run.inner_theta[b * c_count + c] = t;
            s += t;
        }
        run.inner_sum[b] = s;
    }
    return run;
}

double bias_estimate(const BiasRun& run, BiasKind kind) {
    if (kind == BiasKind::single_level) return pairwise_mean(run.outer_theta) - run.theta;
    if (run.inner_sum.empty())
        throw std::invalid_argument("double-level estimate needs an inner level");
    return double_bias_estimate(run.theta, run.outer_theta, run.inner_sum, run.n_inner);
}

double bc_single(const BiasRun& run) {
    return run.theta - bias_estimate(run, BiasKind::single_level);
}

double bc_double(const BiasRun& run) {
    return run.theta - bias_estimate(run, BiasKind::double_level);
}

MultiCBias run_bias_multi_c(const Dataset& ds, const SmoothFunctional& f, std::size_t n_outer,
                            std::span<const std::size_t> c_values, std::uint64_t seed,
                            std::uint64_t trial) {
    if (n_outer == 0) throw std::invalid_argument("bias bootstrap needs n_outer >= 1");
    for (std::size_t k = 0; k < c_values.size(); ++k) {
        if (c_values[k] == 0 || (k > 0 && c_values[k] <= c_values[k - 1]))
            throw std::invalid_argument("c_values must be ascending and positive");
    }

    MultiCBias out;
    out.theta = theta_hat(f, sample_mean(ds));

    std::vector<double> outer_theta(n_outer);
    std::vector<std::vector<double>> inner_sums(c_values.size(),
                                                std::vector<double>(n_outer, 0.0));
    const std::size_t c_max = c_values.empty() ? 0 : c_values.back();

    Sweep sweep(ds, f, seed, trial);
    for (std::uint64_t b = 0; b < n_outer; ++b) {
        outer_theta[b] = sweep.outer_theta(b);
        double s = 0.0;
        std::size_t k = 0;
        for (std::uint64_t c = 0; c < c_max; ++c) {
            s += sweep.inner_theta(b, c);
            while (k < c_values.size() && c + 1 == c_values[k]) inner_sums[k++][b] = s;
        }
    }

    out.single_estimate = pairwise_mean(outer_theta) - out.theta;
    out.double_estimate.resize(c_values.size());
    for (std::size_t k = 0; k < c_values.size(); ++k)
        out.double_estimate[k] =
            double_bias_estimate(out.theta, outer_theta, inner_sums[k], c_values[k]);
    return out;
}

} // namespace dboot
