#include "dboot/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dboot/errors.hpp"
#include "dboot/math.hpp"

namespace dboot {

namespace {

// Uniform access to the original sample and to resamples of it.
struct View {
    const Dataset* ds;
    const Resample* rs; // nullptr = original sample

    std::size_t dim() const { return ds->dim(); }
    std::size_t rows(std::size_t j) const {
        return rs ? rs->column_indices(j).size() : ds->rows(j);
    }
    double at(std::size_t j, std::size_t i) const {
        return rs ? ds->column(j)[rs->column_indices(j)[i]] : ds->column(j)[i];
    }
};

std::vector<double> view_mean(const View& v) {
    std::vector<double> m(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) {
        double s = 0.0;
        const std::size_t n = v.rows(j);
        for (std::size_t i = 0; i < n; ++i) s += v.at(j, i);
        m[j] = s / static_cast<double>(n);
    }
    return m;
}

// Divisor-n central covariance of columns j and k. Only valid when the two
// columns are aligned (same length); callers restrict to that case.
double view_cov(const View& v, std::span<const double> mean, std::size_t j, std::size_t k) {
    const std::size_t n = v.rows(j);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (v.at(j, i) - mean[j]) * (v.at(k, i) - mean[k]);
    return s / static_cast<double>(n);
}

double sigma_from_view(const SmoothFunctional& f, const View& v, std::span<const double> mean) {
    const std::size_t p = v.dim();
    std::vector<double> grad(p);
    std::size_t ji[1];
    for (std::size_t j = 0; j < p; ++j) {
        ji[0] = j;
        grad[j] = f.partial(std::span<const std::size_t>(ji, 1), mean);
    }
    double s2 = 0.0;
    if (v.ds->model() == DependenceModel::vector_iid) {
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < p; ++k) s2 += grad[j] * grad[k] * view_cov(v, mean, j, k);
    } else {
        // Independent columns: diagonal covariance, each term rescaled so
        // that s2 / n_eff estimates Var(theta_hat).
        std::size_t n_eff = v.rows(0);
        for (std::size_t j = 1; j < p; ++j) n_eff = std::min(n_eff, v.rows(j));
        for (std::size_t j = 0; j < p; ++j)
            s2 += grad[j] * grad[j] * view_cov(v, mean, j, j) * static_cast<double>(n_eff) /
                  static_cast<double>(v.rows(j));
    }
    return s2 > 0.0 ? std::sqrt(s2) : 0.0;
}

PointEstimate estimate_from_view(const SmoothFunctional& f, const View& v) {
    const auto mean = view_mean(v);
    PointEstimate pe;
    pe.theta = theta_hat(f, mean);
    pe.sigma = sigma_from_view(f, v, mean);
    pe.n_eff = v.rows(0);
    for (std::size_t j = 1; j < v.dim(); ++j) pe.n_eff = std::min(pe.n_eff, v.rows(j));
    return pe;
}

} // namespace

double theta_hat(const SmoothFunctional& f, std::span<const double> mean) {
    const double t = f.value(mean);
    if (!std::isfinite(t)) throw NonFiniteValue("functional '" + f.name() + "' is not finite");
    return t;
}

double sigma_hat(const SmoothFunctional& f, const Dataset& ds) {
    const View v{&ds, nullptr};
    return sigma_from_view(f, v, view_mean(v));
}

double sigma_hat(const SmoothFunctional& f, const Dataset& ds, const Resample& rs) {
    const View v{&ds, &rs};
    return sigma_from_view(f, v, view_mean(v));
}

PointEstimate point_estimate(const SmoothFunctional& f, const Dataset& ds) {
    return estimate_from_view(f, View{&ds, nullptr});
}

PointEstimate point_estimate(const SmoothFunctional& f, const Dataset& ds, const Resample& rs) {
    return estimate_from_view(f, View{&ds, &rs});
}

} // namespace dboot
