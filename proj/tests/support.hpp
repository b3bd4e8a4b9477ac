#pragma once

// Shared oracles and helpers for the test suites: distributional test
// statistics, finite-difference derivative checks, and small parsing
// utilities for emitted reports.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dboot/dataset.hpp"
#include "dboot/functional.hpp"
#include "dboot/generators.hpp"
#include "dboot/math.hpp"

namespace testsupport {

inline dboot::Dataset univariate(std::vector<double> values) {
    return dboot::Dataset({std::move(values)}, dboot::DependenceModel::vector_iid);
}

/// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> draws, const std::function<double(double)>& cdf) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double F = cdf(draws[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
        d = std::max(d, std::abs(static_cast<double>(i) / n - F));
    }
    return d;
}

/// Asymptotic two-sided KS critical value at level 0.001.
inline double ks_critical_0001(std::size_t n) { return 1.94947 / std::sqrt(static_cast<double>(n)); }

/// Wilson-Hilferty approximation to the chi-square quantile.
inline double chi_square_quantile(double df, double p) {
    const double z = dboot::inverse_normal_cdf(p);
    const double a = 2.0 / (9.0 * df);
    const double t = 1.0 - a + z * std::sqrt(a);
    return df * t * t * t;
}

/// Central finite-difference derivative of order 1..4 with one Richardson
/// extrapolation step (error O(h^4)). Test oracle only; the library supplies
/// closed-form derivatives.
inline double fd_derivative(const dboot::SmoothFunctional& f, int order, double x) {
    const auto eval = [&](double u) { return f.value(std::vector<double>{u}); };
    const auto stencil = [&](double h) {
        switch (order) {
            case 1:
                return (eval(x + h) - eval(x - h)) / (2.0 * h);
            case 2:
                return (eval(x + h) - 2.0 * eval(x) + eval(x - h)) / (h * h);
            case 3:
                return (eval(x + 2.0 * h) - 2.0 * eval(x + h) + 2.0 * eval(x - h) -
                        eval(x - 2.0 * h)) /
                       (2.0 * h * h * h);
            default:
                return (eval(x + 2.0 * h) - 4.0 * eval(x + h) + 6.0 * eval(x) -
                        4.0 * eval(x - h) + eval(x - 2.0 * h)) /
                       (h * h * h * h);
        }
    };
    const double h = order <= 2 ? 1e-4 : 2e-2;
    return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

inline dboot::DataGenerator standard_normal_generator() {
    dboot::MomentSet m;
    m.mean = 0.0;
    m.variance = 1.0;
    m.third_central = 0.0;
    return dboot::DataGenerator::custom(
        "normal", [](double u) { return dboot::inverse_normal_cdf(u); }, m);
}

} // namespace testsupport
