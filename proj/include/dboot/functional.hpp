#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dboot {

/// Smooth real-valued function of a mean vector together with its partial
/// derivatives. Estimands have the form theta = f(mu); everything downstream
/// (scale estimates, analytic bias, expansion oracles) pulls derivatives from
/// here instead of differentiating numerically.
///
/// partial(idx, x) evaluates the mixed partial with respect to the listed
/// component indices, e.g. idx = {0, 0} is the second derivative in the first
/// coordinate. Orders above derivative_order() throw DerivativeUnavailable.
class SmoothFunctional {
  public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using PartialFn = std::function<double(std::span<const std::size_t>, std::span<const double>)>;

    SmoothFunctional(std::string name, std::size_t dim, int derivative_order, ValueFn value,
                     PartialFn partial);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    int derivative_order() const { return order_; }

    double value(std::span<const double> x) const { return value_(x); }
    double partial(std::span<const std::size_t> idx, std::span<const double> x) const;

    /// Univariate convenience: the r-th derivative at x.
    double derivative(int order, double x) const;

    /// x^3 with all derivatives in closed form.
    static SmoothFunctional cube();
    /// sin(x) with all derivatives in closed form.
    static SmoothFunctional sine();
    /// x itself; the estimand is the plain mean.
    static SmoothFunctional identity();
    /// Polynomial sum c[k] * x^k with exact derivatives of every order.
    static SmoothFunctional polynomial(std::vector<double> coeffs);

  private:
    std::string name_;
    std::size_t dim_;
    int order_;
    ValueFn value_;
    PartialFn partial_;
};

/// Parse a functional spec string: "cube", "sine", "identity", or
/// "poly:c0,c1,..." for polynomial coefficients in ascending degree.
/// Throws ConfigError on anything else.
SmoothFunctional parse_functional(const std::string& spec);

} // namespace dboot
