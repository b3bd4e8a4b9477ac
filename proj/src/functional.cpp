#include "dboot/functional.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "dboot/errors.hpp"

namespace dboot {

SmoothFunctional::SmoothFunctional(std::string name, std::size_t dim, int derivative_order,
                                   ValueFn value, PartialFn partial)
    : name_(std::move(name)), dim_(dim), order_(derivative_order), value_(std::move(value)),
      partial_(std::move(partial)) {}

double SmoothFunctional::partial(std::span<const std::size_t> idx,
                                 std::span<const double> x) const {
    if (static_cast<int>(idx.size()) > order_ || !partial_)
        throw DerivativeUnavailable("functional '" + name_ + "' has derivatives up to order " +
                                    std::to_string(order_) + ", order " +
                                    std::to_string(idx.size()) + " requested");
    return partial_(idx, x);
}

double SmoothFunctional::derivative(int order, double x) const {
    const std::vector<std::size_t> idx(static_cast<std::size_t>(order), 0);
    const double xv[1] = {x};
    if (order == 0) return value(std::span<const double>(xv, 1));
    return partial(idx, std::span<const double>(xv, 1));
}

namespace {

// sin(x + r * pi/2) cycles through sin, cos, -sin, -cos.
double sine_derivative(std::size_t r, double x) {
    switch (r % 4) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        case 2: return -std::sin(x);
        default: return -std::cos(x);
    }
}

double poly_eval(const std::vector<double>& c, std::size_t deriv, double x) {
    // Horner on the deriv-times differentiated coefficients, formed on the
    // fly: coefficient of x^k in f^(r) is c[k+r] * (k+r)! / k!.
    double acc = 0.0;
    if (c.size() <= deriv) return 0.0;
    for (std::size_t k = c.size(); k-- > deriv;) {
        double fall = 1.0;
        for (std::size_t i = 0; i < deriv; ++i) fall *= static_cast<double>(k - i);
        acc = acc * x + c[k] * fall;
    }
    return acc;
}

} // namespace

SmoothFunctional SmoothFunctional::cube() {
    return SmoothFunctional(
        "cube", 1, 99, [](std::span<const double> x) { return x[0] * x[0] * x[0]; },
        [](std::span<const std::size_t> idx, std::span<const double> x) {
            switch (idx.size()) {
                case 1: return 3.0 * x[0] * x[0];
                case 2: return 6.0 * x[0];
                case 3: return 6.0;
                default: return 0.0;
            }
        });
}

SmoothFunctional SmoothFunctional::sine() {
    return SmoothFunctional(
        "sine", 1, 99, [](std::span<const double> x) { return std::sin(x[0]); },
        [](std::span<const std::size_t> idx, std::span<const double> x) {
            return sine_derivative(idx.size(), x[0]);
        });
}

SmoothFunctional SmoothFunctional::identity() {
    return SmoothFunctional(
        "identity", 1, 99, [](std::span<const double> x) { return x[0]; },
        [](std::span<const std::size_t> idx, std::span<const double>) {
            return idx.size() == 1 ? 1.0 : 0.0;
        });
}

SmoothFunctional SmoothFunctional::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
    return SmoothFunctional(
        "poly", 1, 99, [c](std::span<const double> x) { return poly_eval(*c, 0, x[0]); },
        [c](std::span<const std::size_t> idx, std::span<const double> x) {
            return poly_eval(*c, idx.size(), x[0]);
        });
}

SmoothFunctional parse_functional(const std::string& spec) {
    if (spec == "cube") return SmoothFunctional::cube();
    if (spec == "sine") return SmoothFunctional::sine();
    if (spec == "identity") return SmoothFunctional::identity();
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::size_t pos = 5;
        while (pos <= spec.size()) {
            const std::size_t comma = spec.find(',', pos);
            const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
            try {
                std::size_t used = 0;
                coeffs.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ConfigError("bad polynomial coefficient '" + tok + "' in '" + spec + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (coeffs.empty()) throw ConfigError("polynomial spec '" + spec + "' has no coefficients");
        return SmoothFunctional::polynomial(std::move(coeffs));
    }
    throw ConfigError("unknown functional '" + spec + "'");
}

} // namespace dboot
