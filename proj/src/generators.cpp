#include "dboot/generators.hpp"

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "dboot/errors.hpp"
#include "dboot/math.hpp"
#include "dboot/rng.hpp"

namespace dboot {

DataGenerator::DataGenerator(std::string name, InverseCdf icdf, MomentSet moments)
    : name_(std::move(name)), icdf_(std::move(icdf)), moments_(moments) {}

Dataset DataGenerator::generate(std::size_t n, std::uint64_t master_seed,
                                std::uint64_t trial) const {
    if (n == 0) throw TooFewObservations("generator needs n >= 1");
    CounterRng rng = make_stream(master_seed, SeedPath::data(trial));
    std::vector<double> col(n);
    for (double& x : col) x = icdf_(rng.next_unit_open());
    return Dataset({std::move(col)}, DependenceModel::vector_iid);
}

DataGenerator DataGenerator::exponential(double mean) {
    if (!(mean > 0.0)) throw ConfigError("exponential mean must be positive");
    MomentSet m;
    m.mean = mean;
    m.variance = mean * mean;
    m.third_central = 2.0 * mean * mean * mean;
    char name[32];
    std::snprintf(name, sizeof name, "exp%g", mean);
    return DataGenerator(name, [mean](double u) { return -mean * std::log1p(-u); }, m);
}

DataGenerator DataGenerator::log_normal() {
    const double e = std::exp(1.0);
    const double r = std::exp(0.5); // exp(1/2)
    MomentSet m;
    m.mean = r;
    m.variance = e * e - e;
    m.third_central = (e - 1.0) * (e - 1.0) * (e + 2.0) * r * r * r;
    return DataGenerator(
        "lognormal", [](double u) { return std::exp(inverse_normal_cdf(u)); }, m);
}

DataGenerator DataGenerator::custom(std::string name, InverseCdf icdf, MomentSet moments) {
    return DataGenerator(std::move(name), std::move(icdf), moments);
}

DataGenerator parse_generator(const std::string& spec) {
    if (spec == "exp2") return DataGenerator::exponential(2.0);
    if (spec == "lognormal") return DataGenerator::log_normal();
    throw ConfigError("unknown generator '" + spec + "' (expected exp2 or lognormal)");
}

} // namespace dboot
