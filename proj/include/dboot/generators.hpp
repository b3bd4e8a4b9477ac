#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dboot/dataset.hpp"
#include "dboot/oracles.hpp"

namespace dboot {

/// Univariate data source with known population moments. Draws are made by
/// the inverse-CDF transform of the level-0 stream of (seed, trial), so a
/// trial's dataset is reproducible independently of everything else.
class DataGenerator {
  public:
    using InverseCdf = std::function<double(double)>;

    const std::string& name() const { return name_; }
    const MomentSet& moments() const { return moments_; }

    Dataset generate(std::size_t n, std::uint64_t master_seed, std::uint64_t trial) const;

    /// Exponential with the given mean (default 2, i.e. rate 1/2).
    static DataGenerator exponential(double mean = 2.0);
    /// exp(Z) with Z standard normal.
    static DataGenerator log_normal();
    /// Arbitrary inverse CDF with caller-supplied population moments.
    static DataGenerator custom(std::string name, InverseCdf icdf, MomentSet moments);

  private:
    DataGenerator(std::string name, InverseCdf icdf, MomentSet moments);

    std::string name_;
    InverseCdf icdf_;
    MomentSet moments_;
};

/// Parse a generator spec string: "exp2" (exponential, mean 2) or
/// "lognormal". Throws ConfigError on anything else.
DataGenerator parse_generator(const std::string& spec);

} // namespace dboot
