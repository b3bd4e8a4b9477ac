#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dboot/dataset.hpp"
#include "dboot/errors.hpp"
#include "dboot/functional.hpp"
#include "dboot/generators.hpp"
#include "support.hpp"

using namespace dboot;

TEST_CASE("dataset construction validates shape") {
    CHECK_THROWS_AS(Dataset({}, DependenceModel::vector_iid), EmptyDataset);
    CHECK_THROWS_AS(Dataset({{}}, DependenceModel::vector_iid), EmptyDataset);
    CHECK_THROWS_AS(Dataset({{1.0, 2.0}, {1.0}}, DependenceModel::vector_iid), DimensionMismatch);
    // componentwise columns may differ in length
    const Dataset ds({{1.0, 2.0, 3.0}, {4.0, 5.0}}, DependenceModel::componentwise_independent);
    CHECK(ds.dim() == 2);
    CHECK(ds.rows(0) == 3);
    CHECK(ds.rows(1) == 2);
    CHECK(ds.n_eff() == 2);

    std::vector<std::vector<double>> nine(9, std::vector<double>{1.0});
    CHECK_THROWS_AS(Dataset(std::move(nine), DependenceModel::componentwise_independent),
                    DimensionMismatch);
}

TEST_CASE("validate_dataset enforces a minimum row count") {
    const Dataset ds = testsupport::univariate({1.0, 2.0});
    CHECK_NOTHROW(validate_dataset(ds, 2));
    CHECK_THROWS_AS(validate_dataset(ds, 3), TooFewObservations);
}

TEST_CASE("sample mean is exact and permutation invariant") {
    std::vector<double> v{0.5, 1.5, 2.5, 3.5};
    const double m1 = sample_mean(testsupport::univariate(v))[0];
    std::mt19937 g(1);
    std::shuffle(v.begin(), v.end(), g);
    const double m2 = sample_mean(testsupport::univariate(v))[0];
    CHECK(m1 == 2.0);
    CHECK(m2 == 2.0);
}

TEST_CASE("sample mean of generated data concentrates at the population mean") {
    const DataGenerator gen = DataGenerator::exponential(2.0);
    const Dataset ds = gen.generate(100000, 7, 0);
    const double se = 2.0 / std::sqrt(100000.0);
    CHECK(std::abs(sample_mean(ds)[0] - 2.0) < 4.0 * se);
}

TEST_CASE("builtin functionals match finite differences") {
    for (const auto& f : {SmoothFunctional::cube(), SmoothFunctional::sine(),
                          SmoothFunctional::polynomial({1.0, -2.0, 0.5, 3.0, -0.25})}) {
        for (double x : {-1.3, 0.2, 0.9, 2.1}) {
            for (int r = 1; r <= 4; ++r) {
                const double fd = testsupport::fd_derivative(f, r, x);
                CHECK(f.derivative(r, x) == doctest::Approx(fd).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("cube functional values and derivatives") {
    const SmoothFunctional f = SmoothFunctional::cube();
    CHECK(f.value(std::vector<double>{2.0}) == 8.0);
    CHECK(f.derivative(1, 2.0) == 12.0);
    CHECK(f.derivative(2, 2.0) == 12.0);
    CHECK(f.derivative(3, 2.0) == 6.0);
    CHECK(f.derivative(4, 2.0) == 0.0);
    const std::vector<std::size_t> idx{0, 0};
    CHECK(f.partial(idx, std::vector<double>{2.0}) == 12.0);
}

TEST_CASE("identity functional is flat beyond first order") {
    const SmoothFunctional f = SmoothFunctional::identity();
    CHECK(f.value(std::vector<double>{3.5}) == 3.5);
    CHECK(f.derivative(1, 3.5) == 1.0);
    CHECK(f.derivative(2, 3.5) == 0.0);
    CHECK(f.derivative(4, -1.0) == 0.0);
}

TEST_CASE("derivative orders beyond the declared maximum throw") {
    const SmoothFunctional f("capped", 1, 2, [](std::span<const double> x) { return x[0]; },
                             [](std::span<const std::size_t>, std::span<const double>) {
                                 return 0.0;
                             });
    CHECK_NOTHROW(f.derivative(2, 0.0));
    CHECK_THROWS_AS(f.derivative(3, 0.0), DerivativeUnavailable);
}

TEST_CASE("functional parsing accepts the builtin names") {
    CHECK(parse_functional("cube").name() == "cube");
    CHECK(parse_functional("sine").name() == "sine");
    CHECK(parse_functional("identity").name() == "identity");
    const SmoothFunctional p = parse_functional("poly:1,0,2");
    CHECK(p.value(std::vector<double>{3.0}) == doctest::Approx(19.0));
    CHECK_THROWS_AS(parse_functional("quartic"), ConfigError);
    CHECK_THROWS_AS(parse_functional("poly:"), ConfigError);
    CHECK_THROWS_AS(parse_functional("poly:1,x"), ConfigError);
}
