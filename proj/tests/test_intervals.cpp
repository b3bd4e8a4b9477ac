#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "dboot/errors.hpp"
#include "dboot/generators.hpp"
#include "dboot/intervals.hpp"
#include "dboot/math.hpp"
#include "dboot/rng.hpp"
#include "support.hpp"

using namespace dboot;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BruteBeta {
    double beta = 0.0;
    bool out_of_range = false;
};

// Reference search written as the plain quadratic scan: walk the candidate
// grid from below, recount coverage from scratch at every level, stop at the
// first level that reaches alpha.
BruteBeta brute_warp(std::vector<double> outer, std::vector<double> inner, Side side,
                     double alpha) {
    std::sort(inner.begin(), inner.end());
    const std::size_t B = outer.size();
    const auto enough = [&](std::size_t cov) {
        return static_cast<double>(cov) / static_cast<double>(B) >= alpha;
    };
    if (side == Side::upper) {
        for (std::size_t k = 1; k <= B; ++k) {
            std::size_t cov = 0;
            for (double r : outer)
                if (r < inner[k - 1]) ++cov;
            if (enough(cov)) return {static_cast<double>(k) / static_cast<double>(B), false};
        }
    } else {
        for (std::size_t k = 1; k + 1 <= B; ++k) {
            // order statistics at ceil((B -/+ k) / 2)
            const double hv = inner[(B + k + 1) / 2 - 1];
            const double lv = inner[(B - k + 1) / 2 - 1];
            std::size_t cov = 0;
            for (double r : outer)
                if (lv < r && r < hv) ++cov;
            if (enough(cov)) return {static_cast<double>(k) / static_cast<double>(B), false};
        }
    }
    if (side == Side::upper) return {1.0, true};
    return {1.0 - 1.0 / (2.0 * static_cast<double>(B)), true};
}

BruteBeta brute_nested(const std::vector<double>& outer, const std::vector<double>& inner,
                       std::size_t c, Side side, double alpha) {
    const std::size_t B = outer.size();
    std::vector<std::vector<double>> rows(B);
    for (std::size_t b = 0; b < B; ++b) {
        rows[b].assign(inner.begin() + static_cast<std::ptrdiff_t>(b * c),
                       inner.begin() + static_cast<std::ptrdiff_t>((b + 1) * c));
        std::sort(rows[b].begin(), rows[b].end());
    }
    const std::size_t jmax = side == Side::upper ? c : (c >= 2 ? c - 1 : 0);
    for (std::size_t j = 1; j <= jmax; ++j) {
        std::size_t cov = 0;
        for (std::size_t b = 0; b < B; ++b) {
            const auto& row = rows[b];
            bool ok;
            if (side == Side::upper) {
                ok = outer[b] < row[j - 1];
            } else {
                const double hv = row[(c + j + 1) / 2 - 1];
                const double lv = row[(c - j + 1) / 2 - 1];
                ok = lv < outer[b] && outer[b] < hv;
            }
            if (ok) ++cov;
        }
        if (static_cast<double>(cov) / static_cast<double>(B) >= alpha)
            return {static_cast<double>(j) / static_cast<double>(c), false};
    }
    if (side == Side::upper) return {1.0, true};
    return {1.0 - 1.0 / (2.0 * static_cast<double>(c)), true};
}

RootSample make_root_sample(std::vector<double> outer, std::vector<double> inner,
                            std::size_t n_inner) {
    RootSample rs;
    rs.kind = RootKind::percentile;
    rs.theta = 0.7;
    rs.sigma = 1.3;
    rs.n_eff = 25;
    rs.n_inner = n_inner;
    rs.outer_root = std::move(outer);
    rs.inner_root = std::move(inner);
    return rs;
}

PointEstimate make_pe() { return PointEstimate{0.7, 1.3, 25}; }

} // namespace

TEST_CASE("empirical quantiles are exact order statistics") {
    const EmpiricalCdf cdf({3.0, 1.0, 2.0});
    CHECK(cdf.size() == 3);
    CHECK(cdf.quantile(0.3) == 1.0);
    CHECK(cdf.quantile(1.0 / 3.0) == 1.0); // 0.333... * 3 snaps to the 1st
    CHECK(cdf.quantile(0.34) == 2.0);
    CHECK(cdf.quantile(2.0 / 3.0) == 2.0);
    CHECK(cdf.quantile(0.67) == 3.0);
    CHECK(cdf.quantile(1.0) == 3.0);
    CHECK(cdf.quantile(1e-9) == 1.0);
    CHECK_THROWS_AS(cdf.quantile(0.0), InvalidLevel);
    CHECK_THROWS_AS(cdf.quantile(1.0000001), InvalidLevel);
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(cdf(2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(cdf(3.0) == 1.0);
    CHECK_THROWS_AS(EmpiricalCdf({}), TooFewObservations);
}

TEST_CASE("the cdf of its own quantile reaches the level") {
    std::mt19937 g(2024);
    std::uniform_int_distribution<int> lattice(-8, 8);
    std::uniform_real_distribution<double> unif(0.001, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 1 + g() % 40;
        std::vector<double> v(m);
        for (double& x : v) x = lattice(g) / 4.0;
        const EmpiricalCdf cdf(std::move(v));
        for (int i = 0; i < 20; ++i) {
            const double a = unif(g);
            CHECK(cdf(cdf.quantile(a)) >= a);
        }
    }
}

TEST_CASE("uniform roots put quantiles where they belong") {
    const std::size_t big_b = 10000;
    CounterRng rng(404);
    std::vector<double> v(big_b);
    for (double& x : v) x = rng.next_unit();
    const EmpiricalCdf cdf(std::move(v));
    const double se = std::sqrt(0.9 * 0.1 / static_cast<double>(big_b));
    CHECK(std::abs(cdf.quantile(0.9) - 0.9) < 4.0 * se);
}

TEST_CASE("constant data degenerates cleanly") {
    const Dataset ds = testsupport::univariate(std::vector<double>(12, 2.5));
    const BootstrapPlan plan{20, 1, 9, RootKind::percentile};
    const RootSample pct = compute_roots(ds, SmoothFunctional::cube(), plan);
    for (double r : pct.outer_root) CHECK(r == 0.0);
    for (double r : pct.inner_root) CHECK(r == 0.0);
    CHECK(pct.degenerate_count == 0);

    BootstrapPlan tplan = plan;
    tplan.root_kind = RootKind::percentile_t;
    const RootSample stu = compute_roots(ds, SmoothFunctional::cube(), tplan);
    for (double r : stu.outer_root) CHECK(r == 0.0);
    CHECK(stu.degenerate_count == 20 * 2); // every outer and every inner resample

    // all roots zero: no candidate level covers, the search saturates at the
    // top of the grid and the bound collapses to theta
    const PointEstimate pe = point_estimate(SmoothFunctional::cube(), ds);
    const Calibrated cal = warp_speed_calibrated_interval(pe, pct, Side::upper, 0.9);
    CHECK(cal.out_of_range);
    CHECK(cal.beta_hat == 1.0);
    CHECK(cal.interval.lower == pe.theta);
    CHECK(cal.interval.upper == kInf);
}

TEST_CASE("single intervals read straight off the root quantiles") {
    const EmpiricalCdf cdf({-2.0, -1.0, 0.0, 1.0, 2.0});
    const PointEstimate pe{10.0, 3.0, 9}; // sqrt(n) = 3
    const Interval up = single_interval(pe, cdf, RootKind::percentile_t, Side::upper, 0.8);
    // quantile(0.8) = 4th of 5 = 1; upper bound 10 - 3 * 1 / 3
    CHECK(up.lower == 9.0);
    CHECK(up.upper == kInf);
    CHECK(up.contains(9.5));
    CHECK(!up.contains(9.0));

    const Interval two = single_interval(pe, cdf, RootKind::percentile, Side::two_sided, 0.6);
    // tails at 0.2 and 0.8: order stats 1 -> -2 and 4 -> 1
    CHECK(two.lower == doctest::Approx(10.0 - 1.0 / 3.0));
    CHECK(two.upper == doctest::Approx(10.0 + 2.0 / 3.0));

    CHECK_THROWS_AS(single_interval(pe, cdf, RootKind::percentile, Side::upper, 0.0), InvalidLevel);
    CHECK_THROWS_AS(single_interval(pe, cdf, RootKind::percentile, Side::upper, 1.0), InvalidLevel);
}

TEST_CASE("warp-speed search agrees with the quadratic scan") {
    std::mt19937 g(99);
    std::uniform_int_distribution<int> lattice(-10, 10);
    std::uniform_real_distribution<double> unif(0.05, 0.98);
    for (int rep = 0; rep < 250; ++rep) {
        const std::size_t B = 3 + g() % 23;
        std::vector<double> outer(B), inner(B);
        for (double& x : outer) x = lattice(g) / 4.0;
        for (double& x : inner) x = lattice(g) / 4.0;
        const Side side = rep % 2 == 0 ? Side::upper : Side::two_sided;
        const double alpha = rep % 5 == 0 ? 0.9 : unif(g);

        const BruteBeta want = brute_warp(outer, inner, side, alpha);
        const RootSample rs = make_root_sample(outer, inner, 1);
        const Calibrated got = warp_speed_calibrated_interval(make_pe(), rs, side, alpha);
        CHECK(got.beta_hat == want.beta);
        CHECK(got.out_of_range == want.out_of_range);

        // endpoints are the single-level interval at the found level
        const EmpiricalCdf cdf(outer);
        const double scale = 1.0 / 5.0; // percentile root, n_eff = 25
        if (side == Side::upper) {
            CHECK(got.interval.lower == 0.7 - scale * cdf.quantile(want.beta));
            CHECK(got.interval.upper == kInf);
        } else {
            CHECK(got.interval.lower == 0.7 - scale * cdf.quantile((1.0 + want.beta) / 2.0));
            CHECK(got.interval.upper == 0.7 - scale * cdf.quantile((1.0 - want.beta) / 2.0));
        }
    }
}

TEST_CASE("nested search agrees with the quadratic scan") {
    std::mt19937 g(77);
    std::uniform_int_distribution<int> lattice(-10, 10);
    std::uniform_real_distribution<double> unif(0.05, 0.98);
    for (int rep = 0; rep < 250; ++rep) {
        const std::size_t B = 3 + g() % 15;
        const std::size_t C = 1 + g() % 8;
        std::vector<double> outer(B), inner(B * C);
        for (double& x : outer) x = lattice(g) / 4.0;
        for (double& x : inner) x = lattice(g) / 4.0;
        const Side side = rep % 2 == 0 ? Side::upper : Side::two_sided;
        const double alpha = rep % 5 == 0 ? 0.9 : unif(g);

        const BruteBeta want = brute_nested(outer, inner, C, side, alpha);
        const RootSample rs = make_root_sample(outer, inner, C);
        const Calibrated got = conventional_calibrated_interval(make_pe(), rs, side, alpha);
        CHECK(got.beta_hat == want.beta);
        CHECK(got.out_of_range == want.out_of_range);
    }
}

TEST_CASE("calibration rejects malformed root samples") {
    RootSample rs = make_root_sample({0.1, 0.2}, {0.3, 0.4}, 1);
    rs.inner_root.clear();
    rs.n_inner = 0;
    CHECK_THROWS_AS(warp_speed_calibrated_interval(make_pe(), rs, Side::upper, 0.9),
                    DimensionMismatch);
    CHECK_THROWS_AS(conventional_calibrated_interval(make_pe(), rs, Side::upper, 0.9),
                    DimensionMismatch);
    const RootSample ok = make_root_sample({0.1, 0.2}, {0.3, 0.4}, 1);
    CHECK_THROWS_AS(warp_speed_calibrated_interval(make_pe(), ok, Side::upper, 1.0), InvalidLevel);
}

TEST_CASE("single-inner nested search stays usable") {
    // C = 1 leaves a one-point candidate grid (upper) or none (two-sided).
    const RootSample rs = make_root_sample({0.0, 0.1, -0.3, 0.5}, {1.0, 1.0, -1.0, 1.0}, 1);
    const Calibrated up = conventional_calibrated_interval(make_pe(), rs, Side::upper, 0.7);
    CHECK(up.beta_hat == 1.0);
    CHECK(!up.out_of_range);
    const Calibrated two = conventional_calibrated_interval(make_pe(), rs, Side::two_sided, 0.7);
    CHECK(two.out_of_range);
    CHECK(two.beta_hat == 0.5); // 1 - 1/(2C)
}

TEST_CASE("studentized roots for normal data look like a unit-scale law") {
    const Dataset ds = testsupport::standard_normal_generator().generate(50, 31, 0);
    const BootstrapPlan plan{10000, 0, 31, RootKind::percentile_t};
    const RootSample rs = compute_roots(ds, SmoothFunctional::identity(), plan);
    CHECK(rs.degenerate_count == 0);
    const double mean = pairwise_mean(rs.outer_root);
    double var = 0.0;
    for (double r : rs.outer_root) var += (r - mean) * (r - mean);
    var /= static_cast<double>(rs.outer_root.size() - 1);
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(1.0).epsilon(0.12));
}

TEST_CASE("intervals transform with the data") {
    const DataGenerator gen = DataGenerator::exponential(2.0);
    const Dataset x = gen.generate(30, 55, 0);
    const auto shifted = [&](double a, double m) {
        std::vector<double> v(x.column(0).begin(), x.column(0).end());
        for (double& t : v) t = a * t + m;
        return testsupport::univariate(std::move(v));
    };
    const SmoothFunctional id = SmoothFunctional::identity();
    const BootstrapPlan plan{256, 1, 55, RootKind::percentile_t};

    const PointEstimate pe_x = point_estimate(id, x);
    const RootSample roots_x = compute_roots(x, id, plan);
    const EmpiricalCdf cdf_x(roots_x.outer_root);

    SUBCASE("doubling is exact") {
        const Dataset y = shifted(2.0, 0.0);
        const PointEstimate pe_y = point_estimate(id, y);
        const RootSample roots_y = compute_roots(y, id, plan);
        // studentized roots are scale free, so they match bit for bit
        CHECK(roots_y.outer_root == roots_x.outer_root);
        const EmpiricalCdf cdf_y(roots_y.outer_root);
        for (const Side side : {Side::upper, Side::two_sided}) {
            const Interval ix = single_interval(pe_x, cdf_x, RootKind::percentile_t, side, 0.9);
            const Interval iy = single_interval(pe_y, cdf_y, RootKind::percentile_t, side, 0.9);
            CHECK(iy.lower == 2.0 * ix.lower);
            if (side == Side::two_sided) CHECK(iy.upper == 2.0 * ix.upper);
            const Calibrated cx = warp_speed_calibrated_interval(pe_x, roots_x, side, 0.9);
            const Calibrated cy = warp_speed_calibrated_interval(pe_y, roots_y, side, 0.9);
            CHECK(cy.beta_hat == cx.beta_hat);
            CHECK(cy.interval.lower == 2.0 * cx.interval.lower);
        }
    }

    SUBCASE("general affine maps agree to rounding") {
        const double a = 1.7, m = 3.1;
        const Dataset y = shifted(a, m);
        const PointEstimate pe_y = point_estimate(id, y);
        const RootSample roots_y = compute_roots(y, id, plan);
        const EmpiricalCdf cdf_y(roots_y.outer_root);
        for (const Side side : {Side::upper, Side::two_sided}) {
            const Interval ix = single_interval(pe_x, cdf_x, RootKind::percentile_t, side, 0.9);
            const Interval iy = single_interval(pe_y, cdf_y, RootKind::percentile_t, side, 0.9);
            CHECK(iy.lower == doctest::Approx(a * ix.lower + m).epsilon(1e-9));
            if (side == Side::two_sided)
                CHECK(iy.upper == doctest::Approx(a * ix.upper + m).epsilon(1e-9));
        }
    }
}

TEST_CASE("one-sided studentized coverage hits the nominal level on normal data") {
    const DataGenerator gen = testsupport::standard_normal_generator();
    const SmoothFunctional id = SmoothFunctional::identity();
    const std::size_t trials = 4000;
    std::size_t covered = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Dataset ds = gen.generate(40, 202, t);
        const BootstrapPlan plan{1000, 0, 202, RootKind::percentile_t};
        const RootSample rs = compute_roots(ds, id, plan, t);
        const PointEstimate pe = point_estimate(id, ds);
        const EmpiricalCdf cdf(rs.outer_root);
        const Interval iv = single_interval(pe, cdf, RootKind::percentile_t, Side::upper, 0.9);
        if (iv.contains(0.0)) ++covered;
    }
    const double cov = static_cast<double>(covered) / static_cast<double>(trials);
    CHECK(std::abs(cov - 0.9) < 0.02);
}
