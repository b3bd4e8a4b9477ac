#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dboot/plan.hpp"

namespace dboot {

/// What the "true" bias in a ratio column is taken to be.
///   analytic:  the two-term expansion at the population moments (fixed,
///              noise-free target; the default).
///   mc:        a fresh large direct simulation of E f(mean) - f(mu) under
///              this config's seed.
///   tabulated: the bundled table of Monte Carlo reference values for the
///              standard grid (exp2/lognormal x cube/sine x n in
///              {20,40,60,80}); the values this artifact is calibrated
///              against.
enum class ReferenceMode {
    analytic,
    mc,
    tabulated,
};

struct ExperimentConfig {
    int schema_version = 1;
    std::string experiment = "bias"; // bias | coverage | variance_check

    std::vector<std::string> generators = {"exp2", "lognormal"};
    std::vector<std::string> functionals = {"cube", "sine"};
    std::vector<std::size_t> n_values = {20, 40};
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    std::size_t threads = 0; // 0 = hardware concurrency
    std::string out;         // output path; empty = stdout
    std::string format = "csv";

    // bias experiment
    std::size_t b_fixed = 0; // 0 = rule B = n^2
    std::vector<std::string> c_labels = {"1", "2", "5", "10", "sqrt"};
    std::size_t c_cap = 256;
    ReferenceMode reference = ReferenceMode::analytic;
    std::size_t mc_reference_trials = 2000000;

    // coverage experiment
    double alpha = 0.90;
    std::vector<RootKind> root_kinds = {RootKind::percentile, RootKind::percentile_t};
    std::vector<Side> sides = {Side::upper, Side::two_sided};
    std::vector<std::size_t> coverage_b = {200, 300, 500};

    // variance check
    std::size_t vc_n = 50;
    std::size_t vc_b = 1000;
    std::vector<std::size_t> vc_c = {1, 64};
    std::size_t vc_m = 2000;

    /// Full published design: n in {20,40,60,80}, 5000 trials, uncapped C,
    /// coverage B grid 200..700. The constructor default is the desk-scale
    /// profile that finishes in minutes.
    void apply_full_scale();

    /// Throws ConfigError on out-of-range or inconsistent settings.
    void validate() const;
};

/// Flat key = value text format, '#' comments, lists comma-separated. The
/// schema_version key is required and must be 1. Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct BiasRow {
    std::string generator;
    std::string functional;
    std::size_t n = 0;
    std::size_t b = 0;
    std::string method; // single | double_c<k> | double_csqrt
    std::size_t c = 0;  // resolved inner size; 0 for single
    std::size_t trials = 0;
    std::size_t failures = 0;
    double mean_estimate = 0.0;
    double reference = 0.0;
    double ratio = 0.0;
    double mc_se = 0.0;
};

struct CoverageRow {
    std::string generator;
    std::string functional;
    std::size_t n = 0;
    std::size_t b = 0;
    std::string root;   // percentile | percentile_t
    std::string side;   // upper | two_sided
    std::string method; // single | calibrated_nested | calibrated_warp
    std::size_t c = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double coverage = 0.0;
    double mc_se = 0.0;
    std::size_t calibration_flags = 0; // trials where the beta search ran off the grid
};

struct VarianceRow {
    std::string generator;
    std::string functional;
    std::size_t n = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t reruns = 0;
    double var_single = 0.0;
    double var_double = 0.0;
    double ratio = 0.0;
    double expected_ratio = 0.0;
    double tau2_plugin = 0.0;
    double bn_var_single = 0.0;
};

struct BiasReport {
    std::uint64_t seed = 0;
    std::vector<BiasRow> rows;
};
struct CoverageReport {
    std::uint64_t seed = 0;
    std::vector<CoverageRow> rows;
};
struct VarianceReport {
    std::uint64_t seed = 0;
    std::vector<VarianceRow> rows;
};

/// Run the bias-estimation grid: one row per (generator, functional, n,
/// method). All methods of a cell share the trial datasets and outer
/// resamples, and every double-bootstrap row is a snapshot of one fused
/// inner sweep, so row-to-row comparisons are paired. Throws
/// ExcessTrialFailures when more than 1% of trials of any cell fail.
BiasReport run_bias_experiment(const ExperimentConfig& cfg);

/// Run the coverage grid: one row per (generator, B, root kind, side,
/// method) at nominal level alpha, counting how often the interval covers
/// f(population mean).
CoverageReport run_coverage_experiment(const ExperimentConfig& cfg);

/// Repeated-run variance check rows, one per configured C.
VarianceReport run_variance_experiment(const ExperimentConfig& cfg);

/// Serialize a report. format is "csv" (fixed header, 6 significant digits)
/// or "json" (object with seed and a rows array; undefined standard errors
/// become null). Floating-point columns are written so that the printed
/// ratio times the printed reference reproduces the printed mean to the last
/// digit shown.
void emit(const BiasReport& r, std::ostream& os, const std::string& format);
void emit(const CoverageReport& r, std::ostream& os, const std::string& format);
void emit(const VarianceReport& r, std::ostream& os, const std::string& format);

/// Reference bias from the bundled calibration table; throws ConfigError for
/// combinations outside the standard grid.
double tabulated_reference_bias(const std::string& generator, const std::string& functional,
                                std::size_t n);

/// Format a double like the emitters do (%.6g, "nan" for NaN).
std::string format_number(double x);

/// The value format_number prints, parsed back: x rounded to six significant
/// digits. Ratio columns are computed from rounded operands so the printed
/// columns stay mutually consistent.
double emitted_value(double x);

} // namespace dboot
