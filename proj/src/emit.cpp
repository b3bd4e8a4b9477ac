#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

#include "dboot/errors.hpp"
#include "dboot/experiment.hpp"

namespace dboot {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double emitted_value(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

using ordered_json = nlohmann::ordered_json;

void require_format(const std::string& format) {
    if (format != "csv" && format != "json") {
        throw ConfigError("unknown output format '" + format + "'");
    }
}

/// NaN and infinity have no JSON number representation; emit null.
ordered_json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return emitted_value(x);
}

void dump(const ordered_json& j, std::ostream& os) { os << j.dump(2) << '\n'; }

} // namespace

void emit(const BiasReport& r, std::ostream& os, const std::string& format) {
    require_format(format);
    if (format == "csv") {
        os << "generator,functional,n,b,method,c,trials,failures,mean_estimate,reference,ratio,"
              "mc_se\n";
        for (const auto& row : r.rows) {
            os << row.generator << ',' << row.functional << ',' << row.n << ',' << row.b << ','
               << row.method << ',' << row.c << ',' << row.trials << ',' << row.failures << ','
               << format_number(row.mean_estimate) << ',' << format_number(row.reference) << ','
               << format_number(row.ratio) << ',' << format_number(row.mc_se) << '\n';
        }
        return;
    }
    ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = r.seed;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
        rows.push_back(ordered_json{{"generator", row.generator},
                                    {"functional", row.functional},
                                    {"n", row.n},
                                    {"b", row.b},
                                    {"method", row.method},
                                    {"c", row.c},
                                    {"trials", row.trials},
                                    {"failures", row.failures},
                                    {"mean_estimate", json_number(row.mean_estimate)},
                                    {"reference", json_number(row.reference)},
                                    {"ratio", json_number(row.ratio)},
                                    {"mc_se", json_number(row.mc_se)}});
    }
    dump(j, os);
}

void emit(const CoverageReport& r, std::ostream& os, const std::string& format) {
    require_format(format);
    if (format == "csv") {
        os << "generator,functional,n,b,root,side,method,c,trials,failures,coverage,mc_se,"
              "calibration_flags\n";
        for (const auto& row : r.rows) {
            os << row.generator << ',' << row.functional << ',' << row.n << ',' << row.b << ','
               << row.root << ',' << row.side << ',' << row.method << ',' << row.c << ','
               << row.trials << ',' << row.failures << ',' << format_number(row.coverage) << ','
               << format_number(row.mc_se) << ',' << row.calibration_flags << '\n';
        }
        return;
    }
    ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = r.seed;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
        rows.push_back(ordered_json{{"generator", row.generator},
                                    {"functional", row.functional},
                                    {"n", row.n},
                                    {"b", row.b},
                                    {"root", row.root},
                                    {"side", row.side},
                                    {"method", row.method},
                                    {"c", row.c},
                                    {"trials", row.trials},
                                    {"failures", row.failures},
                                    {"coverage", json_number(row.coverage)},
                                    {"mc_se", json_number(row.mc_se)},
                                    {"calibration_flags", row.calibration_flags}});
    }
    dump(j, os);
}

void emit(const VarianceReport& r, std::ostream& os, const std::string& format) {
    require_format(format);
    if (format == "csv") {
        os << "generator,functional,n,b,c,reruns,var_single,var_double,ratio,expected_ratio,"
              "tau2_plugin,bn_var_single\n";
        for (const auto& row : r.rows) {
            os << row.generator << ',' << row.functional << ',' << row.n << ',' << row.b << ','
               << row.c << ',' << row.reruns << ',' << format_number(row.var_single) << ','
               << format_number(row.var_double) << ',' << format_number(row.ratio) << ','
               << format_number(row.expected_ratio) << ',' << format_number(row.tau2_plugin) << ','
               << format_number(row.bn_var_single) << '\n';
        }
        return;
    }
    ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = r.seed;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
        rows.push_back(ordered_json{{"generator", row.generator},
                                    {"functional", row.functional},
                                    {"n", row.n},
                                    {"b", row.b},
                                    {"c", row.c},
                                    {"reruns", row.reruns},
                                    {"var_single", json_number(row.var_single)},
                                    {"var_double", json_number(row.var_double)},
                                    {"ratio", json_number(row.ratio)},
                                    {"expected_ratio", json_number(row.expected_ratio)},
                                    {"tau2_plugin", json_number(row.tau2_plugin)},
                                    {"bn_var_single", json_number(row.bn_var_single)}});
    }
    dump(j, os);
}

} // namespace dboot
