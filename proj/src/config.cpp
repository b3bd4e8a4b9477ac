#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dboot/errors.hpp"
#include "dboot/experiment.hpp"
#include "dboot/functional.hpp"
#include "dboot/generators.hpp"

namespace dboot {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' needs a non-negative integer, got '" + value + "'");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const std::uint64_t v = parse_u64(key, value);
    if (v > std::numeric_limits<std::size_t>::max()) {
        throw ConfigError("key '" + key + "' is out of range: " + value);
    }
    return static_cast<std::size_t>(v);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' needs a number, got '" + value + "'");
    }
}

std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(value)) out.push_back(parse_size(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "' needs at least one value");
    return out;
}

RootKind parse_root_kind(const std::string& value) {
    if (value == "percentile") return RootKind::percentile;
    if (value == "percentile_t") return RootKind::percentile_t;
    throw ConfigError("unknown root kind '" + value + "'");
}

Side parse_side(const std::string& value) {
    if (value == "upper") return Side::upper;
    if (value == "two_sided") return Side::two_sided;
    throw ConfigError("unknown side '" + value + "'");
}

ReferenceMode parse_reference(const std::string& value) {
    if (value == "analytic") return ReferenceMode::analytic;
    if (value == "mc") return ReferenceMode::mc;
    if (value == "tabulated") return ReferenceMode::tabulated;
    throw ConfigError("unknown reference mode '" + value + "'");
}

bool is_positive_integer(const std::string& s) {
    if (s.empty()) return false;
    if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        return false;
    return s.find_first_not_of('0') != std::string::npos;
}

} // namespace

void ExperimentConfig::apply_full_scale() {
    n_values = {20, 40, 60, 80};
    trials = 5000;
    c_cap = std::numeric_limits<std::size_t>::max();
    coverage_b = {200, 300, 400, 500, 600, 700};
}

void ExperimentConfig::validate() const {
    if (schema_version != 1) throw ConfigError("schema_version must be 1");
    if (experiment != "bias" && experiment != "coverage" && experiment != "variance_check") {
        throw ConfigError("experiment must be bias, coverage, or variance_check");
    }
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (generators.empty()) throw ConfigError("need at least one generator");
    for (const auto& g : generators) parse_generator(g);
    if (functionals.empty()) throw ConfigError("need at least one functional");
    for (const auto& f : functionals) parse_functional(f);
    if (n_values.empty()) throw ConfigError("need at least one sample size");
    for (std::size_t n : n_values) {
        if (n < 2) throw ConfigError("sample sizes must be at least 2");
    }
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (c_labels.empty()) throw ConfigError("need at least one inner-size label");
    for (const auto& label : c_labels) {
        if (label != "sqrt" && !is_positive_integer(label)) {
            throw ConfigError("inner-size label must be a positive integer or 'sqrt', got '" +
                              label + "'");
        }
    }
    if (c_cap < 1) throw ConfigError("c_cap must be at least 1");
    if (mc_reference_trials < 2) throw ConfigError("mc_reference_trials must be at least 2");
    if (root_kinds.empty()) throw ConfigError("need at least one root kind");
    if (sides.empty()) throw ConfigError("need at least one side");
    if (coverage_b.empty()) throw ConfigError("need at least one coverage replication size");
    for (std::size_t b : coverage_b) {
        if (b < 2) throw ConfigError("coverage replication sizes must be at least 2");
    }
    if (vc_n < 2) throw ConfigError("vc_n must be at least 2");
    if (vc_b < 1) throw ConfigError("vc_b must be at least 1");
    if (vc_c.empty()) throw ConfigError("vc_c needs at least one value");
    for (std::size_t c : vc_c) {
        if (c < 1) throw ConfigError("vc_c values must be at least 1");
    }
    if (vc_m < 2) throw ConfigError("vc_m must be at least 2");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    bool have_schema = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(key).second) {
            throw ConfigError("key '" + key + "' appears more than once");
        }

        if (key == "schema_version") {
            cfg.schema_version = static_cast<int>(parse_size(key, value));
            have_schema = true;
        } else if (key == "experiment") {
            cfg.experiment = value;
        } else if (key == "generators") {
            cfg.generators = split_list(value);
        } else if (key == "functionals") {
            cfg.functionals = split_list(value);
        } else if (key == "n_values") {
            cfg.n_values = parse_size_list(key, value);
        } else if (key == "trials") {
            cfg.trials = parse_size(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "threads") {
            cfg.threads = parse_size(key, value);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "b_fixed") {
            cfg.b_fixed = parse_size(key, value);
        } else if (key == "c_labels") {
            cfg.c_labels = split_list(value);
        } else if (key == "c_cap") {
            cfg.c_cap = parse_size(key, value);
        } else if (key == "reference") {
            cfg.reference = parse_reference(value);
        } else if (key == "mc_reference_trials") {
            cfg.mc_reference_trials = parse_size(key, value);
        } else if (key == "alpha") {
            cfg.alpha = parse_double(key, value);
        } else if (key == "root_kinds") {
            cfg.root_kinds.clear();
            for (const auto& item : split_list(value)) cfg.root_kinds.push_back(parse_root_kind(item));
        } else if (key == "sides") {
            cfg.sides.clear();
            for (const auto& item : split_list(value)) cfg.sides.push_back(parse_side(item));
        } else if (key == "coverage_b") {
            cfg.coverage_b = parse_size_list(key, value);
        } else if (key == "vc_n") {
            cfg.vc_n = parse_size(key, value);
        } else if (key == "vc_b") {
            cfg.vc_b = parse_size(key, value);
        } else if (key == "vc_c") {
            cfg.vc_c = parse_size_list(key, value);
        } else if (key == "vc_m") {
            cfg.vc_m = parse_size(key, value);
        } else if (key == "full_scale") {
            if (value == "true" || value == "1") {
                cfg.apply_full_scale();
            } else if (value != "false" && value != "0") {
                throw ConfigError("key 'full_scale' needs true or false");
            }
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (!have_schema) throw ConfigError("config must set schema_version = 1");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

} // namespace dboot
