#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qugauge::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            fail("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

const json& member(const json& j, const std::string& where, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(where + " is missing \"" + key + "\"");
    return *it;
}

double number(const json& j, const std::string& where, const std::string& key) {
    const json& v = member(j, where, key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where + "." + key + " must be finite");
    return x;
}

double number_or(const json& j, const std::string& where, const std::string& key,
                 double fallback) {
    if (!j.contains(key)) return fallback;
    return number(j, where, key);
}

std::vector<double> number_list(const json& j, const std::string& where,
                                const std::string& key) {
    const json& v = member(j, where, key);
    if (!v.is_array() || v.empty()) fail(where + "." + key + " must be a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            fail(where + "." + key + " must contain finite numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

SpectrumConfig parse_spectrum(const json& j) {
    require_keys(j, "spectrum", {"omega1", "omega2"});
    return {number(j, "spectrum", "omega1"), number(j, "spectrum", "omega2")};
}

MediumConfig parse_medium(const json& j) {
    require_keys(j, "medium", {"omega", "n1", "n2", "ell", "v0"});
    MediumConfig mc;
    mc.omega = number(j, "medium", "omega");
    mc.n1 = number(j, "medium", "n1");
    mc.n2 = number(j, "medium", "n2");
    mc.ell = number_or(j, "medium", "ell", 1.0);
    mc.v0 = number_or(j, "medium", "v0", 1.0);
    try {
        validate(mc);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return mc;
}

MixingConfig parse_mixing(const json& j) {
    require_keys(j, "mixing", {"theta", "gamma1", "gamma2"});
    try {
        return make_mixing(number(j, "mixing", "theta"),
                           number_or(j, "mixing", "gamma1", 0.0),
                           number_or(j, "mixing", "gamma2", 0.0));
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

TimeGrid parse_grid(const json& j) {
    require_keys(j, "time_grid", {"t0", "t1", "samples"});
    TimeGrid g;
    g.t0 = number(j, "time_grid", "t0");
    g.t1 = number(j, "time_grid", "t1");
    const json& n = member(j, "time_grid", "samples");
    if (!n.is_number_integer()) fail("time_grid.samples must be an integer");
    g.samples = n.get<int>();
    if (g.samples < 2) fail("time_grid.samples must be >= 2");
    if (!(g.t1 > g.t0)) fail("time_grid requires t1 > t0");
    if (g.t0 < 0.0) fail("time_grid.t0 must be >= 0");
    return g;
}

GaugeSpec parse_gauge(const json& j) {
    require_keys(j, "gauge_function",
                 {"family", "value", "rate", "amplitude", "frequency", "times", "values",
                  "product"});
    GaugeSpec g;
    const json& fam = member(j, "gauge_function", "family");
    if (!fam.is_string()) fail("gauge_function.family must be a string");
    g.family = fam.get<std::string>();
    if (j.contains("product")) {
        if (!j["product"].is_boolean()) fail("gauge_function.product must be a boolean");
        g.product = j["product"].get<bool>();
    }
    if (g.family == "constant") {
        g.value = number(j, "gauge_function", "value");
    } else if (g.family == "linear" || g.family == "quadratic") {
        g.rate = number(j, "gauge_function", "rate");
    } else if (g.family == "sinusoidal") {
        g.amplitude = number(j, "gauge_function", "amplitude");
        g.frequency = number(j, "gauge_function", "frequency");
    } else if (g.family == "sampled") {
        g.times = number_list(j, "gauge_function", "times");
        g.values = number_list(j, "gauge_function", "values");
        try {
            (void)GaugeFunction::sampled(g.times, g.values);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    } else {
        fail("gauge_function.family \"" + g.family + "\" is not one of "
             "constant/linear/quadratic/sinusoidal/sampled");
    }
    return g;
}

SweepSpec parse_sweep(const json& j) {
    require_keys(j, "sweep", {"target", "axis", "values", "start", "stop", "count"});
    SweepSpec sw;
    const json& target = member(j, "sweep", "target");
    const json& axis = member(j, "sweep", "axis");
    if (!target.is_string() || !axis.is_string()) {
        fail("sweep.target and sweep.axis must be strings");
    }
    sw.target = target.get<std::string>();
    sw.axis = axis.get<std::string>();
    static const std::set<std::string> targets{"phases", "entropy", "gauge"};
    static const std::set<std::string> axes{"theta", "omega1", "omega2", "n2", "t"};
    if (!targets.count(sw.target)) fail("sweep.target must be phases/entropy/gauge");
    if (!axes.count(sw.axis)) fail("sweep.axis must be theta/omega1/omega2/n2/t");
    if (j.contains("values")) {
        if (j.contains("start") || j.contains("stop") || j.contains("count")) {
            fail("sweep takes either values or start/stop/count, not both");
        }
        sw.values = number_list(j, "sweep", "values");
    } else {
        const double start = number(j, "sweep", "start");
        const double stop = number(j, "sweep", "stop");
        const json& cnt = member(j, "sweep", "count");
        if (!cnt.is_number_integer() || cnt.get<int>() < 1) {
            fail("sweep.count must be an integer >= 1");
        }
        const int count = cnt.get<int>();
        if (count == 1) {
            sw.values.push_back(start);
        } else {
            for (int i = 0; i < count; ++i) {
                sw.values.push_back(start + (stop - start) * static_cast<double>(i) /
                                                static_cast<double>(count - 1));
            }
        }
    }
    std::sort(sw.values.begin(), sw.values.end());
    return sw;
}

Tolerances parse_tolerances(const json& j) {
    require_keys(j, "tolerances",
                 {"evolution_oracle", "orthonormality", "phase_quadrature", "phase_numeric",
                  "phase_sum", "variance_identity", "invariant_triple", "sphere_arc",
                  "gauge_residual", "transformation_law", "entropy_oracle"});
    Tolerances t;
    const auto pick = [&](const char* key, double& slot) {
        if (j.contains(key)) {
            slot = number(j, "tolerances", key);
            if (!(slot > 0.0)) fail(std::string("tolerances.") + key + " must be > 0");
        }
    };
    pick("evolution_oracle", t.evolution_oracle);
    pick("orthonormality", t.orthonormality);
    pick("phase_quadrature", t.phase_quadrature);
    pick("phase_numeric", t.phase_numeric);
    pick("phase_sum", t.phase_sum);
    pick("variance_identity", t.variance_identity);
    pick("invariant_triple", t.invariant_triple);
    pick("sphere_arc", t.sphere_arc);
    pick("gauge_residual", t.gauge_residual);
    pick("transformation_law", t.transformation_law);
    pick("entropy_oracle", t.entropy_oracle);
    return t;
}

OutputSpec parse_output(const json& j) {
    require_keys(j, "output", {"format", "path"});
    OutputSpec out;
    if (j.contains("format")) {
        if (!j["format"].is_string()) fail("output.format must be a string");
        out.format = j["format"].get<std::string>();
        if (out.format != "csv" && out.format != "json") {
            fail("output.format must be \"csv\" or \"json\"");
        }
    }
    if (j.contains("path")) {
        if (!j["path"].is_string()) fail("output.path must be a string");
        out.path = j["path"].get<std::string>();
    }
    return out;
}

}  // namespace

GaugeFunction GaugeSpec::to_function() const {
    if (family == "constant") return GaugeFunction::constant(value);
    if (family == "linear") return GaugeFunction::linear(rate);
    if (family == "quadratic") return GaugeFunction::quadratic(rate);
    if (family == "sinusoidal") return GaugeFunction::sinusoidal(amplitude, frequency);
    if (family == "sampled") return GaugeFunction::sampled(times, values);
    throw ConfigError("config: unknown gauge family \"" + family + "\"");
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");
    require_keys(j, "top level",
                 {"spectrum", "medium", "mixing", "time_grid", "gauge_function", "sweep",
                  "tolerances", "output"});

    RunConfig cfg;
    const bool has_spectrum = j.contains("spectrum");
    const bool has_medium = j.contains("medium");
    if (has_spectrum == has_medium) {
        fail("exactly one of \"spectrum\" or \"medium\" must be given");
    }
    if (has_spectrum) cfg.spectrum = parse_spectrum(j["spectrum"]);
    if (has_medium) cfg.medium = parse_medium(j["medium"]);

    if (!j.contains("mixing")) fail("top level is missing \"mixing\"");
    cfg.mixing = parse_mixing(j["mixing"]);

    if (!j.contains("time_grid")) fail("top level is missing \"time_grid\"");
    cfg.grid = parse_grid(j["time_grid"]);

    if (j.contains("gauge_function")) cfg.gauge = parse_gauge(j["gauge_function"]);
    if (j.contains("sweep")) cfg.sweep = parse_sweep(j["sweep"]);
    if (j.contains("tolerances")) cfg.tol = parse_tolerances(j["tolerances"]);
    if (j.contains("output")) cfg.output = parse_output(j["output"]);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace qugauge::cli
