#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "smc/error.hpp"
#include "smc/experiment.hpp"
#include "smc/rng.hpp"

namespace smc {

using nlohmann::json;

ExperimentConfig preset(std::string_view experiment) {
    ExperimentConfig c;
    c.experiment = std::string(experiment);
    auto& dyn = c.world.dynamics;
    if (experiment == "sim1" || experiment == "custom") {
        dyn.mode = LatentMode::discrete_translate;
        dyn.n_positions = 5;
        c.k = 5;
        c.lifted = false;
    } else if (experiment == "sim2") {
        dyn.mode = LatentMode::continuous_translate;
        c.k = 10;
        c.lifted = false;
    } else if (experiment == "sim3") {
        dyn.mode = LatentMode::discrete_translate_rotate;
        dyn.n_distances = 3;
        dyn.n_orientations = 2;
        c.k = 6;
        c.lifted = true;
        c.symmetrize = false;
    } else {
        throw Error(ErrorKind::invalid_config, "unknown experiment '" + std::string(experiment) +
                                                   "' (expected sim1, sim2, sim3 or custom)");
    }
    return c;
}

std::vector<std::string> violations(const ExperimentConfig& c) {
    std::vector<std::string> out;
    const auto& w = c.world;
    const auto& dyn = w.dynamics;
    if (c.experiment != "sim1" && c.experiment != "sim2" && c.experiment != "sim3" && c.experiment != "custom")
        out.push_back("experiment must be one of sim1, sim2, sim3, custom");
    if (c.k < 2) out.push_back("k >= 2 required");
    if (c.r < 2) out.push_back("r >= 2 required");
    if (c.r < c.k) out.push_back("r >= k required (r=" + std::to_string(c.r) + ", k=" + std::to_string(c.k) + ")");
    if (c.n_explore < c.r) out.push_back("n_explore >= r required");
    if (c.n_transition < 3) out.push_back("n_transition >= 3 required");
    if (!(w.d_min > 0.0)) out.push_back("d_min > 0 required");
    if (!(w.d_min < w.d_max)) out.push_back("d_min < d_max required (d_min=" + std::to_string(w.d_min) +
                                            ", d_max=" + std::to_string(w.d_max) + ")");
    if (!(w.phi_min <= w.phi_max)) out.push_back("phi_min <= phi_max required");
    if (!(w.phi_max - w.phi_min < std::numbers::pi / 2.0)) out.push_back("phi_max - phi_min < pi/2 required");
    if (!(w.m_min < w.m_max)) out.push_back("m_min < m_max required");
    const double max_angle = std::max(std::abs(w.m_min), std::abs(w.m_max)) +
                             std::max(std::abs(w.phi_min), std::abs(w.phi_max));
    if (!(max_angle < std::numbers::pi / 2.0))
        out.push_back("max|m| + max|phi| < pi/2 required so every ray can reach the wall");
    else if (!(w.s_max > saturation_bound(w)))
        out.push_back("s_max > d_max / cos(max|m| + max|phi|) = " + std::to_string(saturation_bound(w)) +
                      " required");
    if (!(w.sensor_noise >= 0.0)) out.push_back("sensor_noise >= 0 required");
    if (!(dyn.change_prob >= 0.0 && dyn.change_prob <= 1.0)) out.push_back("change_prob in [0, 1] required");
    switch (dyn.mode) {
    case LatentMode::discrete_translate:
        if (dyn.n_positions < 2) out.push_back("n_positions >= 2 required");
        break;
    case LatentMode::discrete_translate_rotate:
        if (dyn.n_distances < 1 || dyn.n_orientations < 1 || dyn.n_distances * dyn.n_orientations < 2)
            out.push_back("n_distances * n_orientations >= 2 required");
        break;
    case LatentMode::continuous_translate:
        if (!(dyn.sigma_e > 0.0)) out.push_back("sigma_e > 0 required");
        break;
    }
    if (!(c.policy.sigma_m > 0.0)) out.push_back("sigma_m > 0 required");
    return out;
}

namespace {

constexpr std::string_view mode_name(LatentMode m) {
    switch (m) {
    case LatentMode::discrete_translate: return "discrete_translate";
    case LatentMode::continuous_translate: return "continuous_translate";
    case LatentMode::discrete_translate_rotate: return "discrete_translate_rotate";
    }
    return "";
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::parse_error, "field '" + field + "': " + what);
}

double get_number(const json& v, const std::string& field) {
    if (!v.is_number()) field_error(field, "expected a number");
    return v.get<double>();
}

std::size_t get_count(const json& v, const std::string& field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        field_error(field, "expected a non-negative integer");
    return v.get<std::size_t>();
}

bool get_bool(const json& v, const std::string& field) {
    if (!v.is_boolean()) field_error(field, "expected true or false");
    return v.get<bool>();
}

std::string get_string(const json& v, const std::string& field) {
    if (!v.is_string()) field_error(field, "expected a string");
    return v.get<std::string>();
}

} // namespace

json to_json(const ExperimentConfig& c) {
    const auto& w = c.world;
    const auto& dyn = w.dynamics;
    json j;
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    j["generator"] = kGeneratorName;
    j["r"] = c.r;
    j["k"] = c.k;
    j["n_explore"] = c.n_explore;
    j["n_transition"] = c.n_transition;
    j["n_holdout"] = c.n_holdout;
    j["lifted"] = c.lifted;
    j["symmetrize"] = c.symmetrize;
    j["d_min"] = w.d_min;
    j["d_max"] = w.d_max;
    j["phi_min"] = w.phi_min;
    j["phi_max"] = w.phi_max;
    j["m_min"] = w.m_min;
    j["m_max"] = w.m_max;
    j["s_max"] = w.s_max;
    j["sensor_noise"] = w.sensor_noise;
    j["latent_mode"] = mode_name(dyn.mode);
    j["n_positions"] = dyn.n_positions;
    j["n_distances"] = dyn.n_distances;
    j["n_orientations"] = dyn.n_orientations;
    j["change_prob"] = dyn.change_prob;
    j["sigma_e"] = dyn.sigma_e;
    j["discrete_jump"] = dyn.jump == DiscreteJump::uniform ? "uniform" : "neighbor";
    j["sigma_m"] = c.policy.sigma_m;
    j["boundary"] = c.policy.boundary == Boundary::reflect ? "reflect" : "clamp";
    return j;
}

ExperimentConfig apply_json(const json& doc, ExperimentConfig c) {
    if (!doc.is_object()) throw Error(ErrorKind::parse_error, "config must be a JSON object");
    auto& w = c.world;
    auto& dyn = w.dynamics;
    for (const auto& [key, v] : doc.items()) {
        if (key == "experiment") c.experiment = get_string(v, key);
        else if (key == "seed") c.seed = get_count(v, key);
        else if (key == "generator") {
            if (get_string(v, key) != kGeneratorName)
                field_error(key, std::string("only ") + kGeneratorName + " is supported");
        } else if (key == "r") c.r = get_count(v, key);
        else if (key == "k") c.k = get_count(v, key);
        else if (key == "n_explore") c.n_explore = get_count(v, key);
        else if (key == "n_transition") c.n_transition = get_count(v, key);
        else if (key == "n_holdout") c.n_holdout = get_count(v, key);
        else if (key == "lifted") c.lifted = get_bool(v, key);
        else if (key == "symmetrize") c.symmetrize = get_bool(v, key);
        else if (key == "out_dir") c.out_dir = get_string(v, key);
        else if (key == "d_min") w.d_min = get_number(v, key);
        else if (key == "d_max") w.d_max = get_number(v, key);
        else if (key == "phi_min") w.phi_min = get_number(v, key);
        else if (key == "phi_max") w.phi_max = get_number(v, key);
        else if (key == "m_min") w.m_min = get_number(v, key);
        else if (key == "m_max") w.m_max = get_number(v, key);
        else if (key == "s_max") w.s_max = get_number(v, key);
        else if (key == "sensor_noise") w.sensor_noise = get_number(v, key);
        else if (key == "latent_mode") {
            const auto s = get_string(v, key);
            if (s == "discrete_translate") dyn.mode = LatentMode::discrete_translate;
            else if (s == "continuous_translate") dyn.mode = LatentMode::continuous_translate;
            else if (s == "discrete_translate_rotate") dyn.mode = LatentMode::discrete_translate_rotate;
            else field_error(key, "unknown mode '" + s + "'");
        } else if (key == "n_positions") dyn.n_positions = get_count(v, key);
        else if (key == "n_distances") dyn.n_distances = get_count(v, key);
        else if (key == "n_orientations") dyn.n_orientations = get_count(v, key);
        else if (key == "change_prob") dyn.change_prob = get_number(v, key);
        else if (key == "sigma_e") dyn.sigma_e = get_number(v, key);
        else if (key == "discrete_jump") {
            const auto s = get_string(v, key);
            if (s == "uniform") dyn.jump = DiscreteJump::uniform;
            else if (s == "neighbor") dyn.jump = DiscreteJump::neighbor;
            else field_error(key, "expected uniform or neighbor");
        } else if (key == "sigma_m") c.policy.sigma_m = get_number(v, key);
        else if (key == "boundary") {
            const auto s = get_string(v, key);
            if (s == "reflect") c.policy.boundary = Boundary::reflect;
            else if (s == "clamp") c.policy.boundary = Boundary::clamp;
            else field_error(key, "expected reflect or clamp");
        } else {
            field_error(key, "unknown field");
        }
    }
    return c;
}

json parse_config_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::parse_error, "line 1: config must be a JSON object");
    return doc;
}

json read_config_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse_error, "cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_document(text.str());
}

namespace {

ExperimentConfig from_document(const json& doc) {
    std::string name = "sim1";
    if (auto it = doc.find("experiment"); it != doc.end()) name = get_string(*it, "experiment");
    ExperimentConfig base;
    try {
        base = preset(name);
    } catch (const Error& e) {
        field_error("experiment", e.what());
    }
    return apply_json(doc, base);
}

} // namespace

ExperimentConfig parse_config(std::string_view text) { return from_document(parse_config_document(text)); }

ExperimentConfig load_config(const std::filesystem::path& path) { return from_document(read_config_document(path)); }

std::vector<std::string> validate_config_file(const std::filesystem::path& path) {
    return violations(load_config(path));
}

} // namespace smc
