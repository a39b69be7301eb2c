#include "pesim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pesim/errors.hpp"

namespace pesim {

double PhysicalConfig::delta_effective() const {
    if (delta_rad_per_mm_rad != 0.0) return delta_rad_per_mm_rad;
    return 2.0 * beta_rad_s_per_mm / gamma_rad_s;
}

void PhysicalConfig::validate() const {
    if (crystal_length_mm <= 0 || slm_distance_mm <= 0 || pixel_width_mm <= 0)
        throw ConfigError("config: lengths must be positive");
    if (angular_acceptance_rad <= 0) throw ConfigError("config: angular acceptance must be positive");
    if (pixel_count <= 0) throw ConfigError("config: pixel_count must be positive");
    if (gamma_rad_s == 0.0) throw ConfigError("config: gamma = 0 gives a zero-measure domain");
    if (pump_sigma_rad_s <= 0) throw ConfigError("config: pump_sigma must be positive");
    if (residual_dephasing_rad < 0) throw ConfigError("config: residual_dephasing must be >= 0");
    if (spectral_sigma_rad_s < 0) throw ConfigError("config: spectral_sigma must be >= 0");
    if (momentum_coherence < 0 || momentum_coherence > 1)
        throw ConfigError("config: momentum_coherence must be in [0, 1]");
    if (rate_scale_cps <= 0) throw ConfigError("config: rate_scale must be positive");
    if (background_cps < 0) throw ConfigError("config: background rate must be >= 0");
    if (scan_window_s <= 0 || tomo_window_s <= 0)
        throw ConfigError("config: acquisition windows must be positive");
    if (grid_n_theta < 8 || grid_n_omega_s < 8 || grid_n_omega_p < 8)
        throw ConfigError("config: grid resolutions must be >= 8");
    // both acceptance windows must fit on the device
    const double span_px = pixels_per_rad() * angular_acceptance_rad;
    if (span_px > pixel_count)
        throw ConfigError("config: angular acceptance spans " + std::to_string(span_px) +
                          " pixels, more than the device has");
    auto window_ok = [&](int center) {
        return center - span_px / 2 >= 0 && center + span_px / 2 < pixel_count;
    };
    if (!window_ok(signal_center_pixel) || !window_ok(idler_center_pixel))
        throw ConfigError("config: acceptance window falls off the SLM");
}

namespace {

using Setter = std::function<void(PhysicalConfig&, const std::string&)>;

double parse_double(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
}

int parse_int(const std::string& v) {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected true/false");
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"crystal_length_mm", [](auto& c, const auto& v) { c.crystal_length_mm = parse_double(v); }},
        {"slm_distance_mm", [](auto& c, const auto& v) { c.slm_distance_mm = parse_double(v); }},
        {"pixel_width_mm", [](auto& c, const auto& v) { c.pixel_width_mm = parse_double(v); }},
        {"pixel_count", [](auto& c, const auto& v) { c.pixel_count = parse_int(v); }},
        {"angular_acceptance_rad",
         [](auto& c, const auto& v) { c.angular_acceptance_rad = parse_double(v); }},
        {"signal_center_pixel", [](auto& c, const auto& v) { c.signal_center_pixel = parse_int(v); }},
        {"idler_center_pixel", [](auto& c, const auto& v) { c.idler_center_pixel = parse_int(v); }},
        {"alpha_rad_s_per_mm", [](auto& c, const auto& v) { c.alpha_rad_s_per_mm = parse_double(v); }},
        {"beta_rad_s_per_mm", [](auto& c, const auto& v) { c.beta_rad_s_per_mm = parse_double(v); }},
        {"gamma_rad_s", [](auto& c, const auto& v) { c.gamma_rad_s = parse_double(v); }},
        {"delta_rad_per_mm_rad",
         [](auto& c, const auto& v) { c.delta_rad_per_mm_rad = v == "auto" ? 0.0 : parse_double(v); }},
        {"phi0_rad", [](auto& c, const auto& v) { c.phi0_rad = parse_double(v); }},
        {"pump_sigma_rad_s", [](auto& c, const auto& v) { c.pump_sigma_rad_s = parse_double(v); }},
        {"delay_compensated", [](auto& c, const auto& v) { c.delay_compensated = parse_bool(v); }},
        {"residual_dephasing_rad",
         [](auto& c, const auto& v) { c.residual_dephasing_rad = parse_double(v); }},
        {"spectral_sigma_rad_s",
         [](auto& c, const auto& v) { c.spectral_sigma_rad_s = parse_double(v); }},
        {"momentum_coherence", [](auto& c, const auto& v) { c.momentum_coherence = parse_double(v); }},
        {"rate_scale_cps", [](auto& c, const auto& v) { c.rate_scale_cps = parse_double(v); }},
        {"background_cps", [](auto& c, const auto& v) { c.background_cps = parse_double(v); }},
        {"scan_window_s", [](auto& c, const auto& v) { c.scan_window_s = parse_double(v); }},
        {"tomo_window_s", [](auto& c, const auto& v) { c.tomo_window_s = parse_double(v); }},
        {"grid_n_theta", [](auto& c, const auto& v) { c.grid_n_theta = parse_int(v); }},
        {"grid_n_omega_s", [](auto& c, const auto& v) { c.grid_n_omega_s = parse_int(v); }},
        {"grid_n_omega_p", [](auto& c, const auto& v) { c.grid_n_omega_p = parse_int(v); }},
    };
    return table;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

PhysicalConfig parse_config(const std::string& text, const std::string& origin) {
    PhysicalConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            it->second(cfg, value);
        } catch (const std::exception& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad value for '" + key +
                              "': " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

PhysicalConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string config_to_string(const PhysicalConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "# geometry (lengths in mm, angles in rad)\n"
       << "crystal_length_mm = " << cfg.crystal_length_mm << "\n"
       << "slm_distance_mm = " << cfg.slm_distance_mm << "\n"
       << "pixel_width_mm = " << cfg.pixel_width_mm << "\n"
       << "pixel_count = " << cfg.pixel_count << "\n"
       << "angular_acceptance_rad = " << cfg.angular_acceptance_rad << "\n"
       << "signal_center_pixel = " << cfg.signal_center_pixel << "\n"
       << "idler_center_pixel = " << cfg.idler_center_pixel << "\n"
       << "# phase expansion (alpha, beta in rad*s/mm; gamma in rad*s)\n"
       << "alpha_rad_s_per_mm = " << cfg.alpha_rad_s_per_mm << "\n"
       << "beta_rad_s_per_mm = " << cfg.beta_rad_s_per_mm << "\n"
       << "gamma_rad_s = " << cfg.gamma_rad_s << "\n"
       << "delta_rad_per_mm_rad = "
       << (cfg.delta_rad_per_mm_rad == 0.0 ? std::string("auto")
                                           : std::to_string(cfg.delta_rad_per_mm_rad))
       << "\n"
       << "phi0_rad = " << cfg.phi0_rad << "\n"
       << "# pump and noise (frequencies in rad/s)\n"
       << "pump_sigma_rad_s = " << cfg.pump_sigma_rad_s << "\n"
       << "delay_compensated = " << (cfg.delay_compensated ? "true" : "false") << "\n"
       << "residual_dephasing_rad = " << cfg.residual_dephasing_rad << "\n"
       << "spectral_sigma_rad_s = " << cfg.spectral_sigma_rad_s << "\n"
       << "momentum_coherence = " << cfg.momentum_coherence << "\n"
       << "# bench\n"
       << "rate_scale_cps = " << cfg.rate_scale_cps << "\n"
       << "background_cps = " << cfg.background_cps << "\n"
       << "scan_window_s = " << cfg.scan_window_s << "\n"
       << "tomo_window_s = " << cfg.tomo_window_s << "\n"
       << "# grid\n"
       << "grid_n_theta = " << cfg.grid_n_theta << "\n"
       << "grid_n_omega_s = " << cfg.grid_n_omega_s << "\n"
       << "grid_n_omega_p = " << cfg.grid_n_omega_p << "\n";
    return os.str();
}

}  // namespace pesim
