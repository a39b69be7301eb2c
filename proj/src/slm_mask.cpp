#include "pesim/slm_mask.hpp"

#include <cmath>
#include <sstream>

#include "pesim/config.hpp"
#include "pesim/errors.hpp"

namespace pesim {

double wrap_phase(double phi) {
    double w = std::remainder(phi, 2.0 * M_PI);  // (-π, π], with -π possible
    if (w <= -M_PI) w = M_PI;
    return w;
}

int pixel_of(const PhysicalConfig& cfg, Arm arm, double angle) {
    const int center = arm == Arm::signal ? cfg.signal_center_pixel : cfg.idler_center_pixel;
    const double offset = cfg.pixels_per_rad() * angle;
    // lround rounds halves away from zero, i.e. away from the center pixel
    const long idx = center + std::lround(offset);
    if (idx < 0 || idx >= cfg.pixel_count)
        throw UsageError(std::string("pixel_of: angle ") + std::to_string(angle) + " rad on the " +
                         (arm == Arm::signal ? "signal" : "idler") + " arm maps to pixel " +
                         std::to_string(idx) + ", outside the device");
    return static_cast<int>(idx);
}

PhaseMask linear_mask(const PhysicalConfig& cfg, double a1, double b1, double a2, double b2,
                      bool analytic) {
    PhaseMask m;
    m.pixel_count = cfg.pixel_count;
    m.signal_phases.resize(cfg.pixel_count);
    m.idler_phases.resize(cfg.pixel_count);
    for (int x = 0; x < cfg.pixel_count; ++x) {
        m.signal_phases[x] = wrap_phase(a2 * (x - cfg.signal_center_pixel) + b2);
        m.idler_phases[x] = wrap_phase(a1 * (x - cfg.idler_center_pixel) + b1);
    }
    m.analytic = analytic;
    m.a1 = a1;
    m.b1 = b1;
    m.a2 = a2;
    m.b2 = b2;
    return m;
}

PhaseMask zero_mask(const PhysicalConfig& cfg) {
    return linear_mask(cfg, 0.0, 0.0, 0.0, 0.0);
}

PhaseMask optimal_mask(const PhysicalConfig& cfg, bool analytic) {
    const double a1 = cfg.optimal_a1();
    return linear_mask(cfg, a1, cfg.phi0_rad, -a1, 0.0, analytic);
}

PhaseMask with_sector_offsets(const PhaseMask& mask, const PhysicalConfig& cfg,
                              const SectorConfig& sectors) {
    sectors.validate(cfg);
    if (mask.pixel_count != cfg.pixel_count)
        throw UsageError("with_sector_offsets: mask does not match the device");
    PhaseMask out = mask;
    out.analytic = false;  // sector plateaus are genuinely pixelated
    for (int x = 0; x < cfg.pixel_count; ++x) {
        const double theta_s = (x - cfg.signal_center_pixel) / cfg.pixels_per_rad();
        const int n = sectors.signal_sector_of(theta_s);
        if (n >= 0) out.signal_phases[x] = wrap_phase(out.signal_phases[x] + sectors.signal_phases[n]);
        const double theta_i = (x - cfg.idler_center_pixel) / cfg.pixels_per_rad();
        const int m = sectors.idler_sector_of(theta_i);
        if (m >= 0) out.idler_phases[x] = wrap_phase(out.idler_phases[x] + sectors.idler_phases[m]);
    }
    return out;
}

double mask_phase(const PhysicalConfig& cfg, const PhaseMask& mask, Arm arm, double angle) {
    if (mask.analytic) {
        const double x = cfg.pixels_per_rad() * angle;  // continuous pixel offset from center
        return arm == Arm::signal ? mask.a2 * x + mask.b2 : mask.a1 * x + mask.b1;
    }
    const int px = pixel_of(cfg, arm, angle);
    return arm == Arm::signal ? mask.signal_phases[px] : mask.idler_phases[px];
}

std::string mask_to_csv(const PhaseMask& mask) {
    std::ostringstream os;
    os.precision(17);
    os << "pixel,signal_phase_rad,idler_phase_rad\n";
    for (int x = 0; x < mask.pixel_count; ++x)
        os << x << ',' << mask.signal_phases[x] << ',' << mask.idler_phases[x] << '\n';
    return os.str();
}

PhaseMask mask_from_csv(const std::string& text) {
    PhaseMask m;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("pixel,", 0) == 0) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ls, cell, ','))
                throw UsageError("mask_from_csv: row " + std::to_string(lineno) + " malformed");
            v[i] = std::stod(cell);
        }
        if (static_cast<int>(v[0]) != static_cast<int>(m.signal_phases.size()))
            throw UsageError("mask_from_csv: pixel indices must be consecutive from 0");
        m.signal_phases.push_back(v[1]);
        m.idler_phases.push_back(v[2]);
    }
    m.pixel_count = static_cast<int>(m.signal_phases.size());
    if (m.pixel_count == 0) throw UsageError("mask_from_csv: empty input");
    return m;
}

}  // namespace pesim
