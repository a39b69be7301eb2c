#include "pesim/sectors.hpp"

#include <algorithm>
#include <cmath>

#include "pesim/config.hpp"
#include "pesim/errors.hpp"

namespace pesim {

namespace {

int sector_of(const std::vector<double>& bounds, double angle) {
    if (bounds.size() < 2) return -1;
    if (angle < bounds.front() || angle > bounds.back()) return -1;
    // upper_bound puts boundary angles into the sector to their right; the
    // top boundary belongs to the last sector
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), angle);
    int idx = static_cast<int>(it - bounds.begin()) - 1;
    if (idx == static_cast<int>(bounds.size()) - 1) --idx;
    return idx;
}

void check_bounds(const std::vector<double>& bounds, std::size_t phases, double half_acc,
                  const char* arm) {
    if (phases < 1) throw ConfigError(std::string("sectors: ") + arm + " needs at least one sector");
    if (bounds.size() != phases + 1)
        throw ConfigError(std::string("sectors: ") + arm + " boundary count must be N+1");
    for (std::size_t i = 1; i < bounds.size(); ++i)
        if (bounds[i] <= bounds[i - 1])
            throw ConfigError(std::string("sectors: ") + arm +
                              " boundaries must be strictly increasing (overlap)");
    const double tol = 1e-12;
    if (bounds.front() < -half_acc - tol || bounds.back() > half_acc + tol)
        throw ConfigError(std::string("sectors: ") + arm + " boundaries outside the acceptance");
}

}  // namespace

int SectorConfig::signal_sector_of(double theta) const {
    return sector_of(signal_bounds, theta);
}

int SectorConfig::idler_sector_of(double theta_prime) const {
    return sector_of(idler_bounds, theta_prime);
}

void SectorConfig::validate(const PhysicalConfig& cfg) const {
    const double half = cfg.angular_acceptance_rad / 2.0;
    check_bounds(signal_bounds, signal_phases.size(), half, "signal");
    check_bounds(idler_bounds, idler_phases.size(), half, "idler");
}

SectorConfig SectorConfig::uniform(const PhysicalConfig& cfg, int n_signal, int n_idler,
                                   std::vector<double> signal_phases,
                                   std::vector<double> idler_phases) {
    if (n_signal < 1 || n_idler < 1) throw ConfigError("sectors: counts must be >= 1");
    if (signal_phases.empty()) signal_phases.assign(n_signal, 0.0);
    if (idler_phases.empty()) idler_phases.assign(n_idler, 0.0);
    if (static_cast<int>(signal_phases.size()) != n_signal ||
        static_cast<int>(idler_phases.size()) != n_idler)
        throw ConfigError("sectors: phase count does not match sector count");
    SectorConfig s;
    const double half = cfg.angular_acceptance_rad / 2.0;
    auto bounds = [half](int n) {
        std::vector<double> b(n + 1);
        for (int i = 0; i <= n; ++i) b[i] = -half + 2.0 * half * i / n;
        return b;
    };
    s.signal_bounds = bounds(n_signal);
    s.idler_bounds = bounds(n_idler);
    s.signal_phases = std::move(signal_phases);
    s.idler_phases = std::move(idler_phases);
    s.validate(cfg);
    return s;
}

SectorConfig SectorConfig::trivial(const PhysicalConfig& cfg) {
    return uniform(cfg, 1, 1);
}

}  // namespace pesim
