#pragma once

#include <vector>

namespace pesim {

struct PhysicalConfig;

// Subdivision of the angular acceptance into N signal and M idler sectors,
// the momentum qudits. Boundaries are monotone and partition
// [-Δθ/2, +Δθ/2] per arm; each sector carries the constant extra phase the
// SLM applies to the horizontally polarized component crossing it (the
// controlled phase-gate angles).
struct SectorConfig {
    std::vector<double> signal_bounds;  // size N+1, rad
    std::vector<double> idler_bounds;   // size M+1, rad
    std::vector<double> signal_phases;  // size N, rad, φ_ns
    std::vector<double> idler_phases;   // size M, rad, φ_mi

    int signal_count() const { return static_cast<int>(signal_phases.size()); }
    int idler_count() const { return static_cast<int>(idler_phases.size()); }

    // sector index containing the angle, or -1 outside the acceptance
    int signal_sector_of(double theta) const;
    int idler_sector_of(double theta_prime) const;

    void validate(const PhysicalConfig& cfg) const;

    // N (resp. M) equal-width sectors across the acceptance
    static SectorConfig uniform(const PhysicalConfig& cfg, int n_signal, int n_idler,
                                std::vector<double> signal_phases = {},
                                std::vector<double> idler_phases = {});
    // single sector per arm, no extra phases (plain purified pair)
    static SectorConfig trivial(const PhysicalConfig& cfg);
};

}  // namespace pesim
