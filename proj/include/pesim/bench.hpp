#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pesim/grid.hpp"
#include "pesim/qmath.hpp"
#include "pesim/sectors.hpp"
#include "pesim/slm_mask.hpp"

namespace pesim {

struct PhysicalConfig;

// One detector-arm analyzer: optional quarter- and half-wave plates (absent
// plate = removed from the path) followed by a polarizer. Angles in degrees.
struct ArmSetting {
    std::optional<double> qwp_deg;
    std::optional<double> hwp_deg;
    double polarizer_deg = 0.0;
};

struct MeasurementSetting {
    ArmSetting signal;
    ArmSetting idler;
    std::optional<int> signal_sector;  // slit position on the signal arm
    double window_s = 30.0;
    double rate_scale_cps = 100.0;
    double background_cps = 0.0;
    std::string label;
};

struct CountRecord {
    MeasurementSetting setting;
    std::int64_t counts = 0;
    double expected_rate = 0.0;  // counts/s
};

// Rank-1 projector on the two-qubit polarization space implied by the
// waveplate/polarizer chain of both arms.
Operator projector(const MeasurementSetting& setting);

// rate_scale · Tr[ρ (P_pol ⊗ Π_sector)] + background. The state dimension
// must be 4·N·M; Π selects the signal momentum sector when the setting asks
// for one, otherwise it is the identity.
double coincidence_rate(const DensityMatrix& state, const MeasurementSetting& setting,
                        int n_signal = 1, int n_idler = 1);

// Poisson counts with mean rate·window, reproducible per seed.
CountRecord sample_counts(double rate, double window_s, std::uint64_t seed);

enum class ScanParameter { b1, b2, a_pair };

struct ScanPoint {
    double value = 0.0;
    double rate = 0.0;  // analytic coincidence rate at 45°/-45°
    std::int64_t counts = 0;
    double window_s = 0.0;
};

// Rebuilds the linear mask at each parameter value, resynthesizes the
// purified state and evaluates the 45°/-45° coincidence rate plus one
// sampled count. a_pair scans enforce a1 = -a2. Base coefficients come from
// `base` (a1, b1, a2, b2 of a linear mask).
struct MaskParams {
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
};

std::vector<ScanPoint> scan(const PhysicalConfig& cfg, const BiphotonGrid& grid,
                            ScanParameter parameter, double lo, double hi, int steps,
                            const MaskParams& base, double window_s, std::uint64_t seed);

std::string scan_to_csv(const std::vector<ScanPoint>& points, const std::string& name);

// Two-stage coordinate descent on the 45°/-45° coincidence minimum: scan b1
// (b2 fixed), then the a-pair, then one refinement pass of each. With
// use_counts the objective is a Poisson sample at `window_s` per point,
// matching the bench procedure; otherwise the analytic rate.
struct OptimizeSpec {
    double b_lo = -M_PI, b_hi = M_PI;
    int b_steps = 73;
    double a_lo = -0.15, a_hi = 0.05;
    int a_steps = 81;
    int refinement_passes = 1;
    bool use_counts = false;
    double window_s = 30.0;
    std::uint64_t seed = 1;
};

struct OptimizeResult {
    MaskParams params;
    double rate = 0.0;  // noise-free rate at the optimum
    bool converged = true;
    int evaluations = 0;
};

OptimizeResult optimize_mask(const PhysicalConfig& cfg, const BiphotonGrid& grid,
                             const MaskParams& init, const OptimizeSpec& spec);

// Fringe contrast (Cmax - Cmin)/(Cmax + Cmin) of the polarization state with
// the signal analyzer fixed at +45°. The idler analyzer (waveplates +
// polarizer) is swept over its full range; the six cardinal settings fix the
// extrema exactly, so the result equals the magnitude of the HH-VV coherence
// for states of that form. Throws if every rate vanishes.
double visibility_measurement(const DensityMatrix& pol_state);

// Polarizer-only idler scan at the given angles (the measured fringe a
// cos²-type fit would see); used for reporting.
std::vector<ScanPoint> visibility_fringe(const DensityMatrix& pol_state, int steps,
                                         double rate_scale);

}  // namespace pesim
