#pragma once

#include <string>
#include <vector>

#include "pesim/sectors.hpp"

namespace pesim {

struct PhysicalConfig;

enum class Arm { signal, idler };

// Per-pixel phase tables for the single 640-pixel device both arms share
// (disjoint index ranges around their center pixels). Phases are stored
// wrapped to (-π, π]; all downstream math uses e^{iφ}, so wrapping is exact.
//
// A mask built with analytic=true additionally remembers its linear
// coefficients and evaluates phases continuously in angle, bypassing pixel
// quantization — the ideal-limit mode used to isolate quantization effects.
struct PhaseMask {
    int pixel_count = 0;
    std::vector<double> signal_phases;
    std::vector<double> idler_phases;

    bool analytic = false;
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;  // kept for analytic evaluation
};

// wraps to (-π, π]
double wrap_phase(double phi);

// Pixel under a given generation angle: round(x_c + (D/d)·angle), ties
// rounded away from the center pixel. Throws naming the arm if the angle
// maps off the device.
int pixel_of(const PhysicalConfig& cfg, Arm arm, double angle);

// φ'(x) = a1 (x - x_c1) + b1 on the idler, φ(x) = a2 (x - x_c2) + b2 on the
// signal, populated for every pixel.
PhaseMask linear_mask(const PhysicalConfig& cfg, double a1, double b1, double a2, double b2,
                      bool analytic = false);

PhaseMask zero_mask(const PhysicalConfig& cfg);

// The purification mask the bench optimum corresponds to:
// a1 = -a2 = βLd/γD, b1 = φ0, b2 = 0.
PhaseMask optimal_mask(const PhysicalConfig& cfg, bool analytic = false);

// Adds each sector's constant phase to the pixels covering it (pixel-center
// membership); the underlying ramp is untouched.
PhaseMask with_sector_offsets(const PhaseMask& mask, const PhysicalConfig& cfg,
                              const SectorConfig& sectors);

// Phase the arm applies at a given generation angle (pixel lookup, or the
// exact linear value for analytic masks).
double mask_phase(const PhysicalConfig& cfg, const PhaseMask& mask, Arm arm, double angle);

// CSV drive-pattern format: header, then "pixel,signal_phase,idler_phase".
std::string mask_to_csv(const PhaseMask& mask);
PhaseMask mask_from_csv(const std::string& text);

}  // namespace pesim
