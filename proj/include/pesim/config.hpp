#pragma once

#include <string>

namespace pesim {

// All optical and noise parameters of the source. Lengths in mm, angles and
// phases in rad, frequencies in rad/s (shift from the central frequency).
//
// The defaults are the calibrated working point: the phase-expansion
// coefficients alpha, beta, gamma are not known from first principles, so
// they are fixed by the bench observables they control — the mask slope
// beta*L*d/(gamma*D) = -0.05, the uncompensated/delay-compensated/SLM
// visibility ladder (0.423, 0.616, 0.886) — and reports label them as
// calibrations rather than predictions.
struct PhysicalConfig {
    // geometry
    double crystal_length_mm = 1.0;      // L
    double slm_distance_mm = 500.0;      // D, crystal -> SLM
    double pixel_width_mm = 0.1;         // d
    int pixel_count = 640;
    double angular_acceptance_rad = 6.5e-3;  // Δθ, set by the slits
    int signal_center_pixel = 480;       // x_c2
    int idler_center_pixel = 160;        // x_c1

    // first-order phase expansion between the H and V branches:
    // phi = phi0 + alpha*L*wp + beta*L*ws - delta*L*theta - mask terms
    double alpha_rad_s_per_mm = 8.670349295e-13;
    double beta_rad_s_per_mm = -1.125e-14;
    double gamma_rad_s = 4.5e-17;        // dθ'/dω_s
    double delta_rad_per_mm_rad = 0.0;   // 0 = auto (2*beta/gamma)
    double phi0_rad = 0.8;               // constant zero-order phase

    // pump spectrum and noise
    double pump_sigma_rad_s = 1.0e12;    // Gaussian |A(ωp)|² width
    bool delay_compensated = true;       // compensation crystals in the pump path
    double residual_dephasing_rad = 0.4915892405;  // pump spatial incoherence
    // Gaussian weighting of the collected downconversion spectrum |f|² in ωs;
    // 0 disables it (uniform density over the admissible wedge).
    double spectral_sigma_rad_s = 2.5531006361e13;
    double momentum_coherence = 1.0;     // cross-sector coherence scale, in [0,1]

    // bench
    double rate_scale_cps = 100.0;       // coincidence rate at unit probability
    double background_cps = 0.0;         // accidental + dark coincidence rate
    double scan_window_s = 30.0;
    double tomo_window_s = 60.0;

    // grid resolution
    int grid_n_theta = 512;
    int grid_n_omega_s = 512;
    int grid_n_omega_p = 64;

    // effective δ: unless overridden, the unique value 2β/γ for which linear
    // masks cancel the angular phase exactly
    double delta_effective() const;

    // βL/γ — phase slope per unit angle; the optimal mask slopes are ±a_opt
    double phase_slope() const { return beta_rad_s_per_mm * crystal_length_mm / gamma_rad_s; }
    // βLd/γD — optimal idler mask slope a1 (rad per pixel); a2 = -a1
    double optimal_a1() const { return phase_slope() * pixel_width_mm / slm_distance_mm; }
    // pixels per radian of generation angle
    double pixels_per_rad() const { return slm_distance_mm / pixel_width_mm; }

    void validate() const;
};

// Reads a flat key = value file ('#' comments, blank lines allowed). Unknown
// keys and malformed lines raise ConfigError with the line number. Missing
// keys keep their defaults.
PhysicalConfig load_config(const std::string& path);
PhysicalConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Writes every field in the same key = value format.
std::string config_to_string(const PhysicalConfig& cfg);

}  // namespace pesim
