#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace pesim {

// Jones matrices, fast axis measured from horizontal (counterclockwise
// looking into the beam); a waveplate of retardance Γ delays the slow axis
// by e^{iΓ}. These conventions are fixed here and assumed everywhere.
Eigen::Matrix2cd rotation2(double angle_rad);
Eigen::Matrix2cd waveplate(double retardance_rad, double fast_axis_rad);
Eigen::Matrix2cd half_wave_plate(double fast_axis_rad);
Eigen::Matrix2cd quarter_wave_plate(double fast_axis_rad);

// Linear polarizer transmission state (cos α, sin α).
Eigen::Vector2cd polarizer_ket(double angle_rad);

// State analyzed by [QWP(q)] → [HWP(h)] → polarizer(α); either plate may be
// absent. The projector measured on the photon is |m><m| with
// m = QWP(q)† HWP(h)† |α>.
Eigen::Vector2cd analyzer_ket(std::optional<double> qwp_rad, std::optional<double> hwp_rad,
                              double polarizer_rad);

}  // namespace pesim
