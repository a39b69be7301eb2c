#include "pesim/jones.hpp"

#include <cmath>

namespace pesim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Eigen::Matrix2cd rotation2(double angle_rad) {
    Eigen::Matrix2cd r;
    r << std::cos(angle_rad), -std::sin(angle_rad), std::sin(angle_rad), std::cos(angle_rad);
    return r;
}

Eigen::Matrix2cd waveplate(double retardance_rad, double fast_axis_rad) {
    Eigen::Matrix2cd core = Eigen::Matrix2cd::Zero();
    core(0, 0) = 1.0;
    core(1, 1) = std::exp(kI * retardance_rad);
    return rotation2(fast_axis_rad) * core * rotation2(-fast_axis_rad);
}

Eigen::Matrix2cd half_wave_plate(double fast_axis_rad) {
    return waveplate(M_PI, fast_axis_rad);
}

Eigen::Matrix2cd quarter_wave_plate(double fast_axis_rad) {
    return waveplate(M_PI / 2.0, fast_axis_rad);
}

Eigen::Vector2cd polarizer_ket(double angle_rad) {
    Eigen::Vector2cd v;
    v << std::cos(angle_rad), std::sin(angle_rad);
    return v;
}

Eigen::Vector2cd analyzer_ket(std::optional<double> qwp_rad, std::optional<double> hwp_rad,
                              double polarizer_rad) {
    Eigen::Vector2cd m = polarizer_ket(polarizer_rad);
    if (hwp_rad) m = half_wave_plate(*hwp_rad).adjoint() * m;
    if (qwp_rad) m = quarter_wave_plate(*qwp_rad).adjoint() * m;
    return m;
}

}  // namespace pesim
