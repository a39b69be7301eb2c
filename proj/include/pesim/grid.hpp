#pragma once

#include <string>
#include <vector>

namespace pesim {

struct PhysicalConfig;

struct GridResolution {
    int n_theta = 512;
    int n_omega_s = 512;
    int n_omega_p = 64;
};

// Midpoint discretization of the admissible (θ, ωs, ωp) domain. θ spans the
// acceptance; for each θ the ωs row spans [(θ-Δθ/2)/γ, (θ+Δθ/2)/γ], i.e. the
// idler angle θ' = -θ + γ ωs sweeps the full acceptance. ωp is sampled over
// ±8σp of the Gaussian pump spectrum.
//
// The (θ, ωs) and ωp factors are stored separately (no phase term couples
// them to each other nonseparably), each with weights and density values
// normalized so Σ weight·density = 1 per factor, hence 1 jointly.
struct BiphotonGrid {
    // angular/spectral factor, row-major [i_theta * n_omega_s + i_omega_s]
    std::vector<double> theta;           // n_theta midpoints
    std::vector<double> omega_s;         // n_theta * n_omega_s midpoints
    std::vector<double> weight_2d;       // quadrature weights dθ·dωs
    std::vector<double> density_2d;      // |f(ωs, θ)|², ≥ 0
    int n_theta = 0;
    int n_omega_s = 0;

    // pump factor
    std::vector<double> omega_p;         // n_omega_p midpoints
    std::vector<double> weight_p;        // dωp
    std::vector<double> density_p;       // |A(ωp)|²

    double theta_at(int it) const { return theta[it]; }
    double omega_s_at(int it, int iw) const { return omega_s[it * n_omega_s + iw]; }
    // combined quadrature mass of one (θ, ωs) node
    double mass_2d(int it, int iw) const {
        const int k = it * n_omega_s + iw;
        return weight_2d[k] * density_2d[k];
    }
    double mass_p(int ip) const { return weight_p[ip] * density_p[ip]; }

    // Σ weights·density over the full 3D grid (should be 1)
    double total_mass() const;
};

BiphotonGrid build_grid(const PhysicalConfig& cfg, const GridResolution& res);
BiphotonGrid build_grid(const PhysicalConfig& cfg);  // resolution from the config

// Debug export: "theta,omega_s,weight,density" rows for the angular factor.
std::string grid_to_csv(const BiphotonGrid& grid);

}  // namespace pesim
