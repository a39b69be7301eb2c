#include "pesim/grid.hpp"

#include <cmath>
#include <sstream>

#include "pesim/config.hpp"
#include "pesim/errors.hpp"

namespace pesim {

namespace {

// compensated (Kahan) summation so reductions stay accurate and
// order-stable at the 1e-12 level
struct Accumulator {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double BiphotonGrid::total_mass() const {
    Accumulator a2, ap;
    for (std::size_t k = 0; k < weight_2d.size(); ++k) a2.add(weight_2d[k] * density_2d[k]);
    for (std::size_t k = 0; k < weight_p.size(); ++k) ap.add(weight_p[k] * density_p[k]);
    return a2.sum * ap.sum;
}

BiphotonGrid build_grid(const PhysicalConfig& cfg, const GridResolution& res) {
    if (res.n_theta < 8 || res.n_omega_s < 8 || res.n_omega_p < 8)
        throw UsageError("build_grid: resolutions must be >= 8");
    if (cfg.gamma_rad_s == 0.0)
        throw ConfigError("build_grid: gamma = 0 gives a zero-measure domain");

    BiphotonGrid g;
    g.n_theta = res.n_theta;
    g.n_omega_s = res.n_omega_s;

    const double half = cfg.angular_acceptance_rad / 2.0;
    const double dtheta = cfg.angular_acceptance_rad / res.n_theta;
    g.theta.resize(res.n_theta);
    for (int i = 0; i < res.n_theta; ++i) g.theta[i] = -half + (i + 0.5) * dtheta;

    const std::size_t n2 = static_cast<std::size_t>(res.n_theta) * res.n_omega_s;
    g.omega_s.resize(n2);
    g.weight_2d.resize(n2);
    g.density_2d.resize(n2);

    const double inv_gamma = 1.0 / cfg.gamma_rad_s;
    const double sigma_s = cfg.spectral_sigma_rad_s;
    Accumulator mass2;
    for (int i = 0; i < res.n_theta; ++i) {
        const double th = g.theta[i];
        // Eq-domain limits: ωs in [ (θ-Δθ/2)/γ, (θ+Δθ/2)/γ ]
        const double w_lo = (th - half) * inv_gamma;
        const double w_hi = (th + half) * inv_gamma;
        const double lo = std::min(w_lo, w_hi);
        const double hi = std::max(w_lo, w_hi);
        const double dws = (hi - lo) / res.n_omega_s;
        for (int j = 0; j < res.n_omega_s; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * res.n_omega_s + j;
            const double ws = lo + (j + 0.5) * dws;
            g.omega_s[k] = ws;
            g.weight_2d[k] = dtheta * dws;
            double dens = 1.0;  // uniform over the wedge by default
            if (sigma_s > 0.0) dens = std::exp(-ws * ws / (2.0 * sigma_s * sigma_s));
            g.density_2d[k] = dens;
            mass2.add(g.weight_2d[k] * dens);
        }
    }
    const double inv2 = 1.0 / mass2.sum;
    for (auto& d : g.density_2d) d *= inv2;

    const double sp = cfg.pump_sigma_rad_s;
    const double span = 8.0 * sp;
    const double dwp = 2.0 * span / res.n_omega_p;
    g.omega_p.resize(res.n_omega_p);
    g.weight_p.resize(res.n_omega_p);
    g.density_p.resize(res.n_omega_p);
    Accumulator massp;
    for (int i = 0; i < res.n_omega_p; ++i) {
        const double wp = -span + (i + 0.5) * dwp;
        g.omega_p[i] = wp;
        g.weight_p[i] = dwp;
        g.density_p[i] = std::exp(-wp * wp / (2.0 * sp * sp));
        massp.add(g.weight_p[i] * g.density_p[i]);
    }
    const double invp = 1.0 / massp.sum;
    for (auto& d : g.density_p) d *= invp;

    return g;
}

BiphotonGrid build_grid(const PhysicalConfig& cfg) {
    return build_grid(cfg, {cfg.grid_n_theta, cfg.grid_n_omega_s, cfg.grid_n_omega_p});
}

std::string grid_to_csv(const BiphotonGrid& grid) {
    std::ostringstream os;
    os.precision(17);
    os << "theta_rad,omega_s_rad_s,weight,density\n";
    for (int i = 0; i < grid.n_theta; ++i)
        for (int j = 0; j < grid.n_omega_s; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * grid.n_omega_s + j;
            os << grid.theta[i] << ',' << grid.omega_s[k] << ',' << grid.weight_2d[k] << ','
               << grid.density_2d[k] << '\n';
        }
    return os.str();
}

}  // namespace pesim
