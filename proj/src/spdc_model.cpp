#include "pesim/spdc_model.hpp"

#include <cmath>

#include "pesim/config.hpp"
#include "pesim/errors.hpp"

namespace pesim {

namespace {

constexpr Complex kI{0.0, 1.0};

struct ComplexAccumulator {
    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
    void add(Complex z) {
        double y = z.real() - re_c;
        double t = re + y;
        re_c = (t - re) - y;
        re = t;
        y = z.imag() - im_c;
        t = im + y;
        im_c = (t - im) - y;
        im = t;
    }
    Complex value() const { return {re, im}; }
};

}  // namespace

double phase_at(const PhysicalConfig& cfg, const PhaseMask& mask, double theta, double omega_s,
                double omega_p) {
    const double L = cfg.crystal_length_mm;
    const double theta_prime = -theta + cfg.gamma_rad_s * omega_s;
    double phi = cfg.phi0_rad + cfg.beta_rad_s_per_mm * L * omega_s -
                 cfg.delta_effective() * L * theta;
    if (!cfg.delay_compensated) phi += cfg.alpha_rad_s_per_mm * L * omega_p;
    phi -= mask_phase(cfg, mask, Arm::signal, theta);
    phi -= mask_phase(cfg, mask, Arm::idler, theta_prime);
    return phi;
}

Complex pump_coherence(const PhysicalConfig& cfg, const BiphotonGrid& grid) {
    if (cfg.delay_compensated) return {1.0, 0.0};
    const double aL = cfg.alpha_rad_s_per_mm * cfg.crystal_length_mm;
    ComplexAccumulator acc;
    for (std::size_t k = 0; k < grid.omega_p.size(); ++k)
        acc.add(grid.mass_p(static_cast<int>(k)) * std::exp(kI * (aL * grid.omega_p[k])));
    return acc.value();
}

SectorAverages sector_averages(const PhysicalConfig& cfg, const PhaseMask& mask,
                               const BiphotonGrid& grid, const SectorConfig& sectors) {
    sectors.validate(cfg);
    const int N = sectors.signal_count();
    const int M = sectors.idler_count();

    SectorAverages out;
    out.n_signal = N;
    out.n_idler = M;
    out.weight.assign(static_cast<std::size_t>(N) * M, 0.0);
    out.coherence.assign(static_cast<std::size_t>(N) * M, Complex{0.0, 0.0});

    std::vector<ComplexAccumulator> coh(static_cast<std::size_t>(N) * M);
    std::vector<double> wsum(static_cast<std::size_t>(N) * M, 0.0);
    std::vector<double> wsum_c(static_cast<std::size_t>(N) * M, 0.0);
    double outside = 0.0, outside_c = 0.0;

    // αLωp factors out of the (θ, ωs) integral; fold it in at the end
    const Complex pump = pump_coherence(cfg, grid);

    for (int it = 0; it < grid.n_theta; ++it) {
        const double th = grid.theta[it];
        const int n = sectors.signal_sector_of(th);
        for (int iw = 0; iw < grid.n_omega_s; ++iw) {
            const double ws = grid.omega_s_at(it, iw);
            const double tp = -th + cfg.gamma_rad_s * ws;
            const int m = sectors.idler_sector_of(tp);
            const double mass = grid.mass_2d(it, iw);
            if (n < 0 || m < 0) {
                const double y = mass - outside_c;
                const double t = outside + y;
                outside_c = (t - outside) - y;
                outside = t;
                continue;
            }
            const std::size_t k = static_cast<std::size_t>(n) * M + m;
            const double phi = phase_at(cfg, mask, th, ws, 0.0);
            coh[k].add(mass * std::exp(kI * phi));
            const double y = mass - wsum_c[k];
            const double t = wsum[k] + y;
            wsum_c[k] = (t - wsum[k]) - y;
            wsum[k] = t;
        }
    }

    const double rd = cfg.residual_dephasing_rad;
    const double rd_factor = std::exp(-rd * rd / 2.0);
    double total = outside;
    for (auto w : wsum) total += w;
    for (std::size_t k = 0; k < wsum.size(); ++k) {
        out.weight[k] = wsum[k] / total;
        out.coherence[k] =
            wsum[k] > 0.0 ? Complex(coh[k].value() / wsum[k] * pump * rd_factor) : Complex{0.0, 0.0};
    }
    out.outside_mass = outside / total;
    return out;
}

DephasingResult dephasing_factor(const PhysicalConfig& cfg, const PhaseMask& mask,
                                 const BiphotonGrid& grid, const SectorConfig& sectors, int n,
                                 int m) {
    if (n < 0 || n >= sectors.signal_count() || m < 0 || m >= sectors.idler_count())
        throw UsageError("dephasing_factor: sector index out of range");
    const SectorAverages avg = sector_averages(cfg, mask, grid, sectors);
    DephasingResult r;
    if (avg.p(n, m) <= 0.0) {
        r.empty = true;
        return r;
    }
    r.value = avg.d(n, m);
    return r;
}

Complex dephasing_whole(const PhysicalConfig& cfg, const PhaseMask& mask,
                        const BiphotonGrid& grid) {
    const SectorConfig trivial = SectorConfig::trivial(cfg);
    return sector_averages(cfg, mask, grid, trivial).d(0, 0);
}

DensityMatrix synthesize_state(const PhysicalConfig& cfg, const PhaseMask& mask,
                               const SectorConfig& sectors, const BiphotonGrid& grid) {
    const int N = sectors.signal_count();
    const int M = sectors.idler_count();
    const int dim = 4 * N * M;
    if (dim > 16)
        throw ConfigError("synthesize_state: 2·2·N·M = " + std::to_string(dim) +
                          " exceeds the supported dimension 16");

    const SectorAverages avg = sector_averages(cfg, mask, grid, sectors);
    const double mc = cfg.momentum_coherence;

    // The state is the phase-ensemble average of
    //   |Ξ(φ)> = Σ_nm √p_nm |nm> ⊗ (e^{iσ_nm}|HH> + e^{iφ_nm}|VV>)/√2
    // with independent per-sector phases, E[e^{iφ_nm}] = D_nm, so it is
    // positive by construction. Cross-sector blocks additionally carry the
    // momentum coherence factor.
    const int NM = N * M;
    Mat rho = Mat::Zero(dim, dim);
    auto idx = [&](int pol, int nm) { return pol * NM + nm; };  // pol: 0 = HH, 3 = VV
    for (int a = 0; a < NM; ++a) {
        const int na = a / M, ma = a % M;
        const double pa = avg.weight[a];
        if (pa <= 0.0) continue;
        const double sig_a = sectors.signal_phases[na] + sectors.idler_phases[ma];
        const Complex ea = std::exp(kI * sig_a);
        const Complex da = avg.coherence[a];
        for (int b = 0; b < NM; ++b) {
            const int nb = b / M, mb = b % M;
            const double pb = avg.weight[b];
            if (pb <= 0.0) continue;
            const double sig_b = sectors.signal_phases[nb] + sectors.idler_phases[mb];
            const Complex eb = std::exp(kI * sig_b);
            const Complex db = avg.coherence[b];
            const double cross = a == b ? 1.0 : mc;
            const double amp = 0.5 * std::sqrt(pa * pb) * cross;
            rho(idx(0, a), idx(0, b)) = amp * ea * std::conj(eb);
            rho(idx(0, a), idx(3, b)) = amp * ea * std::conj(db);
            rho(idx(3, a), idx(0, b)) = amp * da * std::conj(eb);
            rho(idx(3, a), idx(3, b)) = a == b ? Complex(amp) : amp * da * std::conj(db);
        }
    }

    // momentum basis (n, m) is interleaved into the pol ⊗ mom ordering
    // (pol_s, pol_i, mom_s, mom_i); idx above already encodes it since
    // nm = n·M + m and pol spans the two outer qubits
    DensityMatrix out{std::move(rho)};
    out.validate();
    return out;
}

std::pair<DensityMatrix, double> slit_select(const DensityMatrix& state, int n_signal, int n_idler,
                                             int sector) {
    const int dim = state.dim();
    if (dim != 4 * n_signal * n_idler) throw UsageError("slit_select: dimension mismatch");
    if (sector < 0 || sector >= n_signal) throw UsageError("slit_select: sector out of range");
    const int NM = n_signal * n_idler;
    Mat proj = Mat::Zero(dim, dim);
    for (int pol = 0; pol < 4; ++pol)
        for (int m = 0; m < n_idler; ++m) {
            const int k = pol * NM + sector * n_idler + m;
            proj(k, k) = 1.0;
        }
    Mat cut = proj * state.entries * proj;
    const double p = cut.trace().real();
    if (p <= 0.0) throw UsageError("slit_select: selected sector has zero weight");
    DensityMatrix sub{Mat(cut / p)};
    // trace out both momentum qudits
    DensityMatrix pol = partial_trace(sub, {2, 2, n_signal, n_idler}, {0, 1});
    return {pol, p};
}

}  // namespace pesim
