#pragma once

#include <complex>
#include <vector>

#include "pesim/grid.hpp"
#include "pesim/qmath.hpp"
#include "pesim/sectors.hpp"
#include "pesim/slm_mask.hpp"

namespace pesim {

struct PhysicalConfig;

// Relative phase between the |VV> and |HH> branches at one point of the
// domain: φ0 + αLωp + βLωs - δLθ - mask_signal(θ) - mask_idler(θ'), with
// θ' = -θ + γωs and the αLωp term dropped when the pump-path compensation
// crystals are in place.
double phase_at(const PhysicalConfig& cfg, const PhaseMask& mask, double theta, double omega_s,
                double omega_p);

// <e^{iαLωp}> over the pump spectrum (1 when delay-compensated).
Complex pump_coherence(const PhysicalConfig& cfg, const BiphotonGrid& grid);

struct DephasingResult {
    Complex value{0.0, 0.0};  // density-weighted <e^{iφ}>·exp(-rd²/2); |value| = visibility
    bool empty = false;       // sector pair had no grid support
};

// Per-sector-pair weights p_nm (Σ = 1) and coherences D_nm computed in one
// pass over the grid. D excludes any sector offsets present in `mask` only if
// the caller keeps them out of the mask; synthesize_state passes the bare
// purification mask and applies sector phases algebraically.
struct SectorAverages {
    int n_signal = 0;
    int n_idler = 0;
    std::vector<double> weight;     // [n*M + m]
    std::vector<Complex> coherence;  // [n*M + m], includes residual dephasing and pump factor
    double outside_mass = 0.0;       // grid mass not covered by any sector

    double p(int n, int m) const { return weight[n * n_idler + m]; }
    Complex d(int n, int m) const { return coherence[n * n_idler + m]; }
};

SectorAverages sector_averages(const PhysicalConfig& cfg, const PhaseMask& mask,
                               const BiphotonGrid& grid, const SectorConfig& sectors);

// <e^{iφ}> over the sub-domain where the signal angle lies in sector n and
// the idler angle in sector m, times exp(-residual_dephasing²/2). Its modulus
// is the visibility of that sector pair.
DephasingResult dephasing_factor(const PhysicalConfig& cfg, const PhaseMask& mask,
                                 const BiphotonGrid& grid, const SectorConfig& sectors, int n,
                                 int m);

// Whole-domain coherence (single trivial sector).
Complex dephasing_whole(const PhysicalConfig& cfg, const PhaseMask& mask,
                        const BiphotonGrid& grid);

// Polarization ⊗ momentum state after the SLM: dimension 4·N·M, basis index
// ((pol_s·2 + pol_i)·N + n)·M + m. Support lies on the HH and VV polarization
// branches. Sector weights come from the grid density, within-block H/V
// coherence from dephasing_factor, the HH branch carries e^{i(φ_ns + φ_mi)},
// and cross-sector momentum coherences are √(p·p') scaled by
// cfg.momentum_coherence (1 = pure momentum qudit state). `mask` is the
// purification mask without sector offsets.
DensityMatrix synthesize_state(const PhysicalConfig& cfg, const PhaseMask& mask,
                               const SectorConfig& sectors, const BiphotonGrid& grid);

// Conditional polarization state after slit-selecting signal sector n:
// project the momentum-signal qudit on |n>, trace momentum, renormalize.
// Returns the 4×4 state and the selection probability.
std::pair<DensityMatrix, double> slit_select(const DensityMatrix& state, int n_signal, int n_idler,
                                             int sector);

}  // namespace pesim
