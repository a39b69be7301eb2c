#include "pesim/bench.hpp"

#include <cmath>
#include <sstream>

#include "pesim/config.hpp"
#include "pesim/errors.hpp"
#include "pesim/jones.hpp"
#include "pesim/rng.hpp"
#include "pesim/spdc_model.hpp"

namespace pesim {

namespace {

constexpr double kDeg = M_PI / 180.0;

std::optional<double> to_rad(std::optional<double> deg) {
    if (!deg) return std::nullopt;
    return *deg * kDeg;
}

Eigen::Vector2cd arm_ket(const ArmSetting& arm) {
    return analyzer_ket(to_rad(arm.qwp_deg), to_rad(arm.hwp_deg), arm.polarizer_deg * kDeg);
}

}  // namespace

Operator projector(const MeasurementSetting& setting) {
    const Eigen::Vector2cd ms = arm_ket(setting.signal);
    const Eigen::Vector2cd mi = arm_ket(setting.idler);
    Eigen::Vector4cd m;
    m << ms(0) * mi(0), ms(0) * mi(1), ms(1) * mi(0), ms(1) * mi(1);
    return Operator(m * m.adjoint());
}

double coincidence_rate(const DensityMatrix& state, const MeasurementSetting& setting,
                        int n_signal, int n_idler) {
    const int nm = n_signal * n_idler;
    if (state.dim() != 4 * nm)
        throw UsageError("coincidence_rate: state dimension " + std::to_string(state.dim()) +
                         " does not match 4*N*M = " + std::to_string(4 * nm));
    if (setting.signal_sector && (*setting.signal_sector < 0 || *setting.signal_sector >= n_signal))
        throw UsageError("coincidence_rate: sector index out of range");

    const Operator pol = projector(setting);
    Complex tr = 0.0;
    // Tr[rho (P ⊗ Π)] without forming the Kronecker product
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
            if (pol.entries(q, p) == Complex(0.0)) continue;
            Complex block = 0.0;
            for (int n = 0; n < n_signal; ++n) {
                if (setting.signal_sector && n != *setting.signal_sector) continue;
                for (int m = 0; m < n_idler; ++m) {
                    const int k = n * n_idler + m;
                    block += state.entries(p * nm + k, q * nm + k);
                }
            }
            tr += pol.entries(q, p) * block;
        }
    if (std::abs(tr.imag()) > 1e-10)
        throw UsageError("coincidence_rate: non-real trace " + std::to_string(tr.imag()));
    double rate = setting.rate_scale_cps * tr.real() + setting.background_cps;
    if (rate < -1e-12)
        throw UsageError("coincidence_rate: negative rate " + std::to_string(rate));
    return rate < 0.0 ? 0.0 : rate;
}

CountRecord sample_counts(double rate, double window_s, std::uint64_t seed) {
    if (rate < 0.0) throw UsageError("sample_counts: negative rate");
    if (window_s <= 0.0) throw UsageError("sample_counts: window must be positive");
    Rng rng(seed);
    CountRecord rec;
    rec.setting.window_s = window_s;
    rec.expected_rate = rate;
    rec.counts = rng.poisson(rate * window_s);
    return rec;
}

namespace {

MeasurementSetting purification_setting(const PhysicalConfig& cfg) {
    MeasurementSetting s;
    s.signal.polarizer_deg = 45.0;
    s.idler.polarizer_deg = -45.0;
    s.window_s = cfg.scan_window_s;
    s.rate_scale_cps = cfg.rate_scale_cps;
    s.background_cps = cfg.background_cps;
    s.label = "45/-45";
    return s;
}

MaskParams apply_parameter(const MaskParams& base, ScanParameter p, double value) {
    MaskParams out = base;
    switch (p) {
        case ScanParameter::b1: out.b1 = value; break;
        case ScanParameter::b2: out.b2 = value; break;
        case ScanParameter::a_pair:
            out.a1 = value;
            out.a2 = -value;
            break;
    }
    return out;
}

double rate_at(const PhysicalConfig& cfg, const BiphotonGrid& grid, const MaskParams& p,
               const MeasurementSetting& setting) {
    const PhaseMask mask = linear_mask(cfg, p.a1, p.b1, p.a2, p.b2);
    const DensityMatrix state = synthesize_state(cfg, mask, SectorConfig::trivial(cfg), grid);
    return coincidence_rate(state, setting);
}

}  // namespace

std::vector<ScanPoint> scan(const PhysicalConfig& cfg, const BiphotonGrid& grid,
                            ScanParameter parameter, double lo, double hi, int steps,
                            const MaskParams& base, double window_s, std::uint64_t seed) {
    if (steps < 3) throw UsageError("scan: needs at least 3 steps");
    if (!(hi > lo)) throw UsageError("scan: empty parameter range");
    if (parameter == ScanParameter::a_pair) {
        // the steepest ramp must stay on the device across the acceptance
        const double span_px = cfg.pixels_per_rad() * cfg.angular_acceptance_rad;
        if (std::max(std::abs(lo), std::abs(hi)) * span_px > 1e6)
            throw UsageError("scan: slope range beyond mask capability");
    }
    MeasurementSetting setting = purification_setting(cfg);
    setting.window_s = window_s;

    std::vector<ScanPoint> out;
    out.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double value = lo + (hi - lo) * k / (steps - 1);
        const MaskParams p = apply_parameter(base, parameter, value);
        ScanPoint pt;
        pt.value = value;
        pt.rate = rate_at(cfg, grid, p, setting);
        pt.counts = sample_counts(pt.rate, window_s, derive_seed(seed, k)).counts;
        pt.window_s = window_s;
        out.push_back(pt);
    }
    return out;
}

std::string scan_to_csv(const std::vector<ScanPoint>& points, const std::string& name) {
    std::ostringstream os;
    os.precision(17);
    os << name << ",analytic_rate_cps,sampled_counts,window_s\n";
    for (const auto& p : points)
        os << p.value << ',' << p.rate << ',' << p.counts << ',' << p.window_s << '\n';
    return os.str();
}

OptimizeResult optimize_mask(const PhysicalConfig& cfg, const BiphotonGrid& grid,
                             const MaskParams& init, const OptimizeSpec& spec) {
    if (!(spec.b_hi > spec.b_lo) || !(spec.a_hi > spec.a_lo))
        throw UsageError("optimize_mask: empty search interval");
    if (spec.b_steps < 3 || spec.a_steps < 3) throw UsageError("optimize_mask: too few steps");

    MeasurementSetting setting = purification_setting(cfg);
    setting.window_s = spec.window_s;

    int evals = 0;
    std::uint64_t stream = 0;
    auto objective = [&](const MaskParams& p) {
        ++evals;
        const double rate = rate_at(cfg, grid, p, setting);
        if (!spec.use_counts) return rate;
        return static_cast<double>(
            sample_counts(rate, spec.window_s, derive_seed(spec.seed, stream++)).counts);
    };

    auto line_min = [&](const MaskParams& base, ScanParameter par, double lo, double hi,
                        int steps) {
        double best_val = 0.0, best_obj = 0.0;
        for (int k = 0; k < steps; ++k) {
            const double v = lo + (hi - lo) * k / (steps - 1);
            const double obj = objective(apply_parameter(base, par, v));
            if (k == 0 || obj < best_obj) {
                best_obj = obj;
                best_val = v;
            }
        }
        return apply_parameter(base, par, best_val);
    };

    MaskParams current = init;
    const int passes = 1 + std::max(0, spec.refinement_passes);
    for (int pass = 0; pass < passes; ++pass) {
        current = line_min(current, ScanParameter::b1, spec.b_lo, spec.b_hi, spec.b_steps);
        current = line_min(current, ScanParameter::a_pair, spec.a_lo, spec.a_hi, spec.a_steps);
    }

    OptimizeResult result;
    result.params = current;
    result.rate = rate_at(cfg, grid, current, setting);
    result.evaluations = evals;
    // never hand back something worse than the starting point (noise-free)
    const double init_rate = rate_at(cfg, grid, init, setting);
    if (result.rate > init_rate) {
        result.params = init;
        result.rate = init_rate;
    }
    return result;
}

double visibility_measurement(const DensityMatrix& pol_state) {
    if (pol_state.dim() != 4) throw UsageError("visibility_measurement: expects a 4x4 state");
    // conditional idler operator given the signal analyzer at +45°
    const Eigen::Vector2cd plus = polarizer_ket(45.0 * kDeg);
    Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    cond(i, j) += std::conj(plus(a)) * plus(b) *
                                  pol_state.entries(a * 2 + i, b * 2 + j);

    // six cardinal analyzer states pin the Bloch vector of the conditional
    // operator, i.e. the extremal rates over every plate setting
    const double rH = cond(0, 0).real();
    const double rV = cond(1, 1).real();
    const double tr = rH + rV;
    if (tr < 1e-15) throw UsageError("visibility_measurement: all rates vanish");
    const double vx = 2.0 * cond(0, 1).real();
    const double vy = -2.0 * cond(0, 1).imag();
    const double vz = rH - rV;
    const double v = std::sqrt(vx * vx + vy * vy + vz * vz);
    return v / tr;  // (Cmax - Cmin)/(Cmax + Cmin)
}

std::vector<ScanPoint> visibility_fringe(const DensityMatrix& pol_state, int steps,
                                         double rate_scale) {
    if (steps < 4) throw UsageError("visibility_fringe: too few steps");
    std::vector<ScanPoint> out;
    out.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double alpha2 = 360.0 * k / steps;
        MeasurementSetting s;
        s.signal.polarizer_deg = 45.0;
        s.idler.polarizer_deg = alpha2;
        s.rate_scale_cps = rate_scale;
        ScanPoint pt;
        pt.value = alpha2;
        pt.rate = coincidence_rate(pol_state, s);
        out.push_back(pt);
    }
    return out;
}

}  // namespace pesim
