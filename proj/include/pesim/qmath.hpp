#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace pesim {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Global qubit ordering used by every module: polarization-signal,
// polarization-idler, momentum-signal, momentum-idler. The first tensor
// factor is the most significant index. |0> = |H>, |1> = |V>.

// ---------------------------------------------------------------------------
// Pure state.
struct Ket {
    Vec amplitudes;

    Ket() = default;
    explicit Ket(Vec a) : amplitudes(std::move(a)) {}

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
    bool normalized(double tol = 1e-12) const;

    static Ket basis(int dim, int index);
};

// General linear operator (gates, projectors, dual-basis elements).
struct Operator {
    Mat entries;

    Operator() = default;
    explicit Operator(Mat m) : entries(std::move(m)) {}

    int dim() const { return static_cast<int>(entries.rows()); }
    static Operator identity(int dim);

    // P = P† and P² = P within tol
    bool is_projector(double tol = 1e-12) const;
};

// Hermitian, unit-trace, positive-semidefinite matrix. validate() enforces
// the invariants (Hermitian to 1e-12, trace 1 ± 1e-10, eigenvalues ≥ -1e-10).
struct DensityMatrix {
    Mat entries;

    DensityMatrix() = default;
    explicit DensityMatrix(Mat m) : entries(std::move(m)) {}

    int dim() const { return static_cast<int>(entries.rows()); }
    void validate() const;

    static DensityMatrix from_ket(const Ket& psi);
    static DensityMatrix maximally_mixed(int dim);
};

// ---------------------------------------------------------------------------
// Tensor products (Kronecker; first argument = most significant index).
Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Traces out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions in tensor order; their product must equal dim(rho). Kept
// subsystems stay in their original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// <psi|rho|psi>. The target must be normalized; the imaginary residue is
// checked against 1e-12 and discarded.
double fidelity(const DensityMatrix& rho, const Ket& target);

// ---------------------------------------------------------------------------
// Named target states.
//
//   bell_phi+   (|00> + |11>)/√2
//   bell_phi-   (|00> - |11>)/√2
//   c3          (|Φ+>|0> - |Φ->|1>)/√2, qubits (pol_s, pol_i, mom_s)
//   delta+ / delta-   (|00> ± e^{∓i φt}|11>)/√2, takes {phi_t}
//   xi4         4-qubit state from the controlled-phase construction with
//               φ0s = -φ0i and φ1i = π - φ1s; takes {phi_0i, phi_1s}
Ket target_state(const std::string& name, const std::vector<double>& params = {});

Ket bell_phi_plus();
Ket bell_phi_minus();
Ket c3_state();
Ket delta_state(int sign, double phi_t);
Ket xi4_state(double phi_0i, double phi_1s);

// ---------------------------------------------------------------------------
// Serialization. CSV is row-major with each entry written as "re,im", so a
// d×d matrix has d lines of 2d comma-separated numbers. JSON is
// {"dim": d, "entries": [[re, im], ...]} in row-major order.
std::string density_to_csv(const DensityMatrix& rho);
DensityMatrix density_from_csv(const std::string& text);
std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text);

}  // namespace pesim
