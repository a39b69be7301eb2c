#include "pesim/qmath.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pesim/errors.hpp"

namespace pesim {

namespace {
constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

bool Ket::normalized(double tol) const {
    return std::abs(amplitudes.squaredNorm() - 1.0) < tol;
}

Ket Ket::basis(int dim, int index) {
    if (dim <= 0 || index < 0 || index >= dim) throw UsageError("Ket::basis: index out of range");
    Vec v = Vec::Zero(dim);
    v(index) = 1.0;
    return Ket(std::move(v));
}

Operator Operator::identity(int dim) {
    return Operator(Mat::Identity(dim, dim));
}

bool Operator::is_projector(double tol) const {
    const Mat& p = entries;
    return (p - p.adjoint()).cwiseAbs().maxCoeff() < tol &&
           (p * p - p).cwiseAbs().maxCoeff() < tol;
}

void DensityMatrix::validate() const {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw UsageError("DensityMatrix: not square");
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
        throw UsageError("DensityMatrix: not Hermitian (max deviation " + std::to_string(herm) + ")");
    const double tr = entries.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw UsageError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw UsageError("DensityMatrix: negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi) {
    if (!psi.normalized(1e-10)) throw UsageError("from_ket: ket not normalized");
    return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

Ket tensor(const Ket& a, const Ket& b) {
    const int da = a.dim(), db = b.dim();
    Vec out(da * db);
    for (int i = 0; i < da; ++i)
        out.segment(i * db, db) = a.amplitudes(i) * b.amplitudes;
    return Ket(std::move(out));
}

namespace {
Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}
}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
    return Operator(kron(a.entries, b.entries));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.entries, b.entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    int total = 1;
    for (int d : dims) {
        if (d <= 0) throw UsageError("partial_trace: nonpositive subsystem dimension");
        total *= d;
    }
    if (total != rho.dim()) throw UsageError("partial_trace: subsystem dims do not match rho");
    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw UsageError("partial_trace: keep index out of range");
        kept[k] = true;
    }

    int dkeep = 1, dtrace = 1;
    for (int i = 0; i < n; ++i) (kept[i] ? dkeep : dtrace) *= dims[i];

    // strides of each subsystem in the flat index
    std::vector<int> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    std::vector<int> keep_idx, trace_idx;
    for (int i = 0; i < n; ++i) (kept[i] ? keep_idx : trace_idx).push_back(i);

    // flat offset of the j-th basis state of the kept (resp. traced) group
    auto offsets = [&](const std::vector<int>& subs) {
        int d = 1;
        for (int s : subs) d *= dims[s];
        std::vector<int> off(d, 0);
        for (int j = 0; j < d; ++j) {
            int rem = j;
            for (int t = static_cast<int>(subs.size()) - 1; t >= 0; --t) {
                const int s = subs[t];
                off[j] += (rem % dims[s]) * stride[s];
                rem /= dims[s];
            }
        }
        return off;
    };
    const std::vector<int> koff = offsets(keep_idx);
    const std::vector<int> toff = offsets(trace_idx);

    Mat out = Mat::Zero(dkeep, dkeep);
    for (int i = 0; i < dkeep; ++i)
        for (int j = 0; j < dkeep; ++j) {
            Complex sum = 0.0;
            for (int t = 0; t < dtrace; ++t)
                sum += rho.entries(koff[i] + toff[t], koff[j] + toff[t]);
            out(i, j) = sum;
        }
    return DensityMatrix(std::move(out));
}

double fidelity(const DensityMatrix& rho, const Ket& target) {
    if (rho.dim() != target.dim()) throw UsageError("fidelity: dimension mismatch");
    if (!target.normalized()) throw UsageError("fidelity: target ket not normalized");
    const Complex f = target.amplitudes.adjoint() * rho.entries * target.amplitudes;
    if (std::abs(f.imag()) > 1e-12)
        throw UsageError("fidelity: imaginary residue " + std::to_string(f.imag()));
    return f.real();
}

Ket bell_phi_plus() {
    Vec v = Vec::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = kInvSqrt2;
    return Ket(std::move(v));
}

Ket bell_phi_minus() {
    Vec v = Vec::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = -kInvSqrt2;
    return Ket(std::move(v));
}

Ket c3_state() {
    // (|Φ+>|0> - |Φ->|1>)/√2 over (pol_s, pol_i, mom_s)
    Ket plus = tensor(bell_phi_plus(), Ket::basis(2, 0));
    Ket minus = tensor(bell_phi_minus(), Ket::basis(2, 1));
    return Ket(kInvSqrt2 * (plus.amplitudes - minus.amplitudes));
}

Ket delta_state(int sign, double phi_t) {
    if (sign != +1 && sign != -1) throw UsageError("delta_state: sign must be ±1");
    Vec v = Vec::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = static_cast<double>(sign) * std::exp(-kI * (static_cast<double>(sign) * phi_t)) *
           kInvSqrt2;
    return Ket(std::move(v));
}

Ket xi4_state(double phi_0i, double phi_1s) {
    // Controlled-phase construction: the SLM sector phases act on the |HH>
    // branch only, so branch (n, m) of momentum carries e^{i(φ_ns + φ_mi)}
    // on |HH>. With φ0s = -φ0i and φ1i = π - φ1s and φt = φ0i + φ1s the four
    // momentum branches read Φ+, e^{i(π-φt)}-shifted Δ, e^{iφt} Δ, -Φ-.
    const double phi_0s = -phi_0i;
    const double phi_1i = M_PI - phi_1s;
    const double sig[2][2] = {{phi_0s + phi_0i, phi_0s + phi_1i},
                              {phi_1s + phi_0i, phi_1s + phi_1i}};
    Vec v = Vec::Zero(16);
    // index = pol_s*8 + pol_i*4 + mom_s*2 + mom_i
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
            const int mom = n * 2 + m;
            v(0 * 8 + 0 * 4 + mom) = 0.25 * std::exp(kI * sig[n][m]);  // |HH>
            v(1 * 8 + 1 * 4 + mom) = 0.25;                             // |VV>
        }
    Vec scaled = v * std::sqrt(2.0);  // each branch (e^{iσ}|00>+|11>)/√2 with weight 1/2
    return Ket(std::move(scaled));
}

Ket target_state(const std::string& name, const std::vector<double>& params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw UsageError("target_state: '" + name + "' expects " + std::to_string(n) +
                             " parameter(s)");
    };
    if (name == "bell_phi+") {
        need(0);
        return bell_phi_plus();
    }
    if (name == "bell_phi-") {
        need(0);
        return bell_phi_minus();
    }
    if (name == "c3") {
        need(0);
        return c3_state();
    }
    if (name == "delta+") {
        need(1);
        return delta_state(+1, params[0]);
    }
    if (name == "delta-") {
        need(1);
        return delta_state(-1, params[0]);
    }
    if (name == "xi4") {
        need(2);
        return xi4_state(params[0], params[1]);
    }
    throw UsageError("target_state: unknown state '" + name + "'");
}

std::string density_to_csv(const DensityMatrix& rho) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            if (j) os << ',';
            os << rho.entries(i, j).real() << ',' << rho.entries(i, j).imag();
        }
        os << '\n';
    }
    return os.str();
}

DensityMatrix density_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        rows.push_back(std::move(vals));
    }
    const int d = static_cast<int>(rows.size());
    if (d == 0) throw UsageError("density_from_csv: empty input");
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
        if (rows[i].size() != static_cast<std::size_t>(2 * d))
            throw UsageError("density_from_csv: row " + std::to_string(i + 1) +
                             " has wrong number of values");
        for (int j = 0; j < d; ++j) m(i, j) = Complex(rows[i][2 * j], rows[i][2 * j + 1]);
    }
    return DensityMatrix(std::move(m));
}

std::string density_to_json(const DensityMatrix& rho) {
    nlohmann::json j;
    j["dim"] = rho.dim();
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < rho.dim(); ++i)
        for (int k = 0; k < rho.dim(); ++k)
            entries.push_back({rho.entries(i, k).real(), rho.entries(i, k).imag()});
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

DensityMatrix density_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int d = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != d * d)
        throw UsageError("density_from_json: entries size does not match dim");
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const auto& e = entries[i * d + k];
            m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return DensityMatrix(std::move(m));
}

}  // namespace pesim
