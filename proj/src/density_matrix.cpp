#include "qaco/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qaco {

namespace {

// Strided view over one row or column of the matrix, so the statevector
// gate kernels serve both sides of the conjugation.
struct VecView {
    cplx* data;
    std::size_t dim;
    std::size_t stride;

    cplx& at(std::size_t k) { return data[k * stride]; }
};

void check_wires(const GateOp& op, int n) {
    const auto bad = [n](int q) { return q < 0 || q >= n; };
    switch (op.kind) {
    case GateOp::Kind::Ry:
    case GateOp::Kind::X:
        if (bad(op.q0)) throw std::out_of_range("DensityMatrix: qubit index out of range");
        break;
    case GateOp::Kind::Cnot:
        if (bad(op.q0) || bad(op.q1))
            throw std::out_of_range("DensityMatrix: qubit index out of range");
        if (op.q0 == op.q1)
            throw std::invalid_argument("DensityMatrix: CNOT control and target collide");
        break;
    case GateOp::Kind::Cswap:
        if (bad(op.q0) || bad(op.q1) || bad(op.q2))
            throw std::out_of_range("DensityMatrix: qubit index out of range");
        if (op.q0 == op.q1 || op.q0 == op.q2 || op.q1 == op.q2)
            throw std::invalid_argument("DensityMatrix: CSWAP wires collide");
        break;
    }
}

void apply_gate_to_view(VecView v, const GateOp& op, int n) {
    const auto mask_of = [n](int q) { return std::size_t{1} << (n - 1 - q); };
    switch (op.kind) {
    case GateOp::Kind::Ry: {
        double c = std::cos(op.angle / 2.0);
        double s = std::sin(op.angle / 2.0);
        const std::size_t m = mask_of(op.q0);
        for (std::size_t k = 0; k < v.dim; ++k) {
            if (k & m) continue;
            const cplx a0 = v.at(k);
            const cplx a1 = v.at(k | m);
            v.at(k) = c * a0 - s * a1;
            v.at(k | m) = s * a0 + c * a1;
        }
        break;
    }
    case GateOp::Kind::X: {
        const std::size_t m = mask_of(op.q0);
        for (std::size_t k = 0; k < v.dim; ++k)
            if (!(k & m)) std::swap(v.at(k), v.at(k | m));
        break;
    }
    case GateOp::Kind::Cnot: {
        const std::size_t mc = mask_of(op.q0);
        const std::size_t mt = mask_of(op.q1);
        for (std::size_t k = 0; k < v.dim; ++k)
            if ((k & mc) && !(k & mt)) std::swap(v.at(k), v.at(k | mt));
        break;
    }
    case GateOp::Kind::Cswap: {
        const std::size_t mc = mask_of(op.q0);
        const std::size_t m1 = mask_of(op.q1);
        const std::size_t m2 = mask_of(op.q2);
        for (std::size_t k = 0; k < v.dim; ++k)
            if ((k & mc) && (k & m1) && !(k & m2)) std::swap(v.at(k), v.at((k ^ m1) | m2));
        break;
    }
    }
}

} // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("DensityMatrix: qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    dim_ = std::size_t{1} << n_qubits;
    rho_.assign(dim_ * dim_, cplx{0.0, 0.0});
    rho_[0] = cplx{1.0, 0.0};
}

DensityMatrix DensityMatrix::from_statevector(const StateVector& psi) {
    DensityMatrix dm(psi.num_qubits());
    const auto& a = psi.amplitudes();
    for (std::size_t r = 0; r < dm.dim_; ++r)
        for (std::size_t c = 0; c < dm.dim_; ++c)
            dm.rho_[r * dm.dim_ + c] = a[r] * std::conj(a[c]);
    return dm;
}

DensityMatrix DensityMatrix::from_entries(int n_qubits, std::vector<cplx> entries) {
    DensityMatrix dm(n_qubits);
    if (entries.size() != dm.dim_ * dm.dim_)
        throw std::invalid_argument("DensityMatrix: entry count does not match dimension");
    dm.rho_ = std::move(entries);
    return dm;
}

void DensityMatrix::apply_to_columns(const GateOp& op) {
    for (std::size_t col = 0; col < dim_; ++col)
        apply_gate_to_view({rho_.data() + col, dim_, dim_}, op, n_);
}

void DensityMatrix::apply_to_rows_conjugate(const GateOp& op) {
    for (std::size_t row = 0; row < dim_; ++row)
        apply_gate_to_view({rho_.data() + row * dim_, dim_, 1}, op, n_);
}

void DensityMatrix::apply(const GateOp& op) {
    check_wires(op, n_);
    // U rho U^dagger: apply U down the columns, then conj(U) along the rows.
    // Every supported gate is real, so the row pass reuses the same kernel.
    apply_to_columns(op);
    apply_to_rows_conjugate(op);
}

void DensityMatrix::reset_qubit(int qubit) {
    if (qubit < 0 || qubit >= n_)
        throw std::out_of_range("DensityMatrix: qubit index out of range");
    const std::size_t m = std::size_t{1} << (n_ - 1 - qubit);
    std::vector<cplx> out(dim_ * dim_, cplx{0.0, 0.0});
    // |0><0|_q (x) Tr_q(rho): sum both diagonal blocks of the traced qubit
    // into the zero block.
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            if ((r & m) != (c & m)) continue;  // off-diagonal in the traced qubit
            out[(r & ~m) * dim_ + (c & ~m)] += rho_[r * dim_ + c];
        }
    }
    rho_ = std::move(out);
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t k = 0; k < dim_; ++k) d[k] = rho_[k * dim_ + k].real();
    return d;
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) t += rho_[k * dim_ + k].real();
    return t;
}

double DensityMatrix::max_hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
            worst = std::max(worst, std::abs(rho_[r * dim_ + c] - std::conj(rho_[c * dim_ + r])));
    return worst;
}

DensityMatrix dm_run_reset_circuit(int n_ant, double beta, const ExplorationPlan& plan,
                                   const std::vector<double>& initial_angles) {
    if (n_ant < 1 || n_ant > 6)
        throw std::invalid_argument("dm_run_reset_circuit: intended for 1..6 ant qubits, got " +
                                    std::to_string(n_ant));
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("dm_run_reset_circuit: beta must lie in [0, 1]");
    if (static_cast<int>(initial_angles.size()) != n_ant)
        throw std::invalid_argument("dm_run_reset_circuit: need one initial angle per ant qubit");

    // Wire layout: ants 0..n_ant-1, exploration control wire n_ant.
    const int ctrl = n_ant;
    DensityMatrix rho(n_ant + 1);
    for (int i = 0; i < n_ant; ++i) rho.apply_ry(i, initial_angles[static_cast<std::size_t>(i)]);

    const double theta_e = 2.0 * std::asin(std::sqrt(beta));
    for (const ExplorationGate& g : plan) {
        rho.apply_ry(ctrl, theta_e);
        if (g.kind == ExplorationGate::Kind::FlipTarget)
            rho.apply(GateOp::cnot(ctrl, g.a));
        else
            rho.apply(GateOp::cswap(ctrl, g.a, g.b));
        rho.reset_qubit(ctrl);
    }

    // Trace out the control wire (it sits in |0> after the final reset).
    // With qubit 0 as MSB the control is the least significant bit, so ant
    // basis index r maps to full-register indices 2r and 2r+1.
    const std::size_t ant_dim = std::size_t{1} << n_ant;
    std::vector<cplx> reduced(ant_dim * ant_dim);
    for (std::size_t r = 0; r < ant_dim; ++r)
        for (std::size_t c = 0; c < ant_dim; ++c)
            reduced[r * ant_dim + c] =
                rho.entry(r << 1, c << 1) + rho.entry((r << 1) | 1, (c << 1) | 1);
    return DensityMatrix::from_entries(n_ant, std::move(reduced));
}

} // namespace qaco
