#pragma once

#include <vector>

#include "qaco/statevector.hpp"

namespace qaco {

// Symbolic exploration gate: the target action of one controlled exploration
// step, expressed over ant-qubit indices only. The control wire is supplied
// by whichever backend executes the plan (Monte-Carlo unraveling, explicit
// ancilla reset, density-matrix channel, or the circuit exporter).
struct ExplorationGate {
    enum class Kind { FlipTarget, SwapPair };

    Kind kind;
    int a = -1;
    int b = -1;

    static ExplorationGate flip(int target) { return {Kind::FlipTarget, target, -1}; }
    static ExplorationGate swap_pair(int t1, int t2) { return {Kind::SwapPair, t1, t2}; }
};

using ExplorationPlan = std::vector<ExplorationGate>;

// Dense density matrix, row-major, same basis convention as StateVector
// (qubit 0 is the most significant bit of a basis index).
class DensityMatrix {
public:
    static constexpr int kMaxQubits = 12;

    explicit DensityMatrix(int n_qubits);  // |0..0><0..0|
    static DensityMatrix from_statevector(const StateVector& psi);
    static DensityMatrix from_entries(int n_qubits, std::vector<cplx> entries);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }
    cplx entry(std::size_t row, std::size_t col) const { return rho_[row * dim_ + col]; }

    // rho -> U rho U^dagger for the supported gate set.
    void apply(const GateOp& op);
    void apply_ry(int qubit, double theta) { apply(GateOp::ry(qubit, theta)); }

    // Trace out `qubit` and re-prepare it in |0>: the reset channel.
    void reset_qubit(int qubit);

    std::vector<double> diagonal() const;
    double trace_real() const;
    double max_hermiticity_error() const;

private:
    void apply_to_columns(const GateOp& op);
    void apply_to_rows_conjugate(const GateOp& op);

    int n_;
    std::size_t dim_;
    std::vector<cplx> rho_;
};

// Exact mixed state of the ant register after one exploration pass with an
// explicitly reset control wire: for each planned gate, prepare the control
// with Ry(2*asin(sqrt(beta))), apply the controlled gate, then reset the
// control. Per gate this is the channel rho -> (1-beta) rho + beta U rho U^t.
// Ant angles are applied first; returns the reduced state over the ants.
DensityMatrix dm_run_reset_circuit(int n_ant, double beta, const ExplorationPlan& plan,
                                   const std::vector<double>& initial_angles);

} // namespace qaco
