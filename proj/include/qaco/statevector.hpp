#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qaco/rng.hpp"

namespace qaco {

using cplx = std::complex<double>;

// One gate application. Wires are 0-based; factory helpers validate arity,
// apply() validates ranges and collisions.
struct GateOp {
    enum class Kind { Ry, X, Cnot, Cswap };

    Kind kind;
    int q0 = -1;       // Ry/X target, Cnot/Cswap control
    int q1 = -1;       // Cnot target, Cswap first target
    int q2 = -1;       // Cswap second target
    double angle = 0;  // Ry only

    static GateOp ry(int qubit, double theta) { return {Kind::Ry, qubit, -1, -1, theta}; }
    static GateOp x(int qubit) { return {Kind::X, qubit, -1, -1, 0.0}; }
    static GateOp cnot(int control, int target) { return {Kind::Cnot, control, target, -1, 0.0}; }
    static GateOp cswap(int control, int t1, int t2) { return {Kind::Cswap, control, t1, t2, 0.0}; }
};

// Dense statevector over n qubits.
//
// Basis convention: amplitude k corresponds to the binary expansion of k over
// n bits with qubit 0 as the MOST significant bit, i.e. the bitstring "q0 q1
// ... q{n-1}" read left to right is the binary literal of k. Measurement
// results and probability_of() use the same convention.
//
// Ry convention: Ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>, so
// P(|1>) = sin^2(theta/2) and theta = 2*asin(sqrt(p)) prepares P(|1>) = p.
class StateVector {
public:
    // Hard cap on register width; 2^24 amplitudes = 256 MiB of doubles.
    static constexpr int kMaxQubits = 24;

    // |0...0> on n qubits. Throws std::invalid_argument outside [1, kMaxQubits].
    explicit StateVector(int n_qubits);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    void apply_ry(int qubit, double theta);
    void apply_x(int qubit);
    void apply_cnot(int control, int target);
    void apply_cswap(int control, int t1, int t2);
    void apply(const GateOp& op);

    // |alpha_k|^2 for the basis state written as a '0'/'1' string of length n.
    double probability_of(std::string_view bits) const;

    // Draws one basis state with probability |alpha_k|^2; state is untouched.
    std::string sample(Rng& rng) const;

    // Projective measurement of one qubit: collapses, renormalizes, returns
    // the outcome bit.
    int measure_qubit(int qubit, Rng& rng);

    // Measure-and-reinitialize: measures the qubit and flips it back to |0>
    // when the outcome was 1.
    void reset_qubit(int qubit, Rng& rng);

    double norm() const;

    static std::size_t bits_to_index(std::string_view bits);
    static std::string index_to_bits(std::size_t k, int n_qubits);

private:
    std::size_t mask_of(int qubit) const { return std::size_t{1} << (n_ - 1 - qubit); }
    void check_qubit(int qubit) const;

    int n_;
    std::vector<cplx> amps_;
};

} // namespace qaco
