#include "qaco/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qaco {

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_)
        throw std::out_of_range("StateVector: qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n_) + " qubits");
}

void StateVector::apply_ry(int qubit, double theta) {
    check_qubit(qubit);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t m = mask_of(qubit);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & m) continue;
        const cplx a0 = amps_[k];
        const cplx a1 = amps_[k | m];
        amps_[k] = c * a0 - s * a1;
        amps_[k | m] = s * a0 + c * a1;
    }
}

void StateVector::apply_x(int qubit) {
    check_qubit(qubit);
    const std::size_t m = mask_of(qubit);
    for (std::size_t k = 0; k < amps_.size(); ++k)
        if (!(k & m)) std::swap(amps_[k], amps_[k | m]);
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target)
        throw std::invalid_argument("StateVector: CNOT control and target collide");
    const std::size_t mc = mask_of(control);
    const std::size_t mt = mask_of(target);
    for (std::size_t k = 0; k < amps_.size(); ++k)
        if ((k & mc) && !(k & mt)) std::swap(amps_[k], amps_[k | mt]);
}

void StateVector::apply_cswap(int control, int t1, int t2) {
    check_qubit(control);
    check_qubit(t1);
    check_qubit(t2);
    if (control == t1 || control == t2 || t1 == t2)
        throw std::invalid_argument("StateVector: CSWAP wires collide");
    const std::size_t mc = mask_of(control);
    const std::size_t m1 = mask_of(t1);
    const std::size_t m2 = mask_of(t2);
    // Swap the (t1,t2) bits wherever control is set and they differ.
    for (std::size_t k = 0; k < amps_.size(); ++k)
        if ((k & mc) && (k & m1) && !(k & m2)) std::swap(amps_[k], amps_[(k ^ m1) | m2]);
}

void StateVector::apply(const GateOp& op) {
    switch (op.kind) {
    case GateOp::Kind::Ry: apply_ry(op.q0, op.angle); break;
    case GateOp::Kind::X: apply_x(op.q0); break;
    case GateOp::Kind::Cnot: apply_cnot(op.q0, op.q1); break;
    case GateOp::Kind::Cswap: apply_cswap(op.q0, op.q1, op.q2); break;
    }
}

double StateVector::probability_of(std::string_view bits) const {
    if (static_cast<int>(bits.size()) != n_)
        throw std::invalid_argument("StateVector: bitstring length " +
                                    std::to_string(bits.size()) + " does not match " +
                                    std::to_string(n_) + " qubits");
    return std::norm(amps_[bits_to_index(bits)]);
}

std::string StateVector::sample(Rng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t hit = 0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        if (p <= 0.0) continue;
        hit = k;  // fallback for u landing past the rounded total
        acc += p;
        if (u < acc) break;
    }
    return index_to_bits(hit, n_);
}

int StateVector::measure_qubit(int qubit, Rng& rng) {
    check_qubit(qubit);
    const std::size_t m = mask_of(qubit);
    double p1 = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k)
        if (k & m) p1 += std::norm(amps_[k]);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    const double keep = outcome ? p1 : 1.0 - p1;
    const double scale = keep > 0.0 ? 1.0 / std::sqrt(keep) : 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const bool bit = (k & m) != 0;
        if (bit == static_cast<bool>(outcome))
            amps_[k] *= scale;
        else
            amps_[k] = cplx{0.0, 0.0};
    }
    return outcome;
}

void StateVector::reset_qubit(int qubit, Rng& rng) {
    if (measure_qubit(qubit, rng) == 1) apply_x(qubit);
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

std::size_t StateVector::bits_to_index(std::string_view bits) {
    std::size_t k = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("StateVector: bitstring must contain only '0'/'1'");
        k = (k << 1) | static_cast<std::size_t>(c - '0');
    }
    return k;
}

std::string StateVector::index_to_bits(std::size_t k, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int i = 0; i < n_qubits; ++i)
        if (k & (std::size_t{1} << (n_qubits - 1 - i))) bits[static_cast<std::size_t>(i)] = '1';
    return bits;
}

} // namespace qaco
