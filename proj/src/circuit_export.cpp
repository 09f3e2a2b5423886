#include "qaco/circuit_export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qaco {

namespace {

std::string fmt_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string export_circuit(const PheromoneAngles& angles, double beta,
                           const ExplorationPlan& plan) {
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("export_circuit: beta must lie in [0, 1]");
    const int n = angles.size();
    for (const ExplorationGate& g : plan) {
        const bool ok = g.kind == ExplorationGate::Kind::FlipTarget
                            ? (g.a >= 0 && g.a < n)
                            : (g.a >= 0 && g.a < n && g.b >= 0 && g.b < n && g.a != g.b);
        if (!ok) throw std::invalid_argument("export_circuit: plan references a bad ant wire");
    }

    const double theta_e = 2.0 * std::asin(std::sqrt(beta));
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg ant[" << n << "];\n";
    out << "qreg expl[1];\n";
    out << "creg out[" << n << "];\n";
    for (int i = 0; i < n; ++i)
        out << "ry(" << fmt_angle(angles.theta[static_cast<std::size_t>(i)]) << ") ant[" << i
            << "];\n";
    for (const ExplorationGate& g : plan) {
        out << "ry(" << fmt_angle(theta_e) << ") expl[0];\n";
        if (g.kind == ExplorationGate::Kind::FlipTarget)
            out << "cx expl[0],ant[" << g.a << "];\n";
        else
            out << "cswap expl[0],ant[" << g.a << "],ant[" << g.b << "];\n";
        out << "reset expl[0];\n";
    }
    for (int i = 0; i < n; ++i) out << "measure ant[" << i << "] -> out[" << i << "];\n";
    return out.str();
}

} // namespace qaco
