#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qaco/rng.hpp"

namespace qaco {

// Validity constraint on solution bitstrings.
struct Constraint {
    enum class Kind { Unconstrained, ExactOnes };

    Kind kind = Kind::Unconstrained;
    int ones = 0;  // only meaningful for ExactOnes

    static Constraint unconstrained() { return {Kind::Unconstrained, 0}; }
    static Constraint exact_ones(int m) { return {Kind::ExactOnes, m}; }

    bool allows(std::string_view bits) const;
    bool operator==(const Constraint&) const = default;
};

// Binary quadratic maximization problem: maximize sum_{i<=j} x_i M_ij x_j
// over bitstrings x, with M stored as its upper triangle (row-major, the
// diagonal included).
class QapInstance {
public:
    QapInstance(int n, std::vector<double> upper_triangle, Constraint constraint);

    int n() const { return n_; }
    const Constraint& constraint() const { return constraint_; }
    const std::vector<double>& upper_triangle() const { return m_; }

    // M_ij for i <= j (0-based).
    double entry(int i, int j) const;

    // Number of bitstrings the constraint admits (2^n or C(n, m)).
    long long solution_count() const;

    bool operator==(const QapInstance&) const = default;

private:
    int n_;
    std::vector<double> m_;
    Constraint constraint_;
};

struct Solution {
    std::string bits;
    double fitness = 0.0;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line), column(column) {}

    int line;
    int column;
};

double fitness(const QapInstance& instance, std::string_view bits);

// Every bitstring the constraint admits, in lexicographic order.
// Guarded at n <= 24.
std::vector<std::string> valid_solutions(int n, const Constraint& constraint);

// Exhaustive maximizer over the valid set; ties resolve to the
// lexicographically smallest bitstring. Guarded at n <= 24.
Solution brute_force_opt(const QapInstance& instance);

// Entries drawn i.i.d. uniform on [lo, hi], diagonal included.
QapInstance random_instance(int n, const Constraint& constraint, Rng& rng, double lo = -0.5,
                            double hi = 0.5);

// Plain-text instance format:
//   qap <n> <U | E m>
//   row 0: n entries ... row n-1: 1 entry   (upper triangle)
QapInstance parse_instance(std::istream& in);
QapInstance load_instance(const std::string& path);
void write_instance(const QapInstance& instance, std::ostream& out);
void save_instance(const QapInstance& instance, const std::string& path);

int popcount(std::string_view bits);

} // namespace qaco
