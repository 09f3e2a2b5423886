#include "qaco/qap.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace qaco {

namespace {

constexpr int kEnumerationLimit = 24;

void check_bits(const QapInstance& instance, std::string_view bits) {
    if (static_cast<int>(bits.size()) != instance.n())
        throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                    " does not match instance size " +
                                    std::to_string(instance.n()));
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

int popcount(std::string_view bits) {
    int c = 0;
    for (char b : bits) c += (b == '1');
    return c;
}

bool Constraint::allows(std::string_view bits) const {
    if (kind == Kind::Unconstrained) return true;
    return popcount(bits) == ones;
}

QapInstance::QapInstance(int n, std::vector<double> upper_triangle, Constraint constraint)
    : n_(n), m_(std::move(upper_triangle)), constraint_(constraint) {
    if (n < 1) throw std::invalid_argument("QapInstance: size must be positive");
    const std::size_t expected = static_cast<std::size_t>(n) * (n + 1) / 2;
    if (m_.size() != expected)
        throw std::invalid_argument("QapInstance: expected " + std::to_string(expected) +
                                    " upper-triangle entries, got " + std::to_string(m_.size()));
    for (double v : m_)
        if (!std::isfinite(v)) throw std::invalid_argument("QapInstance: entries must be finite");
    if (constraint.kind == Constraint::Kind::ExactOnes &&
        (constraint.ones < 1 || constraint.ones > n))
        throw std::invalid_argument("QapInstance: ExactOnes count must lie in [1, n]");
}

double QapInstance::entry(int i, int j) const {
    if (i < 0 || j < i || j >= n_) throw std::out_of_range("QapInstance: bad entry index");
    // Row i starts after the rows above it: sum of (n - r) for r < i.
    const std::size_t row_start =
        static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2;
    return m_[row_start + static_cast<std::size_t>(j - i)];
}

long long QapInstance::solution_count() const {
    if (constraint_.kind == Constraint::Kind::Unconstrained) return 1LL << n_;
    return binomial(n_, constraint_.ones);
}

double fitness(const QapInstance& instance, std::string_view bits) {
    check_bits(instance, bits);
    double total = 0.0;
    for (int i = 0; i < instance.n(); ++i) {
        if (bits[static_cast<std::size_t>(i)] != '1') continue;
        for (int j = i; j < instance.n(); ++j)
            if (bits[static_cast<std::size_t>(j)] == '1') total += instance.entry(i, j);
    }
    return total;
}

std::vector<std::string> valid_solutions(int n, const Constraint& constraint) {
    if (n < 1 || n > kEnumerationLimit)
        throw std::invalid_argument("valid_solutions: enumeration limited to n <= " +
                                    std::to_string(kEnumerationLimit));
    std::vector<std::string> out;
    if (constraint.kind == Constraint::Kind::ExactOnes)
        out.reserve(static_cast<std::size_t>(binomial(n, constraint.ones)));
    else
        out.reserve(std::size_t{1} << n);
    // Ascending mask order is lexicographic order for fixed-width strings.
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < end; ++mask) {
        std::string bits(static_cast<std::size_t>(n), '0');
        int ones = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (std::uint32_t{1} << (n - 1 - i))) {
                bits[static_cast<std::size_t>(i)] = '1';
                ++ones;
            }
        if (constraint.kind == Constraint::Kind::ExactOnes && ones != constraint.ones) continue;
        out.push_back(std::move(bits));
    }
    return out;
}

Solution brute_force_opt(const QapInstance& instance) {
    const int n = instance.n();
    if (n > kEnumerationLimit)
        throw std::invalid_argument("brute_force_opt: enumeration limited to n <= " +
                                    std::to_string(kEnumerationLimit));
    const Constraint& constraint = instance.constraint();
    Solution best;
    best.fitness = -std::numeric_limits<double>::infinity();
    bool found = false;
    std::string bits(static_cast<std::size_t>(n), '0');
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < end; ++mask) {
        int ones = 0;
        for (int i = 0; i < n; ++i) {
            const bool bit = mask & (std::uint32_t{1} << (n - 1 - i));
            bits[static_cast<std::size_t>(i)] = bit ? '1' : '0';
            ones += bit;
        }
        if (constraint.kind == Constraint::Kind::ExactOnes && ones != constraint.ones) continue;
        const double f = fitness(instance, bits);
        // Strict > keeps the first (lexicographically smallest) maximizer.
        if (!found || f > best.fitness) {
            best = {bits, f};
            found = true;
        }
    }
    if (!found) throw std::logic_error("brute_force_opt: constraint admits no solution");
    return best;
}

QapInstance random_instance(int n, const Constraint& constraint, Rng& rng, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("random_instance: size must be positive");
    std::vector<double> upper(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (double& v : upper) v = rng.uniform(lo, hi);
    return QapInstance(n, std::move(upper), constraint);
}

namespace {

// Whitespace tokenizer that tracks line/column for error reporting.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    bool next(std::string& token) {
        token.clear();
        int c;
        while ((c = in_.get()) != EOF) {
            advance(c);
            if (!std::isspace(c)) break;
        }
        if (c == EOF) return false;
        tok_line_ = line_;
        tok_col_ = col_;
        token.push_back(static_cast<char>(c));
        while ((c = in_.peek()) != EOF && !std::isspace(c)) {
            token.push_back(static_cast<char>(in_.get()));
            ++col_;
        }
        return true;
    }

    int line() const { return tok_line_; }
    int column() const { return tok_col_; }
    int cursor_line() const { return line_; }

private:
    void advance(int c) {
        if (c == '\n') {
            ++line_;
            col_ = 0;
        } else {
            ++col_;
        }
    }

    std::istream& in_;
    int line_ = 1;
    int col_ = 0;
    int tok_line_ = 1;
    int tok_col_ = 1;
};

double parse_number(TokenReader& reader, const std::string& what) {
    std::string token;
    if (!reader.next(token))
        throw ParseError("unexpected end of file, expected " + what, reader.cursor_line(), 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size())
        throw ParseError("expected " + what + ", got '" + token + "'", reader.line(),
                         reader.column());
    return value;
}

long parse_integer(TokenReader& reader, const std::string& what) {
    std::string token;
    if (!reader.next(token))
        throw ParseError("unexpected end of file, expected " + what, reader.cursor_line(), 1);
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size())
        throw ParseError("expected " + what + ", got '" + token + "'", reader.line(),
                         reader.column());
    return value;
}

} // namespace

QapInstance parse_instance(std::istream& in) {
    TokenReader reader(in);
    std::string token;
    if (!reader.next(token)) throw ParseError("empty instance file", 1, 1);
    if (token != "qap")
        throw ParseError("expected header 'qap', got '" + token + "'", reader.line(),
                         reader.column());
    const long n = parse_integer(reader, "instance size");
    if (n < 1 || n > 4096)
        throw ParseError("instance size out of range", reader.line(), reader.column());

    if (!reader.next(token))
        throw ParseError("unexpected end of file, expected constraint tag", reader.cursor_line(),
                         1);
    Constraint constraint;
    if (token == "U") {
        constraint = Constraint::unconstrained();
    } else if (token == "E") {
        const long m = parse_integer(reader, "ones count");
        if (m < 1 || m > n)
            throw ParseError("ones count out of range", reader.line(), reader.column());
        constraint = Constraint::exact_ones(static_cast<int>(m));
    } else {
        throw ParseError("expected constraint tag 'U' or 'E', got '" + token + "'", reader.line(),
                         reader.column());
    }

    std::vector<double> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (long row = 0; row < n; ++row)
        for (long k = 0; k < n - row; ++k) upper.push_back(parse_number(reader, "matrix entry"));
    if (reader.next(token))
        throw ParseError("trailing content '" + token + "' after matrix", reader.line(),
                         reader.column());
    return QapInstance(static_cast<int>(n), std::move(upper), constraint);
}

QapInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in);
}

void write_instance(const QapInstance& instance, std::ostream& out) {
    out << "qap " << instance.n() << ' ';
    if (instance.constraint().kind == Constraint::Kind::Unconstrained)
        out << "U\n";
    else
        out << "E " << instance.constraint().ones << '\n';
    char buf[64];
    for (int i = 0; i < instance.n(); ++i) {
        for (int j = i; j < instance.n(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", instance.entry(i, j));
            out << buf << (j + 1 < instance.n() ? ' ' : '\n');
        }
    }
}

void save_instance(const QapInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    write_instance(instance, out);
    if (!out.flush()) throw std::runtime_error("failed writing instance file: " + path);
}

} // namespace qaco
