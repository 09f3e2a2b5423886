#include "qaco/run_report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace qaco {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_report(const RunReport& report, std::ostream& out) {
    out << "run v1\n";
    out << "best " << report.best.bits << ' ' << fmt_double(report.best.fitness) << '\n';
    out << "exit " << report.exit_iteration << '\n';
    for (const IterationRecord& rec : report.trace)
        out << "iter " << rec.iteration << ' ' << rec.measured << ' ' << rec.repaired << ' '
            << fmt_double(rec.fitness) << ' ' << fmt_double(rec.beta) << '\n';
    out << "end\n";
}

RunReport parse_report(std::istream& in) {
    RunReport report;
    std::string line;
    int lineno = 0;
    bool saw_header = false, saw_end = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (!saw_header) {
            std::string version;
            ls >> version;
            if (tag != "run" || version != "v1")
                throw ParseError("expected 'run v1' header", lineno, 1);
            saw_header = true;
            continue;
        }
        if (tag == "best") {
            if (!(ls >> report.best.bits >> report.best.fitness))
                throw ParseError("malformed best line", lineno, 1);
        } else if (tag == "exit") {
            if (!(ls >> report.exit_iteration))
                throw ParseError("malformed exit line", lineno, 1);
        } else if (tag == "iter") {
            IterationRecord rec;
            if (!(ls >> rec.iteration >> rec.measured >> rec.repaired >> rec.fitness >> rec.beta))
                throw ParseError("malformed iter line", lineno, 1);
            report.trace.push_back(std::move(rec));
        } else if (tag == "end") {
            saw_end = true;
            break;
        } else {
            throw ParseError("unknown record '" + tag + "'", lineno, 1);
        }
    }
    if (!saw_header) throw ParseError("missing 'run v1' header", lineno, 1);
    if (!saw_end) throw ParseError("missing 'end' line", lineno, 1);
    return report;
}

} // namespace qaco
