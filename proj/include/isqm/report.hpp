#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "isqm/walk.hpp"

namespace isqm {

/// Walk trace laid out like a hand-worked table: value, branch, roots, chosen, expr.
template <class Group>
void print_trace(std::ostream& out, const Group& group, const std::vector<TraceRow<Group>>& trace) {
    out << std::left << std::setw(6) << "step" << std::setw(16) << "value" << std::setw(9) << "branch"
        << std::setw(26) << "result / roots" << std::setw(12) << "chosen" << std::setw(4) << "b"
        << "expr" << '\n';
    for (const auto& row : trace) {
        std::string result = group.format(row.output);
        if (row.other_root) result += ", " + group.format(*row.other_root);
        if (row.branch == Branch::restart) result = "--";
        out << std::setw(6) << row.step << std::setw(16) << group.format(row.input) << std::setw(9)
            << to_string(row.branch) << std::setw(26) << result << std::setw(12)
            << (row.chosen ? group.format(*row.chosen) : std::string("--")) << std::setw(4) << row.control_bit
            << to_string(row.expr);
        if (row.collision) out << "   [" << *row.collision << "]";
        out << '\n';
    }
}

template <class Group>
void print_summary(std::ostream& out, const DlogResult<Group>& r) {
    out << "steps=" << r.steps_taken << " restarts=" << r.restarts << " collisions=" << r.collisions_tested
        << " candidates=" << r.candidates_tried << " spurious=" << r.spurious_collisions << '\n';
    if (r.solution) {
        out << "congruence: " << *r.solution;
        if (r.candidates.size() > 1) {
            out << "  candidates:";
            for (const auto& c : r.candidates) out << ' ' << c;
        }
        out << '\n';
    }
}

}  // namespace isqm
