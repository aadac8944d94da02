#include "dgva/report.hpp"

namespace dgva {

CheckLine& CheckReport::family(const std::string& f) {
    for (auto& l : lines)
        if (l.family == f) return l;
    lines.push_back(CheckLine{f});
    return lines.back();
}

void CheckReport::fail(const std::string& f, const std::string& witness) {
    auto& l = family(f);
    ++l.checked;
    if (l.witness.empty()) l.witness = witness;
}

void CheckReport::absorb(const CheckReport& other, const std::string& prefix) {
    for (auto& l : other.lines) {
        auto& mine = family(prefix.empty() ? l.family : prefix + "." + l.family);
        mine.checked += l.checked;
        mine.passed += l.passed;
        mine.skipped += l.skipped;
        if (mine.witness.empty()) mine.witness = l.witness;
    }
    for (auto& n : other.notes) notes.push_back(n);
}

bool CheckReport::pass() const {
    for (auto& l : lines)
        if (!l.ok()) return false;
    return true;
}

std::string CheckReport::first_witness() const {
    for (auto& l : lines)
        if (!l.ok()) return l.family + ": " + l.witness;
    return "";
}

} // namespace dgva
