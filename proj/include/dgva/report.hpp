#pragma once
#include "dgva/linear_map.hpp"

#include <string>
#include <vector>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  check reports                                                      */
/* ------------------------------------------------------------------ */

// One family of checks: how many instances were evaluated, how many held,
// how many had to be skipped for lack of window data, and a witness for the
// first failure (inputs, sides, difference).
struct CheckLine {
    std::string family;
    long long checked = 0;
    long long passed = 0;
    long long skipped = 0;
    std::string witness;

    bool ok() const { return passed == checked; }
    std::string status() const {
        if (checked > 0 && passed < checked) return "fail";
        if (checked == 0 && skipped > 0) return "skipped";
        return "pass";
    }
};

struct CheckReport {
    std::string name;
    std::vector<CheckLine> lines;
    std::vector<std::string> notes;

    CheckLine& family(const std::string& f);
    void ok(const std::string& f) { auto& l = family(f); ++l.checked; ++l.passed; }
    void fail(const std::string& f, const std::string& witness);
    void skip(const std::string& f) { ++family(f).skipped; }
    void check(const std::string& f, bool good, const std::string& witness) {
        good ? ok(f) : fail(f, witness);
    }
    void note(const std::string& n) { notes.push_back(n); }
    void absorb(const CheckReport& other, const std::string& prefix = "");

    bool pass() const;
    std::string first_witness() const;
};

/* ------------------------------------------------------------------ */
/*  morphism reports                                                   */
/* ------------------------------------------------------------------ */

// A concrete matrix between two presentations plus the evidence gathered
// about it (chain map, product morphism, surjectivity, ...).
struct MorphismReport {
    std::string name;
    LinearMap matrix;
    CheckReport checks;
    bool pass() const { return checks.pass(); }
};

} // namespace dgva
