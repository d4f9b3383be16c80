#pragma once

#include <string>
#include <vector>

namespace qsc::reference {

// How a measured value is judged against the expectation.
enum class Check {
    Band,  // |measured - expected| <= tol
    Below, // measured <= expected
    Above, // measured >= expected
};

struct Item {
    int criterion = 0; // 1..10 grouping used by the acceptance harness
    std::string name;
    std::string detail;
    Check check = Check::Band;
    double expected = 0.0;
    double tol = 0.0;
};

struct Outcome {
    Item item;
    double measured = 0.0;
    bool pass = false;
    std::string note; // failure reason when a measurement throws
};

struct Options {
    bool zero_gx = false; // negative control: drops the g_x control term
    int samples = 4000;
};

// Item metadata without running anything (reproduce-paper --list).
std::vector<Item> items();

// Runs every measurement; outcomes appear in items() order. A measurement
// that throws produces a failed outcome carrying the exception text.
std::vector<Outcome> run(const Options& opt = {});

} // namespace qsc::reference
