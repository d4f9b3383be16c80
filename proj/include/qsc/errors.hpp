#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

// Thrown when a propagation leaves its validity envelope (trace or norm
// drift past 1e-6, bracket failures in root searches, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qsc
