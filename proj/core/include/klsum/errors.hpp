#pragma once

#include <stdexcept>
#include <string>

namespace klsum {

// Invalid mathematical input (non-unit residue, even Jacobi modulus, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameters outside the hypotheses an evaluation needs (p = 3, k < 2, ...).
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// A cost guard tripped; the request is valid but too large for brute force.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace klsum
