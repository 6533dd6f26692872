#pragma once

#include <stdexcept>
#include <string>

namespace finosc {

// Thrown when a requested computation exceeds the library's desk-scale
// guards (group closures, Burnside sums, dense model matrices).
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when inversion hits a nonzero zero-divisor of the quadratic
// scalar algebra (possible when sqrt(q) already lies in Q(zeta_p)).
class NonInvertibleError : public std::domain_error {
public:
    explicit NonInvertibleError(const std::string& what) : std::domain_error(what) {}
};

} // namespace finosc
