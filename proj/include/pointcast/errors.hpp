#ifndef POINTCAST_ERRORS_HPP
#define POINTCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pointcast {

// Malformed file header or row, missing columns, non-finite values.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Kernel bandwidth could not be derived from the data (all points coincident).
class DegenerateKernelError : public std::runtime_error {
public:
    explicit DegenerateKernelError(const std::string& msg) : std::runtime_error(msg) {}
};

// A Laplacian kind that inverts the degree matrix hit a zero-degree vertex.
class SingularDegreeError : public std::runtime_error {
public:
    explicit SingularDegreeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix decomposition did not converge; never silently approximated.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pointcast

#endif
