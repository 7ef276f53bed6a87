#ifndef MORREY_ERRORS_HPP
#define MORREY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace morrey
{

// Parameter or precondition violation (CLI exit code 2).
class invalid_argument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature failed to produce a finite, converged value.
class quadrature_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine was handed data it cannot work with (e.g. a zero or
// infinite sample in a log-log fit).
class numerical_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Construction exceeded the segment budget (CLI exit code 4).
class resource_guard_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace morrey

#endif
