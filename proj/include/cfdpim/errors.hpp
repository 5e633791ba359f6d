#pragma once

#include <stdexcept>
#include <string>

namespace cfdpim {

/// Thrown when two fields/operators that must share a grid or size do not.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a propagator or transform produces nonfinite values.
class overflow_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when phi drops below the positivity floor; carries the offending node.
class singular_transform_error : public std::runtime_error {
public:
    singular_transform_error(std::string what, long node)
        : std::runtime_error(std::move(what)), node_(node) {}
    long node() const noexcept { return node_; }

private:
    long node_;
};

}  // namespace cfdpim
