#pragma once

#include <stdexcept>
#include <string>

namespace piezobeam {

/// Bad user input: malformed files, unknown names, invalid constants.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation could not be carried out on otherwise valid input.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace piezobeam
