#pragma once

#include <stdexcept>
#include <string>

namespace liegrad {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Requested root order does not divide the field conductor.
class OrderUnavailableError : public Error {
public:
    explicit OrderUnavailableError(const std::string& what) : Error(what) {}
};

class DivisionByZeroError : public Error {
public:
    explicit DivisionByZeroError(const std::string& what) : Error(what) {}
};

class GroupError : public Error {
public:
    explicit GroupError(const std::string& what) : Error(what) {}
};

class LinAlgError : public Error {
public:
    explicit LinAlgError(const std::string& what) : Error(what) {}
};

// A decomposition fed to universal_group is not a grading (a nonzero
// product straddles two pieces, or degrees collide after relabeling).
class NotAGradingError : public Error {
public:
    explicit NotAGradingError(const std::string& what) : Error(what) {}
};

// A map fed to eigenspace_refine does not preserve a component.
class CompatibilityError : public Error {
public:
    explicit CompatibilityError(const std::string& what) : Error(what) {}
};

// Eigenspaces of a refining map fail to exhaust a component; a larger
// conductor is needed.
class SpectrumError : public Error {
public:
    explicit SpectrumError(const std::string& what) : Error(what) {}
};

// Descriptor parameters violate the construction constraints.
class DescriptorError : public Error {
public:
    explicit DescriptorError(const std::string& what) : Error(what) {}
};

} // namespace liegrad
