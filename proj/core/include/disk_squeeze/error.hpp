#pragma once

#include <stdexcept>
#include <string>

namespace disk_squeeze {

// Raised when an operation's precondition on its arguments does not hold
// (point outside the disk, identity map where a motion is required, closed
// gap, infeasible control target, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace disk_squeeze
