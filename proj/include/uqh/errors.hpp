#pragma once

#include <stdexcept>
#include <string>

namespace uqh {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedExponent : std::domain_error {
    using std::domain_error::domain_error;
};
struct MissingAssignment : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionViolation : std::logic_error {
    using std::logic_error::logic_error;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotInIdeal : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotInSubcategory : std::domain_error {
    using std::domain_error::domain_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace uqh
