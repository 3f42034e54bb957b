#pragma once

#include <stdexcept>
#include <string>

namespace qpt {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidVertex : Error {
    using Error::Error;
};
struct NotASimplex : Error {
    using Error::Error;
};
struct OverlappingSupports : Error {
    using Error::Error;
};
struct NotPure : Error {
    using Error::Error;
};
struct GroupTooLarge : Error {
    using Error::Error;
};
struct NotInvariant : Error {
    using Error::Error;
};
struct NotAPseudomanifold : Error {
    using Error::Error;
};
struct DegreeOutOfRange : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct NotDistinguished : Error {
    using Error::Error;
};
struct NotAdmissible : Error {
    using Error::Error;
};
struct InfeasibleMandatory : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct UnknownEntry : Error {
    using Error::Error;
};

}  // namespace qpt
