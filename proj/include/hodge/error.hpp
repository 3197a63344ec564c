/**
 * Error kinds raised by the toolkit.
 *
 * Every failure that the operations can report as an exception carries one
 * of the kinds below; callers branch on `kind()` rather than on message text.
 */

#ifndef HODGE_ERROR_HPP
#define HODGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hodge {

enum class ErrorKind
{
    DimensionMismatch,
    NotFiltrationPreserving,
    NotNilpotent,
    NotUnipotent,
    NotCommuting,
    NotSharp,
    NotInLieAlgebra,
    NotStronglyCompatible,
    EmptyInterior,
    InvalidPoint,
    NotAbsolutePoint,
    NotInCheckDomain,
    NotInESigma,
    NotInESigmaSharp,
    NoConeContains,
    OrbitCheckFailed,
    UnknownFixture,
    InvalidInput,
    Internal
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::DimensionMismatch:        return "DimensionMismatch";
        case ErrorKind::NotFiltrationPreserving:  return "NotFiltrationPreserving";
        case ErrorKind::NotNilpotent:             return "NotNilpotent";
        case ErrorKind::NotUnipotent:             return "NotUnipotent";
        case ErrorKind::NotCommuting:             return "NotCommuting";
        case ErrorKind::NotSharp:                 return "NotSharp";
        case ErrorKind::NotInLieAlgebra:          return "NotInLieAlgebra";
        case ErrorKind::NotStronglyCompatible:    return "NotStronglyCompatible";
        case ErrorKind::EmptyInterior:            return "EmptyInterior";
        case ErrorKind::InvalidPoint:             return "InvalidPoint";
        case ErrorKind::NotAbsolutePoint:         return "NotAbsolutePoint";
        case ErrorKind::NotInCheckDomain:         return "NotInCheckDomain";
        case ErrorKind::NotInESigma:              return "NotInESigma";
        case ErrorKind::NotInESigmaSharp:         return "NotInESigmaSharp";
        case ErrorKind::NoConeContains:           return "NoConeContains";
        case ErrorKind::OrbitCheckFailed:         return "OrbitCheckFailed";
        case ErrorKind::UnknownFixture:           return "UnknownFixture";
        case ErrorKind::InvalidInput:             return "InvalidInput";
        case ErrorKind::Internal:                 return "Internal";
    }
    return "Unknown";
}

class HodgeError : public std::runtime_error
{
    private:
        ErrorKind kind_;

    public:
        HodgeError(ErrorKind kind, const std::string& what)
            : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
        {
        }

        ErrorKind kind() const noexcept { return kind_; }
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw HodgeError(kind, what);
}

}   // namespace hodge

#endif
