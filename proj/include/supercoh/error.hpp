#pragma once

#include <stdexcept>
#include <string>

namespace supercoh {

enum class ErrorKind {
    TwistMismatch,
    DomainMismatch,
    NotARefinement,
    InvalidSection,
    SpecMismatch,
    NotADerivation,
    LevelOutOfRange,
    NotACocycle,
    UnsupportedCover,
    WindowTooSmall,
    HasDegreeZeroPart,
    NotInGE,
    GlobalDer2Nonzero,
    RankTooHigh,
    RankMismatch,
    ChannelUnknown,
    WrongActionKind,
    HypothesisViolated,
    InvalidArgument,
};

const char* errorKindName(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace supercoh
