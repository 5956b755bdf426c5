#pragma once

#include <stdexcept>
#include <string>

namespace qev {

enum class Errc {
    NonFinite,
    DivisionByNearZero,
    BadFrame,
    UnknownLabel,
    FrameMismatch,
    TotalConflict,
    NotRealValued,
    EmptyHypothesis,
    BadGridStep,
    BadWeights,
    ZeroBlockNorm,
    ParamOutOfRange,
    NotHermitian,
    NotProjector,
    OutOfRange,
    BadConfig,
    Parse,
    Validation,
    Io,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace qev
