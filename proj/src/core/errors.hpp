#pragma once

#include <stdexcept>
#include <string>

namespace backstep {

// Error categories; mirrored one-to-one by the bstp_status codes of the C API.
enum class Errc {
    InvalidArgument,
    Parse,
    IterationLimit,
    FamilyMismatch,
    GridMismatch,
    MissingKernels,
    NonPositiveNorm,
    ComplexSpectrum,
    WrongScenario,
    SingularSystem,
    Io,
    Verification,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace backstep
