#pragma once

#include <stdexcept>
#include <string>

namespace gkdv {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid grid construction (non power of two, too few points, bad width).
struct InvalidGridError : Error {
    using Error::Error;
};

// A parameter tuple violating the admissibility constraints.
struct ParamError : Error {
    using Error::Error;
};

// Operand fields/trajectories live on different grids or time grids.
struct IncompatibleTrajectoriesError : Error {
    using Error::Error;
};

// The weighted modulus dropped below the configured lambda floor.
struct DegeneracyError : Error {
    using Error::Error;
};

// Spectral resolution diagnostic escalated to a hard failure.
struct ResolutionError : Error {
    using Error::Error;
};

// Too much mass near the periodic seam for an x-multiplication to be valid.
struct BoundaryMassError : Error {
    using Error::Error;
};

// Reference integrator detected norm blow-up.
struct BlowUpError : Error {
    using Error::Error;
};

// Degenerate data (lambda <= 0) or inconsistent data (delta < lambda).
struct DataError : Error {
    using Error::Error;
};

// Configuration file problems: missing keys, unparsable or inadmissible values.
struct ConfigError : Error {
    using Error::Error;
};

// Trajectory file parse/IO failures.
struct IoError : Error {
    using Error::Error;
};

} // namespace gkdv
