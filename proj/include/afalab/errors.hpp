// Error types shared by all afalab components.

#pragma once

#include <stdexcept>
#include <string>

namespace afalab {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic between a rational scalar and a float scalar. Never promoted
// silently; the scalar mode is part of a machine's identity.
struct ModeMismatchError : Error {
    explicit ModeMismatchError(const std::string& what) : Error(what) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// A machine descriptor violates one of its model invariants.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Word contains a symbol outside the machine's alphabet.
struct UnknownSymbolError : Error {
    explicit UnknownSymbolError(const std::string& what) : Error(what) {}
};

// An operation's stated precondition does not hold (e.g. non-rational input
// to an integer-output construction).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Internal consistency failure: something the library asserts about its own
// results (oracle cross-checks, degenerate norms) failed. Surfaced, never
// masked.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

// The language computed for a 2-state unary machine is not expressible as a
// catalog entry. Carries the exact membership pattern for inspection.
struct OutOfCatalogError : Error {
    explicit OutOfCatalogError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace afalab
