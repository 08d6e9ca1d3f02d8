#pragma once

#include <stdexcept>
#include <string>

namespace orbitsr {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid value for a field or argument (range, monotonicity, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed input file or text block.
class FormatError : public Error {
public:
    using Error::Error;
};

// Bad run configuration: unknown column, missing key, inconsistent preset.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Network / HTTP failure in the optional fetch client.
class TransportError : public Error {
public:
    using Error::Error;
};

// Apsis detection or cycle segmentation failed.
class SegmentationError : public Error {
public:
    using Error::Error;
};

// Degenerate geometry (collinear points, zero-length perigee vector, ...).
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// Iterative solver failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

// Epoch sequences that must match exactly do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Symbolic search produced no usable candidates.
class SearchError : public Error {
public:
    using Error::Error;
};

}  // namespace orbitsr
