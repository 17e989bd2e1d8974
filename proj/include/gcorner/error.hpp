/**
 * @file error.hpp
 * @brief Exception types thrown by the corner detection library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace gcorner {

/// Base class for every library error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive frequency or shape parameter.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Invalid detector / bank / run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Image or kernel dimensions are incompatible.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Scale, direction or pixel index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Invalid corner model (angle partition, region count).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Degenerate geometric transform.
class TransformError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or a tensor that is too far from PSD.
class NumericError : public Error {
public:
    using Error::Error;
};

/// File could not be read, parsed, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gcorner
