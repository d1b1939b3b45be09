#pragma once

#include <stdexcept>
#include <string>

namespace svt {

// Maps onto CLI exit codes.
enum class ErrorKind : int { Usage = 1, Data = 2, External = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class DimensionError : public DataError {
public:
    using DataError::DataError;
};

/// Malformed, truncated or unreadable files and containers.
class FormatError : public DataError {
public:
    using DataError::DataError;
};

class CorruptionError : public FormatError {
public:
    using FormatError::FormatError;
};

class IndexError : public DataError {
public:
    using DataError::DataError;
};

class ProtocolError : public DataError {
public:
    using DataError::DataError;
};

class ExternalProcessError : public Error {
public:
    explicit ExternalProcessError(const std::string& what) : Error(ErrorKind::External, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

/// Wraps a failure inside a named pipeline stage, keeping the cause's kind.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause)
        : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace svt
