#pragma once

#include <stdexcept>
#include <string>

namespace mpers {

/// Base class for all library errors. `exit_code()` is the process exit
/// status the CLI reports for this error category.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The input is well-formed but outside the supported geometric regime
/// (e.g. a flat-torus simplex too large for unique geodesics).
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }
    int exit_code() const noexcept override { return 2; }

private:
    std::string path_;
};

class TruncationExhausted : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

}  // namespace mpers
