#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pce {

// Base for all toolchain errors. what() is module-qualified so the CLI can
// print "sensing: start time out of range ..." without extra bookkeeping.
// exit_code() distinguishes validation failures (1) from OS-level I/O (2).
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }
    virtual int exit_code() const noexcept { return 1; }

private:
    std::string module_;
};

// Malformed container or label file (bad magic, bad header token).
class FormatError : public Error {
public:
    using Error::Error;
};

// Declared dimensions disagree with payload, or cross-file dims mismatch.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Caller passed arguments outside an operation's precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Data parsed correctly but violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Detection/ground-truth chunk indices do not line up.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// More than one box of a class in one frame; merging cannot disambiguate.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

// Underlying open/read/write failure.
class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

} // namespace pce
