#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace algwatch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic between elements of two different fields.
class SpecMismatchError : public Error {
public:
    using Error::Error;
};

/// Field width outside the supported 2..16 range.
class UnsupportedWidthError : public Error {
public:
    using Error::Error;
};

/// Argument outside its documented domain (radius > n, h > n, ...).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Operation refused because its cost grows as 2^n beyond the allowed bound.
class CostError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    DecodeError(const std::string& what, std::size_t offset)
        : Error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnsupportedVersionError : public DecodeError {
public:
    explicit UnsupportedVersionError(unsigned version)
        : DecodeError("unsupported packet version " + std::to_string(version), 0) {}
};

/// Invalid simulation config. `fields()` names every offending field.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> fields, const std::string& detail = {})
        : Error(format(fields, detail)), fields_(std::move(fields)) {}

    const std::vector<std::string>& fields() const noexcept { return fields_; }

private:
    static std::string format(const std::vector<std::string>& fields, const std::string& detail) {
        std::string msg = "invalid config field(s):";
        for (const auto& f : fields) msg += " " + f;
        if (!detail.empty()) msg += " (" + detail + ")";
        return msg;
    }

    std::vector<std::string> fields_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace algwatch
