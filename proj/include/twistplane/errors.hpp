#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistplane {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

/// A truncated computation ran out of exact rows.
struct HorizonExhausted : Error {
    std::size_t suggested_n;
    HorizonExhausted(const std::string& msg, std::size_t suggested)
        : Error(msg), suggested_n(suggested) {}
};

/// A root of one of the obstruction polynomial families was hit.
struct RootHit : Error {
    long index;
    RootHit(const std::string& msg, long idx) : Error(msg), index(idx) {}
};

/// Row extension pivot equals one; the extension is not unique.
struct PivotOne : Error {
    long row;
    PivotOne(const std::string& msg, long r) : Error(msg), row(r) {}
};

struct BadParams : Error {
    using Error::Error;
};

struct PrefixTooShort : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct NotAlmostBalanced : Error {
    using Error::Error;
};

struct OutOfTable : Error {
    using Error::Error;
};

struct UnsupportedField : Error {
    using Error::Error;
};

}  // namespace twistplane
