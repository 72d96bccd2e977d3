#ifndef AXISPROBE_ERRORS_HPP
#define AXISPROBE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace axisprobe {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries the byte offset (binary formats) or the
// line number (text formats) where parsing stopped; whichever does not
// apply is zero.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t byte_offset = 0, std::size_t line = 0)
        : Error(msg), byte_offset_(byte_offset), line_(line) {}
    std::size_t byte_offset() const { return byte_offset_; }
    std::size_t line() const { return line_; }

private:
    std::size_t byte_offset_;
    std::size_t line_;
};

// Bad magic bytes, unsupported version, or truncated cache file.
class CacheError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// No pole word resolved in the model.
class PoleEmpty : public Error {
public:
    using Error::Error;
};

// Pole words resolved but their sum has (near) zero norm.
class DegeneratePole : public Error {
public:
    using Error::Error;
};

// The two pole constructs coincide; no axis direction exists.
class DegenerateAxis : public Error {
public:
    using Error::Error;
};

// A correlation input is constant (or otherwise has no defined statistic).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// A lexicon or dataset shares no vocabulary with the model.
class EmptyIntersection : public Error {
public:
    using Error::Error;
};

// One or both words of an antonym pair are out of vocabulary.
class PairUnresolved : public Error {
public:
    using Error::Error;
};

// A filter left nothing to report.
class EmptyResult : public Error {
public:
    using Error::Error;
};

}  // namespace axisprobe

#endif
