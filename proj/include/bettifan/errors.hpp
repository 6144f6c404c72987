#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bettifan {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BETTIFAN_DEFINE_ERROR(Name)                        \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what)             \
            : Error(std::string(#Name ": ") + what) {}     \
    };

BETTIFAN_DEFINE_ERROR(InvalidDegreeSequence)
BETTIFAN_DEFINE_ERROR(CodimensionExceedsAmbient)
BETTIFAN_DEFINE_ERROR(NotGeneratedInDegreeZero)
BETTIFAN_DEFINE_ERROR(UndefinedOnZero)
BETTIFAN_DEFINE_ERROR(InvalidWindow)
BETTIFAN_DEFINE_ERROR(InvalidTableau)
BETTIFAN_DEFINE_ERROR(ChainNotMaximal)
BETTIFAN_DEFINE_ERROR(NotAChain)
BETTIFAN_DEFINE_ERROR(NotACoverTriple)
BETTIFAN_DEFINE_ERROR(WindowMismatch)
BETTIFAN_DEFINE_ERROR(NotInSubspace)
BETTIFAN_DEFINE_ERROR(WindowTooLarge)
BETTIFAN_DEFINE_ERROR(InvalidDiagram)
BETTIFAN_DEFINE_ERROR(NotSingleDegreeGenerated)
BETTIFAN_DEFINE_ERROR(DuplicateEntry)
BETTIFAN_DEFINE_ERROR(IndexError)

#undef BETTIFAN_DEFINE_ERROR

/// Syntax error in a diagram document; positions are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace bettifan
