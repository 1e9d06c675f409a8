#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacmax {

// Input outside the mathematical domain of an operation (zero polynomial,
// degree too small, valuation of zero, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A computation was stopped by a configured bound before it could decide.
// Never a negative answer: the caller may retry with larger bounds.
class InconclusiveError : public std::runtime_error {
public:
    InconclusiveError(const std::string& what, std::string detail)
        : std::runtime_error(what), detail_(std::move(detail)) {}

    // Free-form payload (an unfactored cofactor, a size estimate, ...).
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
};

// An internal identity that must hold failed; indicates a bug or a violated
// degree bound, never a property of the input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed external input (JSON documents, polynomial payloads). `position`
// is the byte offset of the problem when known, otherwise npos.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t position = npos)
        : std::runtime_error(what), position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace jacmax
