#ifndef CCDIV_ERRORS_HPP
#define CCDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccdiv {

// Malformed external input (Matrix Market, JSON, CSV).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad command-line usage or incompatible command inputs.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Initial-population generation finished without every member discriminating.
class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ccdiv

#endif
