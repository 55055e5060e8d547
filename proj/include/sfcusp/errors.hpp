#pragma once

#include <stdexcept>
#include <string>

namespace sfcusp {

// Every failure mode gets its own type so callers (and tests) can tell them
// apart; category() is the stable machine-readable name used by the CLI's
// diagnostic output.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& msg)
        : std::runtime_error(msg), category_(std::move(category)) {}
    const std::string& category() const { return category_; }

private:
    std::string category_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error("invalid-argument", msg) {}
};

struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& msg) : Error("precision-exceeded", msg) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error("quadrature-failure", msg) {}
};

struct EstimationFailure : Error {
    explicit EstimationFailure(const std::string& msg) : Error("estimation-failure", msg) {}
};

struct NeedsMorePrimes : Error {
    explicit NeedsMorePrimes(const std::string& msg) : Error("needs-more-primes", msg) {}
};

struct MalformedFile : Error {
    explicit MalformedFile(const std::string& msg) : Error("malformed-file", msg) {}
};

struct InconsistentData : Error {
    explicit InconsistentData(const std::string& msg) : Error("inconsistent-data", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io-error", msg) {}
};

struct DecompositionFailure : Error {
    explicit DecompositionFailure(const std::string& msg) : Error("decomposition-failure", msg) {}
};

struct BasisIncomplete : Error {
    explicit BasisIncomplete(const std::string& msg) : Error("basis-incomplete-or-dependent", msg) {}
};

struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& msg) : Error("internal-inconsistency", msg) {}
};

} // namespace sfcusp
