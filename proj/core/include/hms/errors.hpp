#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hms {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// make_field rejections
struct NotMonicError : Error { using Error::Error; };
struct NotSquarefreeError : Error { using Error::Error; };
struct NotTotallyRealError : Error { using Error::Error; };
struct ReducibleError : Error { using Error::Error; };

// element / ideal arithmetic
struct FieldMismatchError : Error { using Error::Error; };
struct ZeroElementError : Error { using Error::Error; };
struct NotPrimeError : Error { using Error::Error; };
struct NormTooLargeToFactorError : Error { using Error::Error; };

// congruence subgroup checks
struct NotInGammaError : Error { using Error::Error; };
struct ZeroY0Error : Error { using Error::Error; };
struct CapExceededError : Error { using Error::Error; };

// hyperbolic geometry
struct NotHyperbolicError : Error { using Error::Error; };
struct DegenerateMatrixError : Error { using Error::Error; };

/// Raised when a product-length is requested for a tuple with a
/// non-hyperbolic factor; `indices` lists the failing factors (1-based,
/// matching the embedding numbering).
class NotTotallyHyperbolicError : public Error {
public:
    NotTotallyHyperbolicError(const std::string& what, std::vector<std::size_t> indices)
        : Error(what), indices_(std::move(indices)) {}
    const std::vector<std::size_t>& indices() const { return indices_; }

private:
    std::vector<std::size_t> indices_;
};

// systole engine
struct NormTooSmallError : Error { using Error::Error; };

// descriptor / CLI input
struct DescriptorError : Error { using Error::Error; };

}  // namespace hms
