#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gqae {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands live in incompatible bases (or variables).
class basis_error : public error {
   public:
    using error::error;
};

/// Input violates a documented precondition.
class invalid_input : public error {
   public:
    using error::error;
};

/// A numerical procedure lost too much accuracy to continue.
///
/// `index` identifies where it happened: the failing Cholesky pivot, the
/// worst grid point of a residual check, or the offending outcome.
class conditioning_error : public error {
   public:
    conditioning_error(const std::string& what, std::ptrdiff_t index = -1, double value = 0.0)
        : error(what), index_(index), value_(value) {}

    std::ptrdiff_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

   private:
    std::ptrdiff_t index_;
    double value_;
};

}  // namespace gqae
