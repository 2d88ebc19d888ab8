#pragma once

#include <stdexcept>
#include <string>

namespace randbound {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension / shape mismatch between vectors, matrices, or spaces.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact computation refused because it would exceed the enumeration budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Operation invoked outside its contract (wrong family shape, wrong space kind).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Witness whose denominator vanishes while the numerator does not.
class DegenerateWitnessError : public Error {
public:
    using Error::Error;
};

} // namespace randbound
