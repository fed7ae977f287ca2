#pragma once

#include <stdexcept>
#include <string>

namespace auxeig
{

// The CLI maps these onto process exit codes:
// ConfigurationError -> 1, SolverError/MatrixError -> 2, InvariantViolation -> 3.

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ConfigurationError : public Error
{
public:
  using Error::Error;
};

class GeometryError : public Error
{
public:
  using Error::Error;
};

class MatrixError : public Error
{
public:
  using Error::Error;
};

class SolverError : public Error
{
public:
  using Error::Error;
};

class NumericalError : public Error
{
public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. x <= 0 for J_nu).
class DomainError : public Error
{
public:
  using Error::Error;
};

// Request beyond what the implementation can vouch for.
class CapabilityError : public Error
{
public:
  using Error::Error;
};

// Division by a vanishing spectral distance.
class PoleError : public Error
{
public:
  using Error::Error;
};

class ContractViolation : public Error
{
public:
  using Error::Error;
};

class InvariantViolation : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

#define AUXEIG_REQUIRE(cond, ExcType, msg)                                                   \
  do                                                                                       \
  {                                                                                        \
    if (!(cond))                                                                           \
    {                                                                                      \
      throw ExcType(std::string(msg));                                                     \
    }                                                                                      \
  } while (false)

}  // namespace auxeig
