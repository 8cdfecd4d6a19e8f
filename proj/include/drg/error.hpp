#pragma once

#include <stdexcept>
#include <string>

namespace drg {

// Exit-code class for the CLI: parameter problems map to 2, numerical
// problems to 3.
enum class ErrorClass { InvalidParameter, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(kind) {}

  ErrorClass error_class() const noexcept { return cls_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorClass cls_;
  std::string kind_;
};

#define DRG_DEFINE_ERROR(Name, Cls)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what)                            \
        : Error(ErrorClass::Cls, #Name, what) {}                      \
  };

DRG_DEFINE_ERROR(AxiomViolation, InvalidParameter)
DRG_DEFINE_ERROR(BadParam, InvalidParameter)
DRG_DEFINE_ERROR(DomainError, InvalidParameter)
DRG_DEFINE_ERROR(TooLarge, InvalidParameter)
DRG_DEFINE_ERROR(NonPrimeField, InvalidParameter)
DRG_DEFINE_ERROR(NumericalFailure, Numerical)
DRG_DEFINE_ERROR(NoConvergence, Numerical)
DRG_DEFINE_ERROR(NegativeCoefficient, Numerical)
DRG_DEFINE_ERROR(NotDistanceRegular, Numerical)
DRG_DEFINE_ERROR(EmbeddingFailure, Numerical)

#undef DRG_DEFINE_ERROR

}  // namespace drg
