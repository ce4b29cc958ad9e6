#pragma once

#include <stdexcept>
#include <string>

namespace rad {

// Error categories map onto CLI exit codes: verification failures exit 1,
// usage errors exit 2, cap exceedance exits 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& m = "division by zero") : Error(m) {}
};
struct DivisionByZeroDivisor : Error {
    explicit DivisionByZeroDivisor(const std::string& m = "division by a nonzero zero divisor") : Error(m) {}
};
struct NonInvertiblePivot : Error {
    explicit NonInvertiblePivot(const std::string& m = "no invertible pivot available") : Error(m) {}
};
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& m = "dimension cap exceeded") : Error(m) {}
};
struct StepCapExceeded : Error {
    explicit StepCapExceeded(const std::string& m = "rewrite step cap exceeded") : Error(m) {}
};
struct NotInLambda : Error {
    explicit NotInLambda(const std::string& m = "(i,j) not in Lambda_p") : Error(m) {}
};
struct YDViolation : Error {
    explicit YDViolation(const std::string& m = "Yetter-Drinfeld compatibility fails") : Error(m) {}
};
struct IsoCheckFailed : Error {
    explicit IsoCheckFailed(const std::string& m = "isomorphism check failed") : Error(m) {}
};
struct FamilyConstraintViolated : Error {
    explicit FamilyConstraintViolated(const std::string& m = "lifting family constraint violated") : Error(m) {}
};
struct BialgebraAxiomFailed : Error {
    explicit BialgebraAxiomFailed(const std::string& m = "bialgebra axiom failed") : Error(m) {}
};
struct AntipodeNotFound : Error {
    explicit AntipodeNotFound(const std::string& m = "antipode not found") : Error(m) {}
};
struct RelationNotInKernel : Error {
    explicit RelationNotInKernel(const std::string& m = "relation not in the Nichols ideal") : Error(m) {}
};
struct DimMismatch : Error {
    explicit DimMismatch(const std::string& m = "graded dimension mismatch") : Error(m) {}
};
struct UnsupportedP : Error {
    explicit UnsupportedP(const std::string& m = "p outside the supported range") : Error(m) {}
};
struct UsageError : Error {
    explicit UsageError(const std::string& m = "usage error") : Error(m) {}
};

} // namespace rad
