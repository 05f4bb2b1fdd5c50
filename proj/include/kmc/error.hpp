#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kmc {

/// Base class for every error raised by the library. `kind()` is the stable
/// name used in CLI messages and JSON output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define KMC_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    }

// input / classification
KMC_DEFINE_ERROR(SyntaxError);
KMC_DEFINE_ERROR(AxiomViolation);
KMC_DEFINE_ERROR(NotRank3);
KMC_DEFINE_ERROR(DecomposableInput);
KMC_DEFINE_ERROR(FiniteTypeInput);
KMC_DEFINE_ERROR(NotPrime);
KMC_DEFINE_ERROR(PreconditionViolation);

// linear algebra / lattice
KMC_DEFINE_ERROR(FieldMismatch);
KMC_DEFINE_ERROR(TruncationMismatch);
KMC_DEFINE_ERROR(NotASubspace);

// group action
KMC_DEFINE_ERROR(InfiniteGroup);
KMC_DEFINE_ERROR(ModularNotSupported);

// invariants and assembly
KMC_DEFINE_ERROR(UnexpectedDimension);
KMC_DEFINE_ERROR(PairNotInfinite);
KMC_DEFINE_ERROR(ClassIVUnverifiedConjecture);
KMC_DEFINE_ERROR(InternalInconsistency);

#undef KMC_DEFINE_ERROR

} // namespace kmc
