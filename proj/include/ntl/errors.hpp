#pragma once
// Error types shared across the library. Each maps to one named failure mode.

#include <stdexcept>
#include <string>

namespace ntl {

struct NtlError : std::runtime_error {
    explicit NtlError(const std::string& msg) : std::runtime_error(msg) {}
};

// tree construction / enumeration
struct SizeLimitExceeded : NtlError { using NtlError::NtlError; };

// morphisms
struct NotAPremorphism : NtlError { using NtlError::NtlError; };
struct NotAnEdge : NtlError { using NtlError::NtlError; };
struct NotSurjective : NtlError { using NtlError::NtlError; };
struct NotAMorphism : NtlError { using NtlError::NtlError; };

// orders
struct NotATipPermutation : NtlError { using NtlError::NtlError; };
struct IncompatibleOrder : NtlError { using NtlError::NtlError; };
struct UnstableLabeledTree : NtlError { using NtlError::NtlError; };
struct TipWithoutLabel : NtlError { using NtlError::NtlError; };

// automorphisms
struct NotAnAutomorphism : NtlError { using NtlError::NtlError; };

// mobius
struct SingularMatrix : NtlError { using NtlError::NtlError; };
struct DegenerateTriple : NtlError { using NtlError::NtlError; };
struct SaturationDiverged : NtlError { using NtlError::NtlError; };
struct Unclassifiable : NtlError { using NtlError::NtlError; };

// moduli
struct DegenerateConfig : NtlError { using NtlError::NtlError; };
struct InvalidCoordinates : NtlError { using NtlError::NtlError; };
struct MissingDoubleValue : NtlError { using NtlError::NtlError; };

// energy
struct NonFiniteValue : NtlError { using NtlError::NtlError; };
struct ConstantMap : NtlError { using NtlError::NtlError; };
struct NotConstant : NtlError { using NtlError::NtlError; };

}  // namespace ntl
