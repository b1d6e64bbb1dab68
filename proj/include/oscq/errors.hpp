#pragma once

#include <stdexcept>
#include <string>

namespace oscq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateParameter : Error { using Error::Error; };
struct UnboundParameter : Error { using Error::Error; };
struct InconsistentRoot : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };
struct IncompleteRewriteSystem : Error { using Error::Error; };
struct IncompatibleRelation : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct InvalidRealization : Error { using Error::Error; };
struct InvalidVariant : Error { using Error::Error; };
struct UnexpectedKernel : Error { using Error::Error; };
struct TruncationRisk : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace oscq
