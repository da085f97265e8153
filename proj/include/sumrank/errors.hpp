#pragma once

#include <stdexcept>
#include <string>

namespace sumrank {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrime : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct ScaleExceeded : Error { using Error::Error; };
struct NotSpanning : Error { using Error::Error; };
struct DegenerateExtension : Error { using Error::Error; };
struct NormClash : Error { using Error::Error; };
struct GcdViolation : Error { using Error::Error; };
struct NotScattered : Error { using Error::Error; };
struct NotDisjoint : Error { using Error::Error; };
struct CoversSpace : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct NotMSRD : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Cap on exhaustive enumeration loops (subspaces, codewords, points).
// Overridable through the CLI --cap flag or the SUMRANK_CAP environment
// variable; library code reads it through scale_cap().
inline std::uint64_t& scale_cap_ref() {
    static std::uint64_t cap = 1000000;
    return cap;
}

inline std::uint64_t scale_cap() { return scale_cap_ref(); }
inline void set_scale_cap(std::uint64_t cap) { scale_cap_ref() = cap; }

inline void guard_scale(std::uint64_t count, const char* what) {
    if (count > scale_cap())
        throw ScaleExceeded(std::string(what) + ": " + std::to_string(count) +
                            " items exceeds cap " + std::to_string(scale_cap()));
}

}  // namespace sumrank
