#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace extwb {

using u8 = uint8_t;
using u16 = uint16_t;
using u32 = uint32_t;
using u64 = uint64_t;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* a computation refused to run past its configured memory/size cap */
struct ResourceCap : Error {
    explicit ResourceCap(const std::string& msg) : Error(msg) {}
};

/* reduce_class was handed a chain that is not a cycle */
struct NotACycle : Error {
    explicit NotACycle(const std::string& msg) : Error(msg) {}
};

/* massey bracket not strictly defined; names the stage that failed */
struct BracketUndefined : Error {
    explicit BracketUndefined(const std::string& msg) : Error(msg) {}
};

/* connecting homomorphism: lifted chain's boundary left the sub-object span */
struct LiftLeak : Error {
    explicit LiftLeak(const std::string& msg) : Error(msg) {}
};

/* cell subset is not closed under the ambient Steenrod action */
struct ClosureViolation : Error {
    explicit ClosureViolation(const std::string& msg) : Error(msg) {}
};

/* transfer asked for on a spectrum that is not a stunted projective space */
struct NotPSpectrum : Error {
    explicit NotPSpectrum(const std::string& msg) : Error(msg) {}
};

}  // namespace extwb
