#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace threshforge {

/// One element of the 8-bit intensity space with wrapping arithmetic.
struct IntensityElement {
    std::uint8_t value = 0;
};

inline IntensityElement add(IntensityElement a, IntensityElement b) {
    return {static_cast<std::uint8_t>(a.value + b.value)};
}
inline IntensityElement mul(IntensityElement a, IntensityElement b) {
    return {static_cast<std::uint8_t>(a.value * b.value)};
}
inline IntensityElement neg(IntensityElement a) {
    return {static_cast<std::uint8_t>(256 - a.value)};
}

/// Operation tables over [0,255]. The verifier works on tables rather
/// than fixed functions so tests can inject deliberately broken entries.
struct RingOps {
    std::vector<std::uint8_t> add_table;  // 256*256, index a*256+b
    std::vector<std::uint8_t> mul_table;

    static RingOps mod256();

    std::uint8_t add(int a, int b) const { return add_table[a * 256 + b]; }
    std::uint8_t mul(int a, int b) const { return mul_table[a * 256 + b]; }
};

struct Counterexample {
    int a = 0;
    int b = 0;
    int c = 0;
    bool ternary = false;
    int lhs = 0;
    int rhs = 0;
};

struct AxiomCheck {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::optional<Counterexample> first_failure;
};

struct AxiomReport {
    std::string mode;  // "exhaustive" or "sampled"
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomCheck> axioms;
    bool all_passed = false;
};

/// Checks additive closure, commutativity, associativity, identity and
/// inverse, multiplicative closure, associativity and identity, and
/// both distributive laws, plus multiplicative commutativity (which
/// holds here but is not a ring axiom). Exhaustive mode iterates all
/// 256^2 pairs and 256^3 triples in lexicographic order, so the first
/// recorded counterexample is deterministic.
AxiomReport verify_ring_axioms_exhaustive(const RingOps& ops = RingOps::mod256());

/// Same axiom families on n seeded random samples each.
AxiomReport verify_ring_axioms_sampled(std::uint64_t n, std::uint64_t seed,
                                       const RingOps& ops = RingOps::mod256());

}  // namespace threshforge
