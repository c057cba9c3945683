#include "threshforge/ringcheck.hpp"

#include "threshforge/parallel.hpp"
#include "threshforge/rng.hpp"

#include <utility>

namespace threshforge {

namespace {

bool before(const Counterexample& x, const Counterexample& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
}

void record(AxiomCheck& check, const Counterexample& ce) {
    ++check.failures;
    if (!check.first_failure || before(ce, *check.first_failure)) {
        check.first_failure = ce;
    }
}

// Binary axioms scan all 256^2 pairs; c stays -1 in counterexamples.
template <typename Lhs, typename Rhs>
AxiomCheck check_pairs(std::string name, Lhs lhs, Rhs rhs) {
    AxiomCheck check;
    check.name = std::move(name);
    for (int a = 0; a < 256; ++a) {
        for (int b = 0; b < 256; ++b) {
            ++check.checks;
            const int l = lhs(a, b);
            const int r = rhs(a, b);
            if (l != r) record(check, {a, b, -1, false, l, r});
        }
    }
    return check;
}

// Ternary axioms shard the 256^3 cube over threads by the leading
// element; the merged first failure is the lexicographically least.
template <typename Lhs, typename Rhs>
AxiomCheck check_triples(std::string name, Lhs lhs, Rhs rhs) {
    AxiomCheck check;
    check.name = std::move(name);
    check.checks = 256ull * 256ull * 256ull;

    std::vector<AxiomCheck> shards(256);
    parallel_for(256, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a) {
            AxiomCheck& shard = shards[a];
            for (int b = 0; b < 256; ++b) {
                for (int c = 0; c < 256; ++c) {
                    const int l = lhs(static_cast<int>(a), b, c);
                    const int r = rhs(static_cast<int>(a), b, c);
                    if (l != r) {
                        record(shard, {static_cast<int>(a), b, c, true, l, r});
                    }
                }
            }
        }
    });

    for (const AxiomCheck& shard : shards) {
        check.failures += shard.failures;
        if (shard.first_failure &&
            (!check.first_failure || before(*shard.first_failure, *check.first_failure))) {
            check.first_failure = shard.first_failure;
        }
    }
    return check;
}

template <typename Pred>
AxiomCheck check_elements(std::string name, Pred pred) {
    AxiomCheck check;
    check.name = std::move(name);
    for (int a = 0; a < 256; ++a) {
        ++check.checks;
        Counterexample ce{a, -1, -1, false, 0, 0};
        if (!pred(a, ce)) record(check, ce);
    }
    return check;
}

std::vector<AxiomCheck> run_axioms(const RingOps& ops, bool exhaustive, std::uint64_t n,
                                   std::uint64_t seed) {
    const auto in_range = [](int v) { return v >= 0 && v <= 255; };

    const auto add_closed = [&](int a, int b) { return in_range(ops.add(a, b)) ? 1 : 0; };
    const auto mul_closed = [&](int a, int b) { return in_range(ops.mul(a, b)) ? 1 : 0; };
    const auto one = [](int, int) { return 1; };

    const auto add_ab = [&](int a, int b) { return static_cast<int>(ops.add(a, b)); };
    const auto add_ba = [&](int a, int b) { return static_cast<int>(ops.add(b, a)); };
    const auto mul_ab = [&](int a, int b) { return static_cast<int>(ops.mul(a, b)); };
    const auto mul_ba = [&](int a, int b) { return static_cast<int>(ops.mul(b, a)); };

    const auto add_assoc_l = [&](int a, int b, int c) {
        return static_cast<int>(ops.add(ops.add(a, b), c));
    };
    const auto add_assoc_r = [&](int a, int b, int c) {
        return static_cast<int>(ops.add(a, ops.add(b, c)));
    };
    const auto mul_assoc_l = [&](int a, int b, int c) {
        return static_cast<int>(ops.mul(ops.mul(a, b), c));
    };
    const auto mul_assoc_r = [&](int a, int b, int c) {
        return static_cast<int>(ops.mul(a, ops.mul(b, c)));
    };
    const auto dist_left_l = [&](int a, int b, int c) {
        return static_cast<int>(ops.mul(a, ops.add(b, c)));
    };
    const auto dist_left_r = [&](int a, int b, int c) {
        return static_cast<int>(ops.add(ops.mul(a, b), ops.mul(a, c)));
    };
    const auto dist_right_l = [&](int a, int b, int c) {
        return static_cast<int>(ops.mul(ops.add(a, b), c));
    };
    const auto dist_right_r = [&](int a, int b, int c) {
        return static_cast<int>(ops.add(ops.mul(a, c), ops.mul(b, c)));
    };

    const auto add_identity = [&](int a, Counterexample& ce) {
        ce.lhs = ops.add(a, 0);
        ce.rhs = ops.add(0, a);
        return ce.lhs == a && ce.rhs == a;
    };
    const auto add_inverse = [&](int a, Counterexample& ce) {
        for (int b = 0; b < 256; ++b) {
            if (ops.add(a, b) == 0) {
                ce.b = b;
                return true;
            }
        }
        return false;
    };
    const auto mul_identity = [&](int a, Counterexample& ce) {
        ce.lhs = ops.mul(a, 1);
        ce.rhs = ops.mul(1, a);
        return ce.lhs == a && ce.rhs == a;
    };

    if (exhaustive) {
        return {
            check_pairs("additive_closure", add_closed, one),
            check_pairs("additive_commutativity", add_ab, add_ba),
            check_triples("additive_associativity", add_assoc_l, add_assoc_r),
            check_elements("additive_identity", add_identity),
            check_elements("additive_inverse", add_inverse),
            check_pairs("multiplicative_closure", mul_closed, one),
            check_triples("multiplicative_associativity", mul_assoc_l, mul_assoc_r),
            check_elements("multiplicative_identity", mul_identity),
            check_triples("left_distributivity", dist_left_l, dist_left_r),
            check_triples("right_distributivity", dist_right_l, dist_right_r),
            check_pairs("multiplicative_commutativity", mul_ab, mul_ba),
        };
    }

    SplitMix64 rng(seed);
    const auto sample_pairs = [&](std::string name, auto lhs, auto rhs) {
        AxiomCheck check;
        check.name = std::move(name);
        for (std::uint64_t i = 0; i < n; ++i) {
            const int a = static_cast<int>(rng.next_below(256));
            const int b = static_cast<int>(rng.next_below(256));
            ++check.checks;
            const int l = lhs(a, b);
            const int r = rhs(a, b);
            if (l != r) record(check, {a, b, -1, false, l, r});
        }
        return check;
    };
    const auto sample_triples = [&](std::string name, auto lhs, auto rhs) {
        AxiomCheck check;
        check.name = std::move(name);
        for (std::uint64_t i = 0; i < n; ++i) {
            const int a = static_cast<int>(rng.next_below(256));
            const int b = static_cast<int>(rng.next_below(256));
            const int c = static_cast<int>(rng.next_below(256));
            ++check.checks;
            const int l = lhs(a, b, c);
            const int r = rhs(a, b, c);
            if (l != r) record(check, {a, b, c, true, l, r});
        }
        return check;
    };
    const auto sample_elements = [&](std::string name, auto pred) {
        AxiomCheck check;
        check.name = std::move(name);
        for (std::uint64_t i = 0; i < n; ++i) {
            const int a = static_cast<int>(rng.next_below(256));
            ++check.checks;
            Counterexample ce{a, -1, -1, false, 0, 0};
            if (!pred(a, ce)) record(check, ce);
        }
        return check;
    };

    return {
        sample_pairs("additive_closure", add_closed, one),
        sample_pairs("additive_commutativity", add_ab, add_ba),
        sample_triples("additive_associativity", add_assoc_l, add_assoc_r),
        sample_elements("additive_identity", add_identity),
        sample_elements("additive_inverse", add_inverse),
        sample_pairs("multiplicative_closure", mul_closed, one),
        sample_triples("multiplicative_associativity", mul_assoc_l, mul_assoc_r),
        sample_elements("multiplicative_identity", mul_identity),
        sample_triples("left_distributivity", dist_left_l, dist_left_r),
        sample_triples("right_distributivity", dist_right_l, dist_right_r),
        sample_pairs("multiplicative_commutativity", mul_ab, mul_ba),
    };
}

}  // namespace

RingOps RingOps::mod256() {
    RingOps ops;
    ops.add_table.resize(256 * 256);
    ops.mul_table.resize(256 * 256);
    for (int a = 0; a < 256; ++a) {
        for (int b = 0; b < 256; ++b) {
            ops.add_table[a * 256 + b] = static_cast<std::uint8_t>((a + b) & 0xff);
            ops.mul_table[a * 256 + b] = static_cast<std::uint8_t>((a * b) & 0xff);
        }
    }
    return ops;
}

AxiomReport verify_ring_axioms_exhaustive(const RingOps& ops) {
    AxiomReport report;
    report.mode = "exhaustive";
    report.axioms = run_axioms(ops, true, 0, 0);
    report.all_passed = true;
    for (const AxiomCheck& check : report.axioms) {
        if (check.failures != 0) report.all_passed = false;
    }
    return report;
}

AxiomReport verify_ring_axioms_sampled(std::uint64_t n, std::uint64_t seed,
                                       const RingOps& ops) {
    AxiomReport report;
    report.mode = "sampled";
    report.sample_size = n;
    report.seed = seed;
    report.axioms = run_axioms(ops, false, n, seed);
    report.all_passed = true;
    for (const AxiomCheck& check : report.axioms) {
        if (check.failures != 0) report.all_passed = false;
    }
    return report;
}

}  // namespace threshforge
