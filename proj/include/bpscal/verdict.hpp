#pragma once

#include <optional>
#include <string>

#include "point.hpp"

namespace bpscal {

enum class Verdict { Holds, HoldsOnSamples, Fails };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::HoldsOnSamples: return "holds-on-samples";
    case Verdict::Fails: return "fails";
    }
    return "?";
}

inline bool passed(Verdict v) noexcept { return v != Verdict::Fails; }

/// Outcome of a sampled or exact check, with a counterexample when it fails.
struct CheckResult {
    Verdict verdict = Verdict::HoldsOnSamples;
    std::optional<Point> witness;
    std::string detail;
    std::size_t samples = 0;
};

struct SamplingOptions {
    std::size_t density = 0; // 0 selects 64 * n
    std::uint64_t seed = 1;

    std::size_t resolved(std::size_t n) const { return density ? density : 64 * n; }
};

} // namespace bpscal
