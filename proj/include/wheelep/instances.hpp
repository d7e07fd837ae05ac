#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "wheelep/errors.hpp"
#include "wheelep/graph.hpp"

namespace wheelep {

struct FamilySpec;

struct WheelSpec {
    int t = 3;
};
struct UnionSpec {
    std::shared_ptr<const FamilySpec> h;
    int k = 1;
};
struct GridSpec {
    int r = 2;
};
struct GnpSpec {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};
struct RrgSpec {
    int n = 0;
    int d = 3;
    int gmin = 3;
    std::uint64_t seed = 0;
    int attempts = 200;
};
struct CompleteSpec {
    int n = 1;
};

/// A generator request. String forms:
///   wheel:t=3   union:h=wheel:t=3,k=2   grid:r=4   complete:n=5
///   gnp:n=14,p=0.3,seed=7   rrg:n=24,d=3,g=6,seed=1[,attempts=200]
struct FamilySpec {
    std::variant<WheelSpec, UnionSpec, GridSpec, GnpSpec, RrgSpec, CompleteSpec> params;

    /// Short family name: wheel, union, grid, gnp, rrg, complete.
    std::string family() const;
    /// Canonical spec string; parse_family_spec(to_string()) round-trips.
    std::string to_string() const;
    /// Throws SpecError on out-of-range parameters.
    void validate() const;
    /// True if the family draws from the seeded generator.
    bool seeded() const;
    /// Copy with the seed replaced (no-op for deterministic families).
    FamilySpec with_seed(std::uint64_t seed) const;
};

class SpecError : public ParseError {
public:
    using ParseError::ParseError;
};

class GenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FamilySpec parse_family_spec(std::string_view text);

/// Deterministic in the spec, including the seed. Throws GenerationFailed if
/// rrg runs out of attempts.
Graph generate(const FamilySpec& spec);

Graph grid_graph(int r);
Graph wheel_graph(int t);

}  // namespace wheelep
