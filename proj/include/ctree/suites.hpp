#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctree/coding_tree.hpp"

namespace ctree {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    /// First few failure descriptions.
    std::vector<std::string> failures;

    bool ok() const noexcept { return failed == 0; }
};

/// Trichotomy, antisymmetry and transitivity of compare on random pairs and triples.
SuiteResult order_suite(const CodingTree& t, std::uint64_t seed, std::size_t trials = 1000);

/// Witnesses for random anchor pairs: order preservation, landing in the
/// matching Gamma set, and inverse round trips on points below f.
SuiteResult transitivity_suite(const CodingTree& t, std::uint64_t seed, std::size_t anchors = 20,
                               std::size_t probes = 1000);

/// invariance_check on every level, plus the refinement chain of level_equiv.
SuiteResult invariance_suite(const CodingTree& t, std::uint64_t seed, std::size_t samples = 200);

}  // namespace ctree
