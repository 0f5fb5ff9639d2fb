#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "divbound/expfam.hpp"
#include "divbound/quadrature.hpp"

// Randomized and grid sweeps over the bound inequalities. Cases are generated
// deterministically from the seed and reported in index order.
namespace divbound::sweep {

struct Case {
    int index = 0;
    std::string label;
    std::vector<std::pair<std::string, double>> inputs;
    double lhs = 0.0;     // e.g. divergence
    double rhs = 0.0;     // e.g. bound
    double margin = 0.0;  // lhs - rhs
    double tolerance = 0.0;
    bool pass = false;
    std::string error;  // non-empty when the case raised
};

struct Result {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Case> cases;
    int failures() const;
};

const std::vector<std::string>& suite_names();

// Per-case generator: case i of a seeded run always sees the same stream.
std::mt19937_64 case_rng(std::uint64_t seed, int index);
// Uniform on [0, 1) from the top 53 bits; stable across standard libraries.
double uniform01(std::mt19937_64& rng);

struct FamilyDraw {
    expfam::AnalyticFamily family;
    double mu;
    double nu;
};
const std::vector<expfam::FamilyKind>& all_family_kinds();
// Random parameters for the given family and two means inside its mean
// domain, kept in ranges where the quadrature routes are well conditioned.
FamilyDraw draw_family(expfam::FamilyKind kind, std::mt19937_64& rng);

// cases <= 0 selects the suite default.
Result run(const std::string& suite, std::uint64_t seed, int cases = 0, int nodes = numerics::default_node_count());

}  // namespace divbound::sweep
