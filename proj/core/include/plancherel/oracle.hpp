#pragma once

#include "plancherel/combinatorics.hpp"
#include "plancherel/kernel.hpp"
#include "plancherel/weights.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plancherel {

struct EnumerationSpec {
    int N = 1;
    Window window{-10, 6};
    PlancherelParams params{};
    // Structural checks only (N <= 4, parameters); the boundary-mass test runs during enumeration.
    void validate() const;
};

struct OracleReport {
    double max_abs_error = 0.0;
    std::vector<SpacetimePoint> worst_tuple;
    long tuples_checked = 0;
    double total_mass = 0.0;
    std::string to_json() const;
};

// Largest boundary weight relative to the largest weight; must stay below 1e-12.
inline constexpr double kBoundaryRatio = 1e-12;

std::vector<std::pair<Signature, double>> enum_signatures(const EnumerationSpec& spec);
std::vector<std::pair<GTPath, double>> enum_paths(const EnumerationSpec& spec);
// Streaming form of enum_paths: visits every path with its weight.
void for_each_path(const EnumerationSpec& spec, const std::function<void(const GTPath&, double)>& visit);

double exact_corr(const std::vector<SpacetimePoint>& points, const EnumerationSpec& spec);
// Probability that none of the points is occupied (correlations of the complement).
double exact_corr_complement(const std::vector<SpacetimePoint>& points, const EnumerationSpec& spec);

// Smallest window containing `probe`, grown symmetrically, that passes the boundary test.
Window auto_window(int N, const PlancherelParams& p, const Window& probe);

// Exhaustive 1- and 2-point tuples on the top level within the probe window
// (defaults to spec.window) plus `tuple_budget` random tuples of size <= 3;
// `multi_level` draws the random tuples across levels 1..N, otherwise on level N.
struct CompareOptions {
    KernelKind which = KernelKind::K;
    int tuple_budget = 200;
    std::uint64_t seed = 1;
    bool multi_level = true;
    bool exhaustive = true;
    std::optional<Window> probe;
    KernelSettings kernel{};
};
OracleReport compare(const EnumerationSpec& spec, const CompareOptions& opt);

} // namespace plancherel
