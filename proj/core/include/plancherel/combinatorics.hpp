#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plancherel {

using BigInt = boost::multiprecision::cpp_int;

// Highest weight of U(N): a nonincreasing integer vector of length N >= 1.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<int> parts);

    static Signature zero(int n);
    // "4,2,0,0,-1,-3"
    static Signature parse(std::string_view text);

    int size() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& parts() const { return parts_; }
    std::string to_string() const;

    // x_i = lambda_i - i, i = 1..N (strictly decreasing).
    std::vector<int> positions() const;
    static Signature from_positions(const std::vector<int>& x);

    // lambda -> (-lambda_N, ..., -lambda_1): swaps the two Young diagrams.
    Signature dual() const;

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;

private:
    std::vector<int> parts_;
};

struct YoungDiagramPair {
    std::vector<int> plus;
    std::vector<int> minus;
    friend bool operator==(const YoungDiagramPair&, const YoungDiagramPair&) = default;
};

// Gelfand-Tsetlin pattern: levels[k-1] has length k and consecutive levels interlace.
class GTPath {
public:
    GTPath() = default;
    explicit GTPath(std::vector<Signature> levels);

    int depth() const { return static_cast<int>(levels_.size()); }
    const Signature& level(int k) const { return levels_[static_cast<std::size_t>(k - 1)]; }
    const std::vector<Signature>& levels() const { return levels_; }
    const Signature& top() const { return levels_.back(); }

private:
    std::vector<Signature> levels_;
};

struct Window {
    int lo = 0;
    int hi = 0;
    Window() = default;
    Window(int lo_, int hi_);
    int width() const { return hi - lo + 1; }
    bool contains(int x) const { return lo <= x && x <= hi; }
    static Window parse(std::string_view text);
};

// Points grouped by level. A level may be present with no points.
struct PointConfig {
    std::map<int, std::set<int>> levels;

    void add(int level, int position);
    bool contains(int level, int position) const;
    std::size_t count() const;
    friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

bool interlaces(const Signature& lower, const Signature& upper);
BigInt weyl_dim(const Signature& sig);
double weyl_dim_double(const Signature& sig);

YoungDiagramPair split(const Signature& sig);
Signature merge(const YoungDiagramPair& pair, int n);
std::pair<std::vector<int>, std::vector<int>> frobenius(const std::vector<int>& partition);
std::vector<int> transpose(const std::vector<int>& partition);

PointConfig config_of_signature(const Signature& sig);
PointConfig config_of_path(const GTPath& path);
PointConfig complement_in_window(const PointConfig& cfg, const Window& w);

// All signatures of length N interlacing with `upper` (length N+1) from below.
std::vector<Signature> lower_neighbours(const Signature& upper);

} // namespace plancherel
