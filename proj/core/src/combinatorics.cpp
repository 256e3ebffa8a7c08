#include "plancherel/combinatorics.hpp"
#include "plancherel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace plancherel {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view tok = text.substr(pos, comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw UsageError("malformed integer list: '" + std::string(text) + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

} // namespace

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw UsageError("signature must have length >= 1");
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
        if (parts_[i] < parts_[i + 1])
            throw UsageError("signature parts must be nonincreasing");
}

Signature Signature::zero(int n) {
    if (n < 1) throw UsageError("signature must have length >= 1");
    return Signature(std::vector<int>(static_cast<std::size_t>(n), 0));
}

Signature Signature::parse(std::string_view text) { return Signature(parse_int_list(text)); }

std::string Signature::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    return os.str();
}

std::vector<int> Signature::positions() const {
    std::vector<int> x(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) x[i] = parts_[i] - static_cast<int>(i) - 1;
    return x;
}

Signature Signature::from_positions(const std::vector<int>& x) {
    std::vector<int> p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + static_cast<int>(i) + 1;
    return Signature(std::move(p));
}

Signature Signature::dual() const {
    std::vector<int> p(parts_.rbegin(), parts_.rend());
    for (int& v : p) v = -v;
    return Signature(std::move(p));
}

GTPath::GTPath(std::vector<Signature> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw UsageError("GT path must have at least one level");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        if (levels_[k].size() != static_cast<int>(k) + 1)
            throw UsageError("GT path level k must have length k");
        if (k > 0 && !interlaces(levels_[k - 1], levels_[k]))
            throw UsageError("GT path levels do not interlace");
    }
}

Window::Window(int lo_, int hi_) : lo(lo_), hi(hi_) {
    if (lo > hi) throw UsageError("window requires lo <= hi");
}

Window Window::parse(std::string_view text) {
    auto v = parse_int_list(text);
    if (v.size() != 2) throw UsageError("window must be 'lo,hi'");
    return Window(v[0], v[1]);
}

void PointConfig::add(int level, int position) {
    if (level < 1) throw UsageError("levels are positive");
    levels[level].insert(position);
}

bool PointConfig::contains(int level, int position) const {
    auto it = levels.find(level);
    return it != levels.end() && it->second.count(position) > 0;
}

std::size_t PointConfig::count() const {
    std::size_t n = 0;
    for (const auto& [lvl, s] : levels) n += s.size();
    return n;
}

bool interlaces(const Signature& lower, const Signature& upper) {
    if (upper.size() != lower.size() + 1)
        throw UsageError("interlaces: upper must be one longer than lower");
    for (int i = 0; i < lower.size(); ++i)
        if (!(upper[i] >= lower[i] && lower[i] >= upper[i + 1])) return false;
    return true;
}

BigInt weyl_dim(const Signature& sig) {
    const auto x = sig.positions();
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            num *= x[i] - x[j];
            den *= static_cast<long>(j - i);
        }
    return num / den;
}

double weyl_dim_double(const Signature& sig) { return weyl_dim(sig).convert_to<double>(); }

YoungDiagramPair split(const Signature& sig) {
    YoungDiagramPair out;
    for (int v : sig.parts())
        if (v > 0) out.plus.push_back(v);
    for (auto it = sig.parts().rbegin(); it != sig.parts().rend(); ++it)
        if (*it < 0) out.minus.push_back(-*it);
    return out;
}

Signature merge(const YoungDiagramPair& pair, int n) {
    if (static_cast<int>(pair.plus.size() + pair.minus.size()) > n)
        throw UsageError("merge: diagrams do not fit in length N");
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    std::copy(pair.plus.begin(), pair.plus.end(), parts.begin());
    for (std::size_t i = 0; i < pair.minus.size(); ++i)
        parts[static_cast<std::size_t>(n) - 1 - i] = -pair.minus[i];
    return Signature(std::move(parts));
}

std::vector<int> transpose(const std::vector<int>& partition) {
    std::vector<int> t(partition.empty() ? 0 : static_cast<std::size_t>(std::max(partition.front(), 0)), 0);
    for (int v : partition)
        for (int j = 0; j < v; ++j) ++t[static_cast<std::size_t>(j)];
    return t;
}

std::pair<std::vector<int>, std::vector<int>> frobenius(const std::vector<int>& partition) {
    for (std::size_t i = 0; i < partition.size(); ++i)
        if (partition[i] < 0 || (i + 1 < partition.size() && partition[i] < partition[i + 1]))
            throw UsageError("frobenius: not a partition");
    const auto t = transpose(partition);
    std::vector<int> p, q;
    for (std::size_t i = 0; i < partition.size() && partition[i] > static_cast<int>(i); ++i) {
        p.push_back(partition[i] - static_cast<int>(i) - 1);
        q.push_back(t[i] - static_cast<int>(i) - 1);
    }
    return {p, q};
}

PointConfig config_of_signature(const Signature& sig) {
    PointConfig cfg;
    cfg.levels[sig.size()];
    for (int x : sig.positions()) cfg.add(sig.size(), x);
    return cfg;
}

PointConfig config_of_path(const GTPath& path) {
    PointConfig cfg;
    for (const auto& s : path.levels()) {
        cfg.levels[s.size()];
        for (int x : s.positions()) cfg.add(s.size(), x);
    }
    return cfg;
}

PointConfig complement_in_window(const PointConfig& cfg, const Window& w) {
    PointConfig out;
    for (const auto& [lvl, pts] : cfg.levels) {
        auto& dst = out.levels[lvl];
        for (int x = w.lo; x <= w.hi; ++x)
            if (!pts.count(x)) dst.insert(x);
    }
    return out;
}

std::vector<Signature> lower_neighbours(const Signature& upper) {
    const int n = upper.size() - 1;
    if (n < 1) throw UsageError("lower_neighbours: upper must have length >= 2");
    std::vector<Signature> out;
    std::vector<int> cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.emplace_back(cur);
            return;
        }
        for (int v = upper[i + 1]; v <= upper[i]; ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace plancherel
