#include "plancherel/combinatorics.hpp"
#include "plancherel/errors.hpp"

#include <doctest.h>

#include <functional>

using namespace plancherel;

namespace {

// Number of GT patterns with top row `top`, by recursion over lower neighbours.
long count_patterns(const Signature& top) {
    if (top.size() == 1) return 1;
    long n = 0;
    for (const auto& s : lower_neighbours(top)) n += count_patterns(s);
    return n;
}

} // namespace

TEST_CASE("signature text round trip and validation") {
    auto s = Signature::parse("4,2,0,0,-1,-3");
    CHECK(s.size() == 6);
    CHECK(s.to_string() == "4,2,0,0,-1,-3");
    CHECK_THROWS_AS(Signature::parse("1,2"), UsageError);
    CHECK_THROWS_AS(Signature::parse(""), UsageError);
    CHECK_THROWS_AS(Signature::parse("1,x"), UsageError);
}

TEST_CASE("positions are lambda_i - i and invert") {
    auto s = Signature::parse("2,0,-1");
    CHECK(s.positions() == std::vector<int>{1, -2, -4});
    CHECK(Signature::from_positions(s.positions()) == s);
    CHECK(Signature::zero(3).positions() == std::vector<int>{-1, -2, -3});
}

TEST_CASE("Weyl dimension on known representations") {
    CHECK(weyl_dim(Signature::parse("0,0,0")) == 1);
    CHECK(weyl_dim(Signature::parse("1,0")) == 2);
    CHECK(weyl_dim(Signature::parse("2,0,0")) == 6);
    CHECK(weyl_dim(Signature::parse("1,0,-1")) == 8);
    CHECK(weyl_dim(Signature::parse("5")) == 1);
    // twisting by det does not change the dimension
    CHECK(weyl_dim(Signature::parse("3,1,-2")) == weyl_dim(Signature::parse("5,3,0")));
    CHECK(weyl_dim(Signature::parse("3,1,-2")) == weyl_dim(Signature::parse("3,1,-2").dual()));
}

TEST_CASE("dimension equals the number of Gelfand-Tsetlin patterns") {
    for (const char* t : {"2,0", "3,1,0", "2,1,-1", "1,1,0,-2", "3,0,-1,-1"}) {
        auto s = Signature::parse(t);
        CHECK(BigInt(count_patterns(s)) == weyl_dim(s));
    }
}

TEST_CASE("interlacing direction") {
    auto up = Signature::parse("3,1,0");
    CHECK(interlaces(Signature::parse("2,1"), up));
    CHECK(interlaces(Signature::parse("3,0"), up));
    CHECK_FALSE(interlaces(Signature::parse("4,0"), up));
    CHECK_FALSE(interlaces(Signature::parse("2,-1"), up));
    CHECK_THROWS_AS(GTPath({Signature::parse("4"), up}), UsageError);
}

TEST_CASE("split and merge") {
    auto s = Signature::parse("4,2,0,0,-1,-3");
    auto p = split(s);
    CHECK(p.plus == std::vector<int>{4, 2});
    CHECK(p.minus == std::vector<int>{3, 1});
    CHECK(merge(p, 6) == s);
    CHECK_THROWS_AS(merge(p, 3), UsageError);
}

TEST_CASE("Frobenius coordinates and transpose") {
    auto [p, q] = frobenius({4, 3, 1});
    CHECK(p == std::vector<int>{3, 1});
    CHECK(q == std::vector<int>{2, 0});
    CHECK(transpose({4, 3, 1}) == std::vector<int>{3, 2, 2, 1});
    CHECK(transpose(transpose({5, 2, 2})) == std::vector<int>{5, 2, 2});
    CHECK_THROWS_AS(frobenius({1, 2}), UsageError);
}

TEST_CASE("point configurations and complements") {
    auto cfg = config_of_signature(Signature::parse("1,0"));
    CHECK(cfg.contains(2, 0));
    CHECK(cfg.contains(2, -2));
    CHECK(cfg.count() == 2);
    auto comp = complement_in_window(cfg, Window(-3, 1));
    CHECK(comp.count() == 3);
    CHECK_FALSE(comp.contains(2, 0));
    GTPath path({Signature::parse("1"), Signature::parse("1,0")});
    auto pc = config_of_path(path);
    CHECK(pc.contains(1, 0));
    CHECK(pc.count() == 3);
}

TEST_CASE("window parsing") {
    auto w = Window::parse("-10,6");
    CHECK(w.lo == -10);
    CHECK(w.hi == 6);
    CHECK(w.width() == 17);
    CHECK_THROWS_AS(Window::parse("3,1"), UsageError);
    CHECK_THROWS_AS(Window::parse("3"), UsageError);
}
