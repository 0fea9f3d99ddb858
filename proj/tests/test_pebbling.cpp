#include <pebble/pebbling.hpp>

#include <doctest.h>

#include <random>

using namespace pebble;

TEST_CASE("moves")
{
    auto p2 = gen::path(2);
    CHECK(apply_moves(p2, Configuration({2, 0}), {{0, 1}}).counts() == std::vector<int>{0, 1});

    auto p3 = gen::path(3);
    auto end = apply_moves(p3, Configuration({4, 0, 0}), {{0, 1}, {0, 1}, {1, 2}});
    CHECK(end.counts() == std::vector<int>{0, 0, 1});
    CHECK(end.size() == 1);

    Configuration c({3, 1, 4});
    CHECK(apply_moves(p3, c, {}) == c);

    CHECK_THROWS_AS(apply_moves(p3, Configuration({1, 0, 0}), {{0, 1}}), IllegalMove);
    CHECK_THROWS_AS(apply_moves(p3, Configuration({4, 0, 0}), {{0, 2}}), IllegalMove);
}

TEST_CASE("solvability")
{
    // star with centre v1, root v2
    auto star = gen::star(3);
    CHECK(is_solvable(star, Configuration({0, 0, 2, 2}), 1));
    CHECK_FALSE(is_solvable(star, Configuration({0, 0, 1, 3}), 1));
    CHECK_FALSE(is_solvable(star, Configuration({0, 0, 3, 1}), 1));

    for (int n = 2; n <= 7; ++n) {
        auto p = gen::path(n);
        Configuration full(n), short_by_one(n);
        full.set(n - 1, 1 << (n - 1));
        short_by_one.set(n - 1, (1 << (n - 1)) - 1);
        auto moves = solve(p, full, 0);
        REQUIRE(moves);
        CHECK(apply_moves(p, full, *moves)[0] >= 1);
        CHECK_FALSE(is_solvable(p, short_by_one, 0));
    }

    Configuration big(4);
    big.set(3, 100);
    CHECK_THROWS_AS(is_solvable(gen::path(4), big, 0), ScaleGuardError);
    CHECK_THROWS_AS(is_solvable(gen::cube(4), Configuration(16), 0), ScaleGuardError);
}

TEST_CASE("witnesses replay and monotonicity")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);
        auto g = gen::random_connected(n, 0.45, rng());
        int root = static_cast<int>(rng() % n);
        Configuration c(n);
        for (int v = 0; v < n; ++v)
            if (v != root)
                c.set(v, static_cast<int>(rng() % 4));
        auto moves = solve(g, c, root);
        if (moves) {
            CHECK(apply_moves(g, c, *moves)[root] >= 1);
            auto more = c;
            more.add(static_cast<int>(rng() % n), 1);
            CHECK(is_solvable(g, more, root));
        }
        else if (c.size() > 0) {
            auto less = c;
            for (int v = 0; v < n; ++v)
                if (less[v] > 0) {
                    less.add(v, -1);
                    break;
                }
            CHECK_FALSE(is_solvable(g, less, root));
        }
    }
}

TEST_CASE("exact pebbling numbers")
{
    for (int n = 1; n <= 6; ++n)
        CHECK(pebbling_number(gen::path(n)) == 1 << (n - 1));

    // 2^k for C_2k, 2 floor(2^{k+1}/3) + 1 for C_{2k+1}
    const int cycles[] = {0, 0, 0, 3, 4, 5, 8, 11, 16, 21};
    for (int n = 3; n <= 9; ++n)
        CHECK(pebbling_number(gen::cycle(n)) == cycles[n]);

    CHECK(pebbling_number_exact(gen::star(3), 1).pi == 5);
    CHECK(pebbling_number_exact(gen::star(3), 0).pi == 4);
    CHECK(pebbling_number(gen::cube(3)) == 8);
    CHECK(pebbling_number(gen::lemke()) == 8);
    CHECK(pebbling_number(gen::complete(5)) == 5);

    auto petersen = pebbling_number_exact(gen::petersen(), 0);
    CHECK(petersen.pi == 10);
    CHECK(petersen.witness.size() == 9);
    CHECK(petersen.witness[0] == 0);
}

TEST_CASE("exact witness is the lexicographically smallest maximum unsolvable configuration")
{
    auto star = gen::star(3);
    auto result = pebbling_number_exact(star, 1);
    CHECK(result.witness.counts() == std::vector<int>{0, 0, 1, 3});

    auto p = gen::path(4);
    auto again = pebbling_number_exact(p, 0);
    CHECK(again.witness.counts() == std::vector<int>{0, 0, 0, 7});
    CHECK(pebbling_number_exact(p, 0).witness == again.witness);

    int maximal = 0;
    for_each_unsolvable(star, 1, [&](const Configuration & c) {
        CHECK(c[1] == 0);
        maximal += c.size() == 4;
        return true;
    });
    CHECK(maximal == 2);
}

TEST_CASE("lower bound")
{
    CHECK(lower_bound(gen::bruhat(4)) == 64);
    CHECK(lower_bound(cartesian_product(gen::lemke(), gen::lemke())) == 64);
    CHECK(lower_bound(gen::complete(7)) == 7);
    CHECK(lower_bound(gen::petersen()) == 10);
}

TEST_CASE("JSON")
{
    Configuration c({1, 0, 5});
    CHECK(configuration_from_json(configuration_to_json(c)) == c);
    CHECK(configuration_to_json(c) == R"({"counts":[1,0,5]})");
    auto g = gen::path(3);
    MoveSequence moves{{2, 1}, {1, 0}};
    CHECK(moves_to_json(g, moves) == R"([["v3","v2"],["v2","v1"]])");
    CHECK(moves_from_json(g, moves_to_json(g, moves)) == moves);
    CHECK_THROWS_AS(configuration_from_json("{\"counts\":[1,-1]}"), ParameterError);
    CHECK_THROWS_AS(configuration_from_json("[1,2"), ParseError);
}
