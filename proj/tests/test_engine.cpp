#include <fstream>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "chipfire/engine.hpp"
#include "chipfire/errors.hpp"

using namespace chipfire;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(CHIPFIRE_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Plain-array unlabeled game fired in a random order. counts[0] is the
// center, counts[1 + (i-1)*L + (j-1)] is Branch(i, j) for j <= L.
struct ArrayGame {
    int k;
    int L;
    std::vector<long long> chips;
    std::vector<long long> fires;

    ArrayGame(int k_, long long n) : k(k_), L(static_cast<int>(n) + 2), chips(1 + k_ * L), fires(1 + k_ * L) {
        chips[0] = n;
    }
    int index(int i, int j) const { return j == 0 ? 0 : 1 + (i - 1) * L + (j - 1); }

    void run(std::mt19937_64& gen) {
        while (true) {
            std::vector<int> ready;
            if (chips[0] >= k) ready.push_back(0);
            for (int i = 1; i <= k; ++i) {
                for (int j = 1; j <= L; ++j) {
                    if (chips[index(i, j)] >= 2) ready.push_back(index(i, j));
                }
            }
            if (ready.empty()) return;
            const int v = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(gen)];
            ++fires[v];
            if (v == 0) {
                chips[0] -= k;
                for (int i = 1; i <= k; ++i) ++chips[index(i, 1)];
            } else {
                const int i = (v - 1) / L + 1;
                const int j = (v - 1) % L + 1;
                REQUIRE(j < L);
                chips[v] -= 2;
                ++chips[index(i, j - 1)];
                ++chips[index(i, j + 1)];
            }
        }
    }
};

}  // namespace

TEST_CASE("unlabeled stabilization examples") {
    const auto one = stabilize_unlabeled(StarParams(1, 1), 1);
    CHECK(one.total_fires == 1);
    CHECK(one.config.at(Vertex::branch(1, 1)) == 1);
    CHECK(one.config.at(Vertex::center()) == 0);

    const auto two = stabilize_unlabeled(StarParams(2, 2), 4);
    CHECK(two.total_fires == 5);
    CHECK(two.fire_counts.at(Vertex::center()) == 3);
    CHECK(two.fire_counts.at(Vertex::branch(1, 1)) == 1);
    CHECK(two.fire_counts.at(Vertex::branch(2, 1)) == 1);
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) CHECK(two.config.at(Vertex::branch(i, j)) == 1);
    }

    const auto seven = stabilize_unlabeled(StarParams(3, 1), 7);
    CHECK(seven.config.at(Vertex::center()) == 1);
    for (int i = 1; i <= 3; ++i) {
        CHECK(seven.config.at(Vertex::branch(i, 1)) == 1);
        CHECK(seven.config.at(Vertex::branch(i, 2)) == 1);
        CHECK(seven.config.at(Vertex::branch(i, 3)) == 0);
    }
    CHECK(seven.config.total() == 7);
}

TEST_CASE("unlabeled fire counts agree with a randomly ordered array simulation") {
    std::mt19937_64 gen(7);
    for (int k = 1; k <= 5; ++k) {
        for (int m = 1; m <= 6; ++m) {
            const StarParams p(k, m);
            const auto ours = stabilize_unlabeled(p, static_cast<long long>(k) * m);
            ArrayGame oracle(k, static_cast<long long>(k) * m);
            oracle.run(gen);

            CHECK(ours.fire_counts.count(Vertex::center()) == 1);
            CHECK(ours.fire_counts.at(Vertex::center()) == oracle.fires[0]);
            CHECK(expected_fire_count(p, Vertex::center()) == oracle.fires[0]);
            long long oracle_total = oracle.fires[0];
            for (int i = 1; i <= k; ++i) {
                for (int j = 1; j < oracle.L; ++j) {
                    const auto v = Vertex::branch(i, j);
                    const long long got = ours.fire_counts.count(v) ? ours.fire_counts.at(v) : 0;
                    CHECK(got == oracle.fires[oracle.index(i, j)]);
                    CHECK(expected_fire_count(p, v) == oracle.fires[oracle.index(i, j)]);
                    oracle_total += oracle.fires[oracle.index(i, j)];
                }
            }
            CHECK(ours.total_fires == oracle_total);
            CHECK(expected_total_fires(p) == oracle_total);
        }
    }
}

TEST_CASE("stable shape for every pile size, including remainders") {
    std::mt19937_64 gen(11);
    for (int k = 1; k <= 5; ++k) {
        for (long long n = 0; n <= 5 * k + 4; ++n) {
            const auto levels = static_cast<int>(n / k);
            const auto r = n % k;
            const auto result = stabilize_unlabeled(StarParams(k, std::max(levels, 1)), n);
            ArrayGame oracle(k, n);
            oracle.run(gen);

            CHECK(result.config.at(Vertex::center()) == r);
            CHECK(oracle.chips[0] == r);
            for (int i = 1; i <= k; ++i) {
                for (int j = 1; j <= levels + 2; ++j) {
                    const long long want = j <= levels ? 1 : 0;
                    CHECK(result.config.at(Vertex::branch(i, j)) == want);
                    CHECK(oracle.chips[oracle.index(i, j)] == want);
                }
            }
            CHECK(result.config.total() == n);
            CHECK(is_stable(result.config));
        }
    }
}

TEST_CASE("closed-form fire counts") {
    CHECK(expected_fire_count(StarParams(2, 5), Vertex::center()) == 15);
    CHECK(expected_fire_count(StarParams(1, 3), Vertex::branch(1, 2)) == 1);
    CHECK(expected_fire_count(StarParams(1, 3), Vertex::branch(1, 3)) == 0);
    CHECK(expected_fire_count(StarParams(1, 3), Vertex::branch(1, 7)) == 0);
    CHECK(expected_total_fires(StarParams(1, 3)) == 10);
    CHECK(expected_total_fires(StarParams(3, 5)) == 75);
    CHECK(expected_total_fires(StarParams(5, 1)) == 1);
    for (int m = 1; m <= 10; ++m) CHECK(expected_total_fires(StarParams(1, m)) == m * (m + 1) * (m + 2) / 6);
}

TEST_CASE("labeled stabilization examples") {
    CHECK(stabilize_labeled(initial_labeled(StarParams(1, 2)), Strategy::deterministic()).outcome ==
          StableOutcome::from_rows({{1, 2}}));
    for (const auto& s : {Strategy::deterministic(), Strategy::random_uniform(3), Strategy::volatility_minimizing(3)}) {
        CHECK(stabilize_labeled(initial_labeled(StarParams(2, 1)), s).outcome == StableOutcome::from_rows({{1}, {2}}));
    }
}

TEST_CASE("every strategy produces logs of closed-form length and fire counts") {
    for (const StarParams p : {StarParams(2, 2), StarParams(2, 3), StarParams(3, 2), StarParams(3, 3), StarParams(1, 4)}) {
        const auto reference = stabilize_unlabeled(p, p.chips());
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            for (const auto& s : {Strategy::random_uniform(seed), Strategy::volatility_minimizing(seed)}) {
                const auto run = stabilize_labeled(initial_labeled(p), s);
                CHECK(static_cast<long long>(run.log.size()) == reference.total_fires);
                CHECK(run.log.fire_counts() == reference.fire_counts);
                const auto replayed = replay(p, run.log.moves());
                REQUIRE(replayed.outcome.has_value());
                CHECK(*replayed.outcome == run.outcome);
            }
        }
    }
}

TEST_CASE("a seed reproduces the same log") {
    const auto start = initial_labeled(StarParams(3, 3));
    for (const auto& s : {Strategy::random_uniform(42), Strategy::volatility_minimizing(42)}) {
        CHECK(stabilize_labeled(start, s).log == stabilize_labeled(start, s).log);
    }
    CHECK(stabilize_labeled(start, Strategy::random_uniform(1)).log !=
          stabilize_labeled(start, Strategy::random_uniform(2)).log);
}

TEST_CASE("volatility-minimizing play only picks allowed vertices") {
    const StarParams p(2, 2);
    auto c = initial_labeled(p);
    Rng rng(5);
    c = apply_move(c, choose_move(c, StrategyKind::VolatilityMinimizing, rng));
    c = apply_move(c, choose_move(c, StrategyKind::VolatilityMinimizing, rng));
    // Two center fires leave the center empty and both level-1 vertices loaded.
    CHECK(c.at(Vertex::center()).empty());
    const auto third = choose_move(c, StrategyKind::VolatilityMinimizing, rng);
    CHECK(third.vertex.level() == 1);
}

TEST_CASE("random uniform play reaches every reachable outcome at small size") {
    std::set<StableOutcome> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        seen.insert(stabilize_labeled(initial_labeled(StarParams(2, 2)), Strategy::random_uniform(seed)).outcome);
    }
    CHECK(seen == std::set<StableOutcome>{StableOutcome::from_rows({{1, 2}, {3, 4}}),
                                          StableOutcome::from_rows({{1, 3}, {2, 4}})});
}

TEST_CASE("bounded draws stay in range and cover it") {
    Rng rng(9);
    std::vector<int> hits(7);
    for (int t = 0; t < 7000; ++t) {
        const auto x = rng.below(7);
        REQUIRE(x < 7);
        ++hits[x];
    }
    for (int h : hits) CHECK(h > 800);
    CHECK(Rng::for_trial(1, 2).below(1000000) == Rng::for_trial(1, 2).below(1000000));
    CHECK(Rng::for_trial(1, 2).below(1u << 30) != Rng::for_trial(1, 3).below(1u << 30));
}

TEST_CASE("replaying the non-standard 3x3 script") {
    const auto moves = parse_moves(read_fixture("non_standard_3x3.log"));
    REQUIRE(moves.size() == 18);
    const auto result = replay(StarParams(3, 3), moves);
    REQUIRE(result.outcome.has_value());
    CHECK(*result.outcome == StableOutcome::from_rows({{1, 4, 7}, {2, 3, 8}, {5, 6, 9}}));
    CHECK(static_cast<long long>(result.log.size()) == expected_total_fires(StarParams(3, 3)));
}

TEST_CASE("replay of an empty script leaves the starting pile") {
    const auto result = replay(StarParams(1, 1), {});
    CHECK_FALSE(result.outcome.has_value());
    CHECK(result.final_config.at(Vertex::center()) == std::vector<Label>{1});
}

TEST_CASE("replay reports the first illegal step") {
    const std::vector<Move> moves{parse_move("C:{1,2}"), parse_move("B(1,1):{1,3}")};
    try {
        replay(StarParams(2, 2), moves);
        FAIL("expected ReplayError");
    } catch (const ReplayError& e) {
        CHECK(e.step() == 2);
        CHECK(e.move() == moves[1]);
        CHECK(std::string(e.what()).find("B(1,1):{1,3}") != std::string::npos);
    }
}

TEST_CASE("log text round-trips") {
    const auto run = stabilize_labeled(initial_labeled(StarParams(3, 2)), Strategy::random_uniform(8));
    const auto text = serialize_log(run.log);
    CHECK(parse_moves(text) == run.log.moves());
    CHECK(parse_moves("# comment\n\nC:{1,2}\n  # indented comment\nB(1,1):{1,3}\n").size() == 2);
    try {
        parse_moves("C:{1,2}\nnonsense\n");
        FAIL("expected a parse error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("log fire counts track appended moves") {
    SequenceLog log(StarParams(2, 2));
    log.append(parse_move("C:{1,2}"));
    log.append(parse_move("C:{3,4}"));
    log.append(parse_move("B(1,1):{1,3}"));
    CHECK(log.size() == 3);
    CHECK(log.fire_count(Vertex::center()) == 2);
    CHECK(log.fire_count(Vertex::branch(1, 1)) == 1);
    CHECK(log.fire_count(Vertex::branch(2, 1)) == 0);
}
