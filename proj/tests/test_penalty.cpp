#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "alpha/penalty.hpp"
#include "fixtures.hpp"

using namespace alpha;
using fixtures::mini_graph;

TEST_CASE("config ordering invariant") {
    PenaltyConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("alpha_up must dominate") {
        cfg.alpha_up = 1.5;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("alpha_min must exceed 1") {
        cfg.alpha_min = 1.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("alpha_max tied to alpha_lateral") {
        cfg.alpha_max = 1.9;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("alpha_oog at least alpha_up") {
        cfg.alpha_oog = 1.9;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("alpha_down boundary behavior") {
    const CweGraph g = mini_graph();
    const PenaltyConfig cfg;

    // leaf ground truth
    CHECK(alpha_down(g, CweId(564), cfg) == doctest::Approx(1.8));
    // deepest node of its kind (707: depth 4 = Pillar maximum)
    CHECK(alpha_down(g, CweId(707), cfg) == doctest::Approx(1.1));
    // 943 (Class): depth 2, Class max depth is 3 (74)
    CHECK(alpha_down(g, CweId(943), cfg) ==
          doctest::Approx(1.8 - 0.7 * 2.0 / 3.0));
    // all Variants are leaves: Delta = 0 falls back to alpha_max
    CHECK(alpha_down(g, CweId(564), cfg) == doctest::Approx(cfg.alpha_max));
    CHECK_THROWS_AS(alpha_down(g, CweId(9999), cfg), LookupError);
}

TEST_CASE("alpha_down midpoint is exactly linear") {
    // 1 -> 2 -> 3: depths 2, 1, 0; node 2 sits at delta = Delta/2.
    CweGraph g({{CweId(1), WeaknessKind::Base, "a"},
                {CweId(2), WeaknessKind::Base, "b"},
                {CweId(3), WeaknessKind::Base, "c"}},
               {{CweId(1), CweId(2)}, {CweId(2), CweId(3)}}, "v");
    CHECK(alpha_down(g, CweId(2), PenaltyConfig{}) == doctest::Approx(1.45));
}

TEST_CASE("penalty covers every direction case") {
    const CweGraph g = mini_graph();
    const PenaltyConfig cfg;

    SUBCASE("equal") {
        const PenaltyResult r = penalty(g, CweId(89), CweId(89), cfg);
        CHECK(r.penalty == 0.0);
        CHECK(r.distance == 0);
        CHECK(r.direction == Direction::Equal);
    }
    SUBCASE("ancestor: the 707 vs 89 example") {
        const PenaltyResult r = penalty(g, CweId(707), CweId(89), cfg);
        CHECK(r.distance == 3);
        CHECK(r.multiplier == doctest::Approx(2.0));
        CHECK(r.penalty == doctest::Approx(6.0));
        CHECK(r.direction == Direction::Ancestor);
    }
    SUBCASE("descendant uses the adaptive multiplier") {
        const PenaltyResult r = penalty(g, CweId(564), CweId(89), cfg);
        CHECK(r.direction == Direction::Descendant);
        CHECK(r.distance == 1);
        CHECK(r.multiplier == doctest::Approx(alpha_down(g, CweId(89), cfg)));
    }
    SUBCASE("lateral") {
        const PenaltyResult r = penalty(g, CweId(79), CweId(89), cfg);
        CHECK(r.direction == Direction::Lateral);
        CHECK(r.penalty == doctest::Approx(3 * 1.8));
    }
    SUBCASE("out-of-graph prediction gets 17.5") {
        const PenaltyResult r = penalty(g, CweId(1000), CweId(89), cfg);
        CHECK(r.direction == Direction::OutOfGraph);
        CHECK(r.penalty == doctest::Approx(17.5));
    }
    SUBCASE("disconnected prediction gets 17.5") {
        const PenaltyResult r = penalty(g, CweId(501), CweId(89), cfg);
        CHECK(r.direction == Direction::Disconnected);
        CHECK(r.penalty == doctest::Approx(17.5));
    }
    SUBCASE("no prediction gets 17.5") {
        const PenaltyResult r = penalty(g, std::nullopt, CweId(89), cfg);
        CHECK(r.direction == Direction::NoPrediction);
        CHECK(r.penalty == doctest::Approx(17.5));
    }
    SUBCASE("invalid ground truth is an error, not a penalty") {
        CHECK_THROWS_AS(penalty(g, CweId(89), CweId(1000), cfg), LookupError);
    }
}

TEST_CASE("ordering at equal distance") {
    const CweGraph g = mini_graph();
    const PenaltyConfig cfg;
    // For truth 89 (non-leaf): ancestor >= lateral > descendant at d = 1.
    const double anc = penalty(g, CweId(943), CweId(89), cfg).penalty;
    const double desc = penalty(g, CweId(564), CweId(89), cfg).penalty;
    CHECK(anc == doctest::Approx(2.0));
    CHECK(anc > desc);
    // Leaf truth: descendant multiplier collapses onto lateral.
    CHECK(alpha_down(g, CweId(79), cfg) == doctest::Approx(cfg.alpha_lateral));
}

TEST_CASE("penalty matrix") {
    const CweGraph g = mini_graph();
    const PenaltyConfig cfg;

    SUBCASE("entries agree with the pointwise penalty") {
        const auto m = PenaltyMatrix::build(g, cfg, false);
        for (const CweNode& v : g.nodes()) {
            for (const CweNode& t : g.nodes()) {
                CHECK(m.at(v.id, t.id) ==
                      doctest::Approx(penalty(g, v.id, t.id, cfg).penalty));
            }
        }
    }
    SUBCASE("normalized entries live in [0, 1] with zero diagonal") {
        // The [0,1] bound presumes d_oog <= d_max, which the derived
        // d_oog (ceil of the mean distance) always satisfies.
        const PenaltyConfig derived = cfg.with_d_oog_from(g.stats());
        CHECK(derived.d_oog == 3);
        const auto m = PenaltyMatrix::build(g, derived, true);
        CHECK(m.p_max() == doctest::Approx(m.d_max() * cfg.alpha_oog));
        for (const CweNode& v : g.nodes()) {
            CHECK(m.at(v.id, v.id) == 0.0);
            for (const CweNode& t : g.nodes()) {
                CHECK(m.at(v.id, t.id) >= 0.0);
                CHECK(m.at(v.id, t.id) <= 1.0);
            }
        }
        // disconnected entry reduces to d_oog / d_max
        CHECK(m.at(CweId(501), CweId(89)) ==
              doctest::Approx(double(derived.d_oog) / m.d_max()));
    }
    SUBCASE("3-node path graph, ancestor entry") {
        CweGraph path({{CweId(1), WeaknessKind::Base, "a"},
                       {CweId(2), WeaknessKind::Base, "b"},
                       {CweId(3), WeaknessKind::Base, "c"}},
                      {{CweId(1), CweId(2)}, {CweId(2), CweId(3)}}, "v");
        const auto m = PenaltyMatrix::build(path, cfg, false);
        CHECK(m.at(CweId(1), CweId(3)) == doctest::Approx(4.0));
    }
    SUBCASE("subset restriction") {
        const auto m =
            PenaltyMatrix::build(g, cfg, false, {CweId(89), CweId(707)});
        CHECK(m.index().size() == 2);
        CHECK(m.at(CweId(707), CweId(89)) == doctest::Approx(6.0));
        CHECK_THROWS_AS(m.at(CweId(74), CweId(89)), LookupError);
    }
}

TEST_CASE("matrix file round trip") {
    namespace fs = std::filesystem;
    const CweGraph g = mini_graph();
    const auto m = PenaltyMatrix::build(g, PenaltyConfig{}, true);

    const fs::path dir = fs::temp_directory_path() / "alpha_matrix_test";
    fs::create_directories(dir);
    const fs::path csv = dir / "m.csv";
    m.write_files(csv);

    const auto loaded = PenaltyMatrix::load_files(csv);
    CHECK(loaded.normalized());
    CHECK(loaded.p_max() == doctest::Approx(m.p_max()));
    CHECK(loaded.d_max() == m.d_max());
    for (CweId v : m.index())
        for (CweId t : m.index())
            CHECK(loaded.at(v, t) == doctest::Approx(m.at(v, t)));
    fs::remove_all(dir);
}
