#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "reference_values.hpp"
#include "tcmi/dataset.hpp"
#include "tcmi/errors.hpp"
#include "tcmi/estimators.hpp"
#include "tcmi/rng.hpp"
#include "tcmi/synthdata.hpp"

using Catch::Matchers::WithinAbs;
using tcmi::Dataset;
using tcmi::GridStrategy;
using tcmi::Orientation;

namespace {

constexpr double kTol = 1e-8;

std::vector<double> column(const double* data, std::size_t n) { return {data, data + n}; }

Dataset two_feature_dataset(std::vector<double> y, std::vector<double> x1,
                            std::vector<double> x2) {
    return Dataset("y", std::move(y), {{"x1", std::move(x1)}, {"x2", std::move(x2)}});
}

Dataset ds1() {
    return two_feature_dataset(column(refvals::kDs1Y, 12), column(refvals::kDs1X1, 12),
                               column(refvals::kDs1X2, 12));
}

Dataset ds2() {
    return two_feature_dataset(column(refvals::kDs2Y, 10), column(refvals::kDs2X1, 10),
                               column(refvals::kDs2X2, 10));
}

tcmi::FractionPair score(const Dataset& data, const std::vector<std::string>& subset,
                         GridStrategy strategy) {
    return tcmi::fraction_scores(data, subset, tcmi::build_grid(data, subset, strategy));
}

} // namespace

TEST_CASE("sorted_profile counts distinct values per orientation") {
    const auto forward = tcmi::sorted_profile({0.0, 1.0, 1.0}, Orientation::forward);
    CHECK(forward.values == std::vector<double>{0.0, 1.0});
    CHECK(forward.cum_counts == std::vector<std::size_t>{1, 3});

    const auto single = tcmi::sorted_profile({5.0}, Orientation::forward);
    CHECK(single.values == std::vector<double>{5.0});
    CHECK(single.cum_counts == std::vector<std::size_t>{1});

    const auto reverse = tcmi::sorted_profile({0.0, 1.0, 2.0}, Orientation::reverse);
    CHECK(reverse.values == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(reverse.cum_counts == std::vector<std::size_t>{3, 2, 1});

    CHECK_THROWS_WITH(tcmi::sorted_profile({}, Orientation::forward), "empty column");
}

TEST_CASE("cumulative entropy matches hand-evaluated cases") {
    CHECK(tcmi::cumulative_entropy({3.0, 3.0, 3.0}, Orientation::forward) == 0.0);
    CHECK_THAT(tcmi::cumulative_entropy({0.0, 1.0}, Orientation::forward),
               WithinAbs(0.5 * std::log(2.0), 1e-12));
    CHECK_THAT(tcmi::cumulative_entropy({0.0, 1.0, 2.0}, Orientation::forward),
               WithinAbs(0.636514, 1e-6));
    CHECK_THROWS_WITH(tcmi::cumulative_entropy({}, Orientation::forward), "empty column");
}

TEST_CASE("cumulative entropy scales affinely and flips orientation under negation") {
    tcmi::SplitMix64 rng(41);
    std::vector<double> z(37);
    for (double& v : z) {
        v = rng.normal();
    }
    std::vector<double> scaled(z), negated(z);
    for (std::size_t i = 0; i < z.size(); ++i) {
        scaled[i] = 2.5 * z[i] + 3.0;
        negated[i] = -z[i];
    }
    for (const auto orientation : {Orientation::forward, Orientation::reverse}) {
        const double h = tcmi::cumulative_entropy(z, orientation);
        CHECK_THAT(tcmi::cumulative_entropy(scaled, orientation), WithinAbs(2.5 * h, 1e-12));
        const auto flipped =
            orientation == Orientation::forward ? Orientation::reverse : Orientation::forward;
        CHECK_THAT(tcmi::cumulative_entropy(negated, flipped), WithinAbs(h, 1e-12));
    }
}

TEST_CASE("cumulative entropy of uniform samples approaches 1/4") {
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto sample = tcmi::generate({"uniform_random", 10000, 0, seed});
        mean += tcmi::cumulative_entropy(sample, Orientation::forward);
    }
    mean /= 20.0;
    CHECK_THAT(mean, WithinAbs(0.25, 0.02));
}

TEST_CASE("build_grid enumerates thresholds per strategy") {
    SECTION("single feature: both strategies use its distinct values") {
        const Dataset data("y", {0.0, 1.0, 2.0}, {{"x", {0.0, 1.0, 1.0}}});
        for (const auto strategy : {GridStrategy::sample, GridStrategy::full}) {
            const auto grid = tcmi::build_grid(data, {"x"}, strategy);
            CHECK(grid.dim() == 1);
            CHECK(grid.size() == 2);
            CHECK(grid.points == std::vector<double>{0.0, 1.0});
        }
    }

    SECTION("full grid is the Cartesian product of distinct values") {
        const Dataset data("y", {0.0, 1.0, 2.0}, {{"a", {0.0, 1.0, 2.0}}, {"b", {5.0, 4.0, 3.0}}});
        const auto grid = tcmi::build_grid(data, {"a", "b"}, GridStrategy::full);
        CHECK(grid.size() == 9);
    }

    SECTION("sample grid deduplicates joint rows") {
        const Dataset data("y", {0.0, 1.0, 2.0, 3.0, 4.0},
                           {{"a", {0.0, 1.0, 0.0, 1.0, 0.0}}, {"b", {0.0, 0.0, 0.0, 1.0, 1.0}}});
        const auto grid = tcmi::build_grid(data, {"a", "b"}, GridStrategy::sample);
        CHECK(grid.size() == 4);
    }

    SECTION("unknown feature is rejected") {
        const Dataset data("y", {0.0, 1.0}, {{"x", {0.0, 1.0}}});
        CHECK_THROWS_WITH(tcmi::build_grid(data, {"z"}, GridStrategy::sample),
                          "no such column: z");
    }

    SECTION("oversized full grid exceeds the budget") {
        const std::size_t n = 2001;
        std::vector<double> a(n), b(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(i);
            b[i] = static_cast<double>((i * 977) % n); // distinct, scrambled
            y[i] = static_cast<double>(i);
        }
        const Dataset data("y", std::move(y), {{"a", std::move(a)}, {"b", std::move(b)}});
        CHECK_THROWS_AS(tcmi::build_grid(data, {"a", "b"}, GridStrategy::full),
                        tcmi::budget_error);
    }
}

TEST_CASE("fraction scores reproduce the frozen reference values") {
    const Dataset d1 = ds1();
    const Dataset d2 = ds2();

    struct Case {
        const Dataset* data;
        std::vector<std::string> subset;
        GridStrategy strategy;
        double forward, reverse;
    };
    const Case cases[] = {
        {&d1, {"x1"}, GridStrategy::sample, refvals::kDs1_x1_sample_f, refvals::kDs1_x1_sample_r},
        {&d1, {"x1"}, GridStrategy::full, refvals::kDs1_x1_full_f, refvals::kDs1_x1_full_r},
        {&d1, {"x2"}, GridStrategy::sample, refvals::kDs1_x2_sample_f, refvals::kDs1_x2_sample_r},
        {&d1, {"x2"}, GridStrategy::full, refvals::kDs1_x2_full_f, refvals::kDs1_x2_full_r},
        {&d1,
         {"x1", "x2"},
         GridStrategy::sample,
         refvals::kDs1_x1x2_sample_f,
         refvals::kDs1_x1x2_sample_r},
        {&d1,
         {"x1", "x2"},
         GridStrategy::full,
         refvals::kDs1_x1x2_full_f,
         refvals::kDs1_x1x2_full_r},
        {&d2, {"x1"}, GridStrategy::sample, refvals::kDs2_x1_sample_f, refvals::kDs2_x1_sample_r},
        {&d2, {"x1"}, GridStrategy::full, refvals::kDs2_x1_full_f, refvals::kDs2_x1_full_r},
        {&d2, {"x2"}, GridStrategy::sample, refvals::kDs2_x2_sample_f, refvals::kDs2_x2_sample_r},
        {&d2, {"x2"}, GridStrategy::full, refvals::kDs2_x2_full_f, refvals::kDs2_x2_full_r},
        {&d2,
         {"x1", "x2"},
         GridStrategy::sample,
         refvals::kDs2_x1x2_sample_f,
         refvals::kDs2_x1x2_sample_r},
        {&d2,
         {"x1", "x2"},
         GridStrategy::full,
         refvals::kDs2_x1x2_full_f,
         refvals::kDs2_x1x2_full_r},
    };
    for (const auto& c : cases) {
        CAPTURE(c.subset, c.strategy == GridStrategy::full);
        const auto pair = score(*c.data, c.subset, c.strategy);
        CHECK_THAT(pair.d_forward, WithinAbs(c.forward, kTol));
        CHECK_THAT(pair.d_reverse, WithinAbs(c.reverse, kTol));
    }
}

TEST_CASE("constant feature carries no information") {
    const Dataset data("y", {0.0, 0.25, 0.5, 0.75, 1.0}, {{"x", {7.0, 7.0, 7.0, 7.0, 7.0}}});
    const auto pair = score(data, {"x"}, GridStrategy::sample);
    CHECK(pair.d_forward == 0.0);
    CHECK(pair.d_reverse == 0.0);
}

TEST_CASE("degenerate target is rejected with the stated message") {
    const Dataset data("y", {1.0, 1.0, 1.0}, {{"x", {0.0, 1.0, 2.0}}});
    CHECK_THROWS_WITH(score(data, {"x"}, GridStrategy::sample),
                      "degenerate target: cumulative entropy is zero");
}

TEST_CASE("fraction scores stay in the unit interval on random data") {
    tcmi::SplitMix64 rng(97);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.next_u64() % 30;
        std::vector<double> y(n), x1(n), x2(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse quantization provokes heavy ties.
            y[i] = std::floor(rng.uniform01() * 4.0);
            x1[i] = std::floor(rng.uniform01() * 3.0);
            x2[i] = rng.uniform01();
        }
        if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
            continue;
        }
        const Dataset data = two_feature_dataset(std::move(y), std::move(x1), std::move(x2));
        for (const auto strategy : {GridStrategy::sample, GridStrategy::full}) {
            const auto pair = score(data, {"x1", "x2"}, strategy);
            CHECK(pair.d_forward >= 0.0);
            CHECK(pair.d_forward <= 1.0);
            CHECK(pair.d_reverse >= 0.0);
            CHECK(pair.d_reverse <= 1.0);
        }
    }
}

TEST_CASE("fraction scores are bit-identical under rank-preserving changes") {
    const Dataset base = ds1();
    const auto reference = score(base, {"x1", "x2"}, GridStrategy::sample);

    SECTION("strictly increasing feature transform") {
        std::vector<double> x1(12), x2(12);
        for (std::size_t i = 0; i < 12; ++i) {
            x1[i] = std::exp(refvals::kDs1X1[i]);          // increasing
            x2[i] = std::atan(3.0 * refvals::kDs1X2[i]);   // increasing
        }
        const Dataset transformed =
            two_feature_dataset(column(refvals::kDs1Y, 12), std::move(x1), std::move(x2));
        const auto pair = score(transformed, {"x1", "x2"}, GridStrategy::sample);
        CHECK(pair.d_forward == reference.d_forward);
        CHECK(pair.d_reverse == reference.d_reverse);
    }

    SECTION("positive affine target transform") {
        std::vector<double> y(12);
        for (std::size_t i = 0; i < 12; ++i) {
            y[i] = 2.0 * refvals::kDs1Y[i]; // exact in binary arithmetic
        }
        const Dataset scaled = two_feature_dataset(std::move(y), column(refvals::kDs1X1, 12),
                                                   column(refvals::kDs1X2, 12));
        const auto pair = score(scaled, {"x1", "x2"}, GridStrategy::sample);
        CHECK(pair.d_forward == reference.d_forward);
        CHECK(pair.d_reverse == reference.d_reverse);

        std::vector<double> shifted(12);
        for (std::size_t i = 0; i < 12; ++i) {
            shifted[i] = 0.7318 * refvals::kDs1Y[i] + 1.25;
        }
        const Dataset affine = two_feature_dataset(std::move(shifted), column(refvals::kDs1X1, 12),
                                                   column(refvals::kDs1X2, 12));
        const auto loose = score(affine, {"x1", "x2"}, GridStrategy::sample);
        CHECK_THAT(loose.d_forward, WithinAbs(reference.d_forward, 1e-12));
        CHECK_THAT(loose.d_reverse, WithinAbs(reference.d_reverse, 1e-12));
    }

    SECTION("row permutation") {
        const std::size_t perm[12] = {7, 2, 9, 0, 11, 4, 1, 10, 3, 8, 5, 6};
        std::vector<double> y(12), x1(12), x2(12);
        for (std::size_t i = 0; i < 12; ++i) {
            y[i] = refvals::kDs1Y[perm[i]];
            x1[i] = refvals::kDs1X1[perm[i]];
            x2[i] = refvals::kDs1X2[perm[i]];
        }
        const Dataset permuted = two_feature_dataset(std::move(y), std::move(x1), std::move(x2));
        const auto pair = score(permuted, {"x1", "x2"}, GridStrategy::sample);
        CHECK(pair.d_forward == reference.d_forward);
        CHECK(pair.d_reverse == reference.d_reverse);
    }

    SECTION("subset name order") {
        const auto pair = score(base, {"x2", "x1"}, GridStrategy::sample);
        CHECK(pair.d_forward == reference.d_forward);
        CHECK(pair.d_reverse == reference.d_reverse);
    }
}
