#include <catch2/catch_amalgamated.hpp>

#include "tcmi/dataset.hpp"
#include "tcmi/errors.hpp"

using tcmi::Dataset;

namespace {

Dataset small_dataset() {
    // |b| = {1, 2, 3, 0.5} is order-distinct from both a and b, so the abs
    // augmentation genuinely adds a column for b (and only for b).
    return Dataset("y", {0.1, 0.5, 0.3, 0.9},
                   {{"a", {1.0, 2.0, 3.0, 4.0}}, {"b", {-1.0, 2.0, -3.0, 0.5}}});
}

} // namespace

TEST_CASE("dataset exposes columns by name and index") {
    const Dataset data = small_dataset();
    CHECK(data.n_rows() == 4);
    CHECK(data.n_features() == 2);
    CHECK(data.target_name() == "y");
    CHECK(data.feature_name(0) == "a");
    CHECK(data.feature_index("b") == 1);
    CHECK(data.has_feature("a"));
    CHECK_FALSE(data.has_feature("y"));
    CHECK(data.feature(1)[2] == -3.0);
}

TEST_CASE("dataset rejects malformed columns") {
    CHECK_THROWS_WITH(Dataset("y", {}, {{"a", {1.0}}}), "empty column: y");
    CHECK_THROWS_WITH(Dataset("y", {1.0, 2.0}, {{"a", {1.0}}}), "column length mismatch: a");
    CHECK_THROWS_WITH(Dataset("y", {1.0, 2.0}, {{"a", {1.0, 2.0}}, {"a", {2.0, 1.0}}}),
                      "duplicate column: a");
    CHECK_THROWS_WITH(Dataset("a", {1.0, 2.0}, {{"a", {1.0, 2.0}}}), "duplicate column: a");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH(Dataset("y", {1.0, nan}, {{"a", {1.0, 2.0}}}),
                      "non-finite value in column: y");
    CHECK_THROWS_AS(Dataset("", {1.0, 2.0}, {{"a", {1.0, 2.0}}}), tcmi::input_error);
}

TEST_CASE("resolve_subset canonicalizes and validates") {
    const Dataset data = small_dataset();
    CHECK(data.resolve_subset({"b", "a"}) == std::vector<std::size_t>{0, 1});
    CHECK(data.resolve_subset({"b"}) == std::vector<std::size_t>{1});
    CHECK_THROWS_WITH(data.resolve_subset({}), "empty feature set");
    CHECK_THROWS_WITH(data.resolve_subset({"c"}), "no such column: c");
    CHECK_THROWS_WITH(data.resolve_subset({"a", "a"}), "duplicate column in subset: a");
    CHECK(data.subset_names({1, 0}) == std::vector<std::string>{"b", "a"});
}

TEST_CASE("augment appends negated and absolute columns") {
    const Dataset data = small_dataset();

    SECTION("negate doubles the feature count") {
        const Dataset out = tcmi::augment(data, {"negate"});
        CHECK(out.n_features() == 4);
        CHECK(out.has_feature("a_neg"));
        CHECK(out.feature(out.feature_index("a_neg"))[3] == -4.0);
    }

    SECTION("abs of a monotone-equivalent column is skipped") {
        // |a| equals a on a nonnegative column, so only |b| is new.
        const Dataset out = tcmi::augment(data, {"abs"});
        CHECK(out.n_features() == 3);
        CHECK_FALSE(out.has_feature("a_abs"));
        CHECK(out.has_feature("b_abs"));
    }

    SECTION("negate and abs together add two columns for a sign-mixed feature") {
        const Dataset out = tcmi::augment(data, {"negate", "abs"});
        CHECK(out.has_feature("b_neg"));
        CHECK(out.has_feature("b_abs"));
        // a_neg is order-reversed, kept; a_abs is order-identical, skipped.
        CHECK(out.has_feature("a_neg"));
        CHECK_FALSE(out.has_feature("a_abs"));
        CHECK(out.n_features() == 5);
    }

    SECTION("unknown transform is rejected") {
        CHECK_THROWS_WITH(tcmi::augment(data, {"square"}), "unknown transform: square");
    }

    SECTION("name clash with an existing column is rejected") {
        const Dataset clash("y", {0.1, 0.5, 0.3},
                            {{"a", {1.0, 2.0, 3.0}}, {"a_neg", {5.0, 2.0, 7.0}}});
        CHECK_THROWS_WITH(tcmi::augment(clash, {"negate"}), "augmentation name clash: a_neg");
    }
}

TEST_CASE("augment is idempotent on order-isomorphic duplicates") {
    // Augmenting twice adds nothing new: every second-pass candidate is
    // order-isomorphic to an original or first-pass column.
    const Dataset once = tcmi::augment(small_dataset(), {"negate"});
    const Dataset twice = tcmi::augment(once, {"negate"});
    CHECK(twice.n_features() == once.n_features());
}
