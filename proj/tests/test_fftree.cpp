#include <gtest/gtest.h>

#include <set>

#include "ecfft/fftree.hpp"
#include "ecfft/serialize.hpp"
#include "json.hpp"

using namespace ecfft;

namespace {
const FFTree& tree8()
{
    static const FFTree t = build_fftree(4194319, 8, 11);
    return t;
}
} // namespace

TEST(fftree, layer_shape)
{
    const FFTree& t = tree8();
    EXPECT_EQ(t.depth(), 8u);
    for (unsigned i = 0; i <= 8; ++i) {
        const auto l = t.layer(i);
        EXPECT_EQ(l.size(), std::size_t{1} << (8 - i));
        EXPECT_EQ(std::set<Fe>(l.begin(), l.end()).size(), l.size());
    }
}

TEST(fftree, maps_are_two_to_one)
{
    const FFTree& t = tree8();
    for (unsigned i = 0; i < 8; ++i) {
        std::vector<int> hits(t.layer(i + 1).size());
        for (std::uint32_t j = 0; j < t.layer(i).size(); ++j) {
            const Fe y = t.psi(i, t.layer(i)[j]);
            EXPECT_EQ(t.layer(i + 1)[t.parent(i, j)], y);
            ++hits[t.parent(i, j)];
        }
        for (int h : hits) EXPECT_EQ(h, 2);
    }
}

TEST(fftree, standard_chain_nests)
{
    const FFTree& t = tree8();
    for (unsigned a = 1; a <= 8; ++a) {
        EXPECT_EQ(t.child(t.standard_set(a), 0), t.standard_set(a - 1));
        const auto big = t.elements(t.standard_set(a));
        const auto small = t.elements(t.standard_set(a - 1));
        EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
    EXPECT_EQ(t.standard_set(8), t.root());
}

TEST(fftree, set_names_round_trip)
{
    const FFTree& t = tree8();
    EXPECT_EQ(t.parse_set("U3"), t.standard_set(3));
    const BasicSet s = t.parse_set("0.R.L.R");
    EXPECT_EQ(s.level, 5u);
    EXPECT_EQ(t.parse_set(t.set_name(s)), s);
    EXPECT_THROW(t.parse_set("U9"), PreconditionError);
    EXPECT_THROW(t.parse_set("0.X"), PreconditionError);
}

TEST(fftree, infeasible_depth)
{
    EXPECT_THROW(build_fftree(13, 5, 1), PreconditionError);
    EXPECT_THROW(build_fftree(5, 1, 1), PreconditionError);
}

TEST(fftree, same_seed_same_tree)
{
    EXPECT_EQ(serialize_tree(build_fftree(65537, 6, 4)), serialize_tree(build_fftree(65537, 6, 4)));
}

TEST(fftree, serialization_round_trip)
{
    const std::string s = serialize_tree(tree8());
    const FFTree back = deserialize_tree(s);
    EXPECT_EQ(serialize_tree(back), s);
    EXPECT_EQ(back.layers(), tree8().layers());
}

TEST(fftree, tampered_files_are_rejected)
{
    const auto doc = nlohmann::ordered_json::parse(serialize_tree(tree8()));

    auto bad_version = doc;
    bad_version["version"] = 99;
    EXPECT_THROW(deserialize_tree(bad_version.dump()), FormatError);

    auto bad_layer = doc;
    bad_layer["layers"][0][1] = bad_layer["layers"][0][0];
    EXPECT_THROW(deserialize_tree(bad_layer.dump()), InvariantViolation);

    auto bad_map = doc;
    bad_map["maps"][0]["v"][0] = "1";
    EXPECT_THROW(deserialize_tree(bad_map.dump()), InvariantViolation);

    EXPECT_THROW(deserialize_tree("{not json"), FormatError);
}

TEST(fftree, sibling_tree_shares_maps)
{
    const FFTree t = build_fftree(97, 2, 1);
    const FFTree s = build_sibling_tree(t, 5);
    EXPECT_TRUE(t.shares_maps_with(s));
    for (unsigned i = 0; i <= t.depth(); ++i) {
        for (Fe x : s.layer(i)) {
            EXPECT_EQ(std::count(t.layer(i).begin(), t.layer(i).end(), x), 0);
        }
    }
}
