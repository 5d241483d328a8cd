#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sphoc/encoder.hpp"
#include "sphoc/error.hpp"
#include "support/oracles.hpp"
#include "support/synthetic_scene.hpp"

namespace sphoc {
namespace {

constexpr std::size_t kA = 1, kB = 2;

TEST(CharRegionBounds, Examples) {
    auto r = char_region_bounds(1, 5, 1, 100);
    EXPECT_EQ(r.lower, 0u);
    EXPECT_EQ(r.upper, 100u);
    r = char_region_bounds(1, 5, 5, 100);
    EXPECT_EQ(r.lower, 0u);
    EXPECT_EQ(r.upper, 20u);
    r = char_region_bounds(3, 5, 2, 100);
    EXPECT_EQ(r.lower, 0u);
    EXPECT_EQ(r.upper, 100u);
}

TEST(CharRegionBounds, AtLevelNEachCharacterOwnsItsBin) {
    for (std::size_t p = 1; p <= 5; ++p) {
        const auto r = char_region_bounds(p, 5, 5, 100);
        EXPECT_EQ(r.lower, (p - 1) * 20);
        EXPECT_EQ(r.upper, p * 20);
    }
}

TEST(CharRegionBounds, RoundsFractionalBinEdgesHalfUp) {
    // W/L = 7/2 = 3.5: the level-2 bin edge at 3.5 rounds up to column 4.
    EXPECT_EQ(char_region_bounds(1, 2, 2, 7).upper, 4u);
    EXPECT_EQ(char_region_bounds(2, 2, 2, 7).lower, 4u);
}

TEST(CharRegionBounds, RejectsBadIndices) {
    EXPECT_THROW(char_region_bounds(0, 5, 1, 100), Error);
    EXPECT_THROW(char_region_bounds(6, 5, 1, 100), Error);
    EXPECT_THROW(char_region_bounds(1, 5, 6, 100), Error);
    EXPECT_THROW(char_region_bounds(1, 5, 1, 4), Error);
}

TEST(EncodeWord, TwoCharacterExample) {
    const SoftPhocTensor t = encode_word("AB", 2, 1);
    EXPECT_DOUBLE_EQ(t.at(0, 0, kA), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(t.at(0, 0, kB), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(t.at(0, 1, kA), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(t.at(0, 1, kB), 2.0 / 3.0);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t c = 0; c < kNumClasses; ++c)
            if (c != kA && c != kB) EXPECT_EQ(t.at(0, x, c), 0.0);
}

TEST(EncodeWord, SingleCharacterIsOneHot) {
    const SoftPhocTensor t = encode_word("A", 4, 2);
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(t.at(y, x, kA), 1.0);
}

TEST(EncodeWord, PintuFirstLetterFavoursTheLeft) {
    const SoftPhocTensor t = encode_word("PINTU", 100, 10);
    EXPECT_GT(t.at(0, 10, 16), t.at(0, 90, 16));
}

TEST(EncodeWord, Errors) {
    EXPECT_THROW(encode_word("", 10, 1), Error);
    try {
        encode_word("abcdef", 5, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CropTooNarrow);
    }
}

TEST(EncodeWordProperty, MatchesBruteForceOracle) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::string w = testing::random_word(rng, 1, 8, "abcXYZ019.-!");
        const std::size_t width = std::uniform_int_distribution<std::size_t>(8, 64)(rng);
        const std::vector<double> expected = testing::brute_force_profile(testing::oracle_channels(w), width);
        const SoftPhocTensor t = encode_word(w, width, 3);
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t x = 0; x < width; ++x)
                for (std::size_t c = 0; c < kNumClasses; ++c)
                    ASSERT_NEAR(t.at(y, x, c), expected[x * kNumClasses + c], 1e-9) << w << " W=" << width;
    }
}

TEST(EncodeWordProperty, NormalizedAndRowInvariant) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const std::string w = testing::random_word(rng, 1, 12);
        const SoftPhocTensor t = encode_word(w, w.size() * 7, 4);
        EXPECT_LE(max_normalization_error(t, 1), 1e-9);
        for (std::size_t y = 1; y < 4; ++y)
            for (std::size_t x = 0; x < t.width(); ++x)
                for (std::size_t c = 0; c < kNumClasses; ++c) ASSERT_EQ(t.at(y, x, c), t.at(0, x, c));
        for (std::size_t x = 0; x < t.width(); ++x) EXPECT_EQ(t.at(0, x, 0), 0.0);
    }
}

TEST(EncodeWordProperty, SupportMatchesCharacterSet) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const std::string w = testing::random_word(rng, 1, 8, "abcde12");
        const SoftPhocTensor t = encode_word(w, 40, 1);
        const std::vector<int> present = testing::oracle_channels(w);
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            bool nonzero = false;
            for (std::size_t x = 0; x < 40; ++x) nonzero |= t.at(0, x, c) != 0.0;
            const bool expected = std::find(present.begin(), present.end(), static_cast<int>(c)) != present.end();
            EXPECT_EQ(nonzero, expected) << w << " channel " << c;
        }
    }
}

TEST(EncodeWordProperty, AnagramsEncodeDifferently) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        std::string w = testing::random_word(rng, 2, 8, "abcdefg");
        std::string v = w;
        std::shuffle(v.begin(), v.end(), rng);
        if (v == w) continue;
        EXPECT_NE(encode_word(w, 32, 1), encode_word(v, 32, 1)) << w << " vs " << v;
    }
}

TEST(EmbedScene, EmptySceneIsBackground) {
    const SoftPhocTensor t = embed_scene({20, 10, {}});
    for (std::size_t y = 0; y < 10; ++y)
        for (std::size_t x = 0; x < 20; ++x) EXPECT_EQ(t.at(y, x, 0), 1.0);
}

TEST(EmbedScene, AxisAlignedWordIsACopy) {
    SceneAnnotation scene{64, 24, {{Quad{Point{10, 5}, Point{50, 5}, Point{50, 15}, Point{10, 15}}, "AB"}}};
    const SoftPhocTensor t = embed_scene(scene);
    const SoftPhocTensor crop = encode_word("AB", 40, 10);
    for (std::size_t y = 0; y < 24; ++y)
        for (std::size_t x = 0; x < 64; ++x) {
            const bool inside = x >= 10 && x < 50 && y >= 5 && y < 15;
            if (!inside) {
                EXPECT_EQ(t.at(y, x, 0), 1.0);
                continue;
            }
            EXPECT_EQ(t.at(y, x, 0), 0.0);
            for (std::size_t c = 1; c < kNumClasses; ++c)
                ASSERT_NEAR(t.at(y, x, c), crop.at(y - 5, x - 10, c), 1e-6);
        }
}

TEST(EmbedScene, RotatedWordProgressesVertically) {
    // The crop's left edge (TL->BL) is mapped to the quad's top edge at y = 2,
    // so reading order runs top to bottom.
    const Quad quad{Point{20, 2}, Point{20, 42}, Point{10, 42}, Point{10, 2}};
    SceneAnnotation scene{32, 48, {{quad, "AB"}}};
    const SoftPhocTensor t = embed_scene(scene);
    // "AB" on a 40 x 10 crop: 'a' dominates the first half of the columns.
    EXPECT_GT(t.at(5, 15, kA), t.at(5, 15, kB));
    EXPECT_GT(t.at(38, 15, kB), t.at(38, 15, kA));
    const SoftPhocTensor crop = encode_word("AB", 40, 1);
    for (std::size_t y = 2; y < 42; ++y) EXPECT_NEAR(t.at(y, 15, kA), crop.at(0, y - 2, kA), 1e-6);
}

TEST(EmbedScene, LaterWordsOverwrite) {
    const Quad a{Point{0, 0}, Point{20, 0}, Point{20, 10}, Point{0, 10}};
    const Quad b{Point{10, 0}, Point{30, 0}, Point{30, 10}, Point{10, 10}};
    const SoftPhocTensor t = embed_scene({40, 10, {{a, "xx"}, {b, "yy"}}});
    EXPECT_EQ(t.at(5, 5, 24), 1.0);   // x
    EXPECT_EQ(t.at(5, 15, 25), 1.0);  // y wins in the overlap
    EXPECT_EQ(t.at(5, 15, 24), 0.0);
}

TEST(EmbedScene, DegenerateQuadThrows) {
    const Quad flat{Point{0, 0}, Point{10, 0}, Point{20, 0}, Point{30, 0}};
    try {
        embed_scene({40, 10, {{flat, "ab"}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateQuad);
    }
}

TEST(EmbedSceneProperty, EveryPixelIsADistribution) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const SceneAnnotation scene = testing::random_scene(rng);
        EXPECT_LE(max_normalization_error(embed_scene(scene)), 1e-6);
    }
}

TEST(CropSize, UsesMeanSidesAndCharacterCount) {
    const WordAnnotation w{Quad{Point{0, 0}, Point{30, 0}, Point{32, 9}, Point{0, 11}}, "abc"};
    const CropSize s = crop_size_for(w);
    EXPECT_EQ(s.width, static_cast<std::size_t>(std::floor((30.0 + std::hypot(32.0, 2.0)) / 2 + 0.5)));
    EXPECT_EQ(s.height, static_cast<std::size_t>(std::floor((11.0 + std::hypot(2.0, 9.0)) / 2 + 0.5)));
    const WordAnnotation narrow{Quad{Point{0, 0}, Point{3, 0}, Point{3, 5}, Point{0, 5}}, "abcdef"};
    EXPECT_EQ(crop_size_for(narrow).width, 6u);
}

}  // namespace
}  // namespace sphoc
