#include <map>

#include <gtest/gtest.h>

#include "moonshine/classdata.hpp"

using namespace moonshine;

TEST(ClassData, Lookup) {
    const auto& a = lookup("2A");
    EXPECT_EQ(a.frame_shape, FrameShape::parse("2^24/1^24"));
    EXPECT_EQ(a.c_hat_g, 4096);
    EXPECT_EQ(a.gamma_tw_label, "2-");
    EXPECT_EQ(a.monster_class, "2B");
    const auto& c = lookup("6C");
    EXPECT_EQ(c.frame_shape, FrameShape::parse("1^3.6^9/2^3.3^9"));
    EXPECT_EQ(c.c_hat_g, -8);
    EXPECT_EQ(c.gamma_tw_label, "6-");
    EXPECT_EQ(c.monster_class, "6E");
    EXPECT_EQ(lookup("30A").gamma_tw_label, "30+6,10,15");
    EXPECT_EQ(lookup("12A").gamma_tw_label, "12|2+6");
}

TEST(ClassData, UnknownNameSuggestsNeighbours) {
    try {
        lookup("1Z");
        FAIL();
    } catch (const NotFoundError& e) {
        EXPECT_NE(std::string(e.what()).find("1Z"), std::string::npos);
    }
    try {
        lookup("6Z");
        FAIL();
    } catch (const NotFoundError& e) {
        EXPECT_NE(std::string(e.what()).find("6A"), std::string::npos);
    }
}

TEST(ClassData, RowsAreFixedPointFree) {
    EXPECT_EQ(registry().size(), 90u);
    for (const auto& r : registry()) {
        EXPECT_EQ(r.frame_shape.degree(), 24) << r.co0_name;
        EXPECT_EQ(r.frame_shape.fixed_points(), 0) << r.co0_name;
        EXPECT_NE(r.c_hat_g, 0) << r.co0_name;
    }
}

TEST(ClassData, NegationIsAnInvolutionOnRegistryShapes) {
    for (const auto& r : registry()) {
        const auto n = r.frame_shape.negate();
        EXPECT_EQ(n.negate(), r.frame_shape) << r.co0_name;
        // eigenvalues of -g are the negatives of those of g
        std::map<RootOfUnity, int> expect;
        for (const auto& [root, c] : r.frame_shape.eigenvalue_counts()) expect[root.negated()] += c;
        EXPECT_EQ(n.eigenvalue_counts(), expect) << r.co0_name;
        EXPECT_EQ(n.fixed_points(), r.frame_shape.eigenvalue_counts()[RootOfUnity::make(2, 1)]) << r.co0_name;
    }
}

TEST(ClassData, SharedCo1ClassesAreNegations) {
    std::map<std::string, std::vector<const ConjugacyClassRecord*>> by_co1;
    for (const auto& r : registry()) by_co1[r.co1_name].push_back(&r);
    int pairs = 0;
    for (const auto& [co1, rows] : by_co1) {
        ASSERT_LE(rows.size(), 2u) << co1;
        if (rows.size() == 2) {
            EXPECT_EQ(rows[0]->frame_shape.negate(), rows[1]->frame_shape) << co1;
            ++pairs;
        }
    }
    EXPECT_GT(pairs, 10);
}

TEST(ClassData, CsvErrors) {
    EXPECT_THROW(parse_registry_csv(""), ParseError);
    EXPECT_THROW(parse_registry_csv("a,b\n"), ParseError);
    const std::string head = "co0,co1,frame_shape,c_hat_g,label,monster\n";
    EXPECT_THROW(parse_registry_csv(head + "2A,1A,2^24/1^24,40x,2-,2B\n"), ParseError);
    EXPECT_THROW(parse_registry_csv(head + "2A,1A,2^23/1^24,4096,2-,2B\n"), ValidationError);
    EXPECT_THROW(parse_registry_csv(head + "2A,1A,2^24/1^24,4096,\"2-,2B\n"), ParseError);
    EXPECT_EQ(parse_registry_csv(head + "X,Y,2^24/1^24,1,\"a,b\",Z\n").at(0).gamma_tw_label, "a,b");
}
