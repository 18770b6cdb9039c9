#include <gtest/gtest.h>

#include "circres/graph_model.hpp"
#include "circres/spectral.hpp"
#include "test_helpers.hpp"

using namespace circres;
using circres::testing::all_deletion_sets;

TEST(GraphModel, OrientedResidue) {
    EXPECT_EQ(oriented_residue(0, 0, 5), 0);
    EXPECT_EQ(oriented_residue(3, 1, 5), 3);
    EXPECT_EQ(oriented_residue(2, 6, 7), 4);
    EXPECT_THROW(oriented_residue(5, 0, 5), DomainError);
    EXPECT_THROW(oriented_residue(0, -1, 5), DomainError);
}

TEST(GraphModel, CirculantDistance) {
    EXPECT_EQ(circulant_distance(0, 4, 5), 1);
    EXPECT_EQ(circulant_distance(0, 3, 7), 3);
    EXPECT_EQ(circulant_distance(1, 1, 9), 0);
    EXPECT_THROW(circulant_distance(0, 9, 9), DomainError);
}

TEST(GraphModel, ResidueAndDistanceInvariants) {
    for (int n = 3; n <= 15; ++n) {
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                EXPECT_EQ((oriented_residue(u, v, n) + oriented_residue(v, u, n)) % n, 0);
                EXPECT_EQ(circulant_distance(u, v, n), circulant_distance(v, u, n));
                for (int w = 0; w < n; ++w)
                    EXPECT_LE(circulant_distance(u, w, n), circulant_distance(u, v, n) + circulant_distance(v, w, n));
            }
        }
    }
}

TEST(GraphModel, DegreeAndVolume) {
    EXPECT_EQ(degree(CirculantSpec::deletion(7, {1})), 4);
    EXPECT_EQ(degree(CirculantSpec::deletion(6, {3})), 4);
    EXPECT_EQ(degree(CirculantSpec::complete(5)), 4);
    EXPECT_EQ(volume(CirculantSpec::deletion(5, {1})), 10);
    EXPECT_EQ(volume(CirculantSpec::deletion(7, {1})), 28);
    EXPECT_EQ(volume(CirculantSpec::complete(4)), 12);
    const auto w = CirculantSpec::weighted(8, {{1, Rational(1, 3)}, {4, Rational(5, 2)}});
    EXPECT_EQ(degree(w), Rational(2, 3) + Rational(5, 2));
    EXPECT_EQ(volume(w), 8 * degree(w));
}

TEST(GraphModel, Connectivity) {
    EXPECT_FALSE(is_connected(CirculantSpec::deletion(6, {1, 2})));
    EXPECT_TRUE(is_connected(CirculantSpec::deletion(5, {1})));
    EXPECT_FALSE(is_connected(CirculantSpec::deletion(7, {1, 2, 3})));
    EXPECT_FALSE(is_connected(CirculantSpec::deletion(4, {1})));
    EXPECT_TRUE(is_connected(CirculantSpec::deletion(3, {})));
}

TEST(GraphModel, GcdCriterionMatchesSpectrum) {
    for (int n = 3; n <= 12; ++n)
        for (const auto& s : all_deletion_sets(n)) {
            const auto spec = CirculantSpec::deletion(n, s);
            EXPECT_EQ(connected_by_gcd(spec), connected_by_spectrum(spec)) << spec.describe();
        }
}

TEST(GraphModel, WeightedConnectivityUsesSpectrum) {
    EXPECT_TRUE(is_connected(CirculantSpec::weighted(9, {{3, 1}, {2, Rational(1, 1000)}})));
    EXPECT_FALSE(is_connected(CirculantSpec::weighted(9, {{3, 7}})));
    EXPECT_FALSE(is_connected(CirculantSpec::weighted(9, {})));
}

TEST(GraphModel, Validation) {
    EXPECT_THROW(CirculantSpec::deletion(2, {}), DomainError);
    EXPECT_THROW(CirculantSpec::deletion(7, {4}), DomainError);
    EXPECT_THROW(CirculantSpec::deletion(7, {0}), DomainError);
    EXPECT_THROW(CirculantSpec::weighted(7, {{1, -1}}), DomainError);
    const auto w = CirculantSpec::weighted(7, {{2, 3}});
    EXPECT_EQ(w.weight(1), 0);
    EXPECT_EQ(w.weight(2), 3);
    EXPECT_EQ(w.weight(3), 0);
    EXPECT_FALSE(w.is_unweighted());
}

TEST(GraphModel, SingleDeletedClass) {
    EXPECT_EQ(CirculantSpec::deletion(9, {2}).single_deleted_class(), 2);
    EXPECT_FALSE(CirculantSpec::deletion(9, {1, 2}).single_deleted_class());
    EXPECT_FALSE(CirculantSpec::complete(9).single_deleted_class());
}
