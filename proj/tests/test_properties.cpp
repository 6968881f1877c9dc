#include <gtest/gtest.h>

#include "properties.hpp"

using namespace infect::test;

#define EXPECT_CHECK(expr)                                                                         \
    do {                                                                                           \
        const Check c_ = (expr);                                                                   \
        EXPECT_TRUE(c_.ok) << c_.detail;                                                           \
        EXPECT_GT(c_.cases, 0u);                                                                   \
    } while (0)

TEST(EstimatorProperty, NonNegativity) { EXPECT_CHECK(nonnegativity()); }
TEST(EstimatorProperty, ScaleEquivariance) { EXPECT_CHECK(scale_equivariance()); }
TEST(EstimatorProperty, StepSizeInvarianceOfLimit) { EXPECT_CHECK(step_invariance()); }
TEST(EstimatorProperty, PermutationEquivariance) { EXPECT_CHECK(permutation_equivariance()); }
TEST(EstimatorProperty, MatchesShiftedPowerIteration) { EXPECT_CHECK(shifted_power_equivalence()); }
TEST(EstimatorProperty, OracleAgreement) { EXPECT_CHECK(oracle_agreement(100)); }
TEST(EstimatorProperty, ResidualCertificate) { EXPECT_CHECK(residual_certificate()); }
TEST(EstimatorProperty, NilpotentDecay) { EXPECT_CHECK(nilpotent_decay()); }
TEST(PowerProperty, AgreesWithEstimateWhenGapped) { EXPECT_CHECK(power_agreement()); }
TEST(OracleProperty, NewtonIdentities) { EXPECT_CHECK(newton_identities()); }
