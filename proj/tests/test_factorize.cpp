#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace rdisc;

namespace {

TEST(DExponent, FormulaValues) {
  EXPECT_EQ(d_exponent(4, 1), 2);
  EXPECT_EQ(d_exponent(4, 2), 1);
  EXPECT_EQ(d_exponent(4, 3), 1);
  EXPECT_EQ(d_exponent(4, 4), 0);
  EXPECT_EQ(d_exponent(3, 1), 1);
  EXPECT_EQ(d_exponent(3, 3), 0);
  const int d5[] = {3, 2, 1, 1, 0};
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(d_exponent(5, k), d5[k - 1]);
  EXPECT_THROW(d_exponent(4, 0), UsageError);
  EXPECT_THROW(d_exponent(4, 5), UsageError);
}

TEST(BigDiscriminant, PublishedValuesAndDegree) {
  EXPECT_EQ(big_discriminant(3), fixtures::parse3(fixtures::kR3));
  EXPECT_EQ(big_discriminant(4), fixtures::parse4(fixtures::kR4));
  for (int n = 3; n <= 5; ++n)
    EXPECT_EQ(qh_degree(big_discriminant(n)), n * (n - 1));
  EXPECT_THROW(big_discriminant(1), UsageError);
}

TEST(TildeD, CubicRepeatedDiscriminants) {
  EXPECT_EQ(tilde_D(3, 1), fixtures::tilde_d3(1));
  EXPECT_EQ(tilde_D(3, 2), fixtures::tilde_d3(2));
  EXPECT_EQ(tilde_D(3, 3), fixtures::tilde_d3(3));
}

TEST(TildeD, QuarticRepeatedDiscriminantsAndDegrees) {
  for (int k = 1; k <= 4; ++k) {
    Polynomial dd = tilde_D(4, k);
    EXPECT_EQ(dd, fixtures::tilde_d4(k)) << "k=" << k;
    EXPECT_EQ(qh_degree(dd), qhd_formula_D(4, k)) << "k=" << k;
    EXPECT_EQ(dd.degree_in("a" + std::to_string(k)), 0);
  }
}

TEST(Pipeline, QuarticTheoremMatchesPublishedFactors) {
  struct Expected {
    const char* m;
    const char* t;
    long c;
    int d;
  };
  const Expected expected[] = {
      {fixtures::kM41, fixtures::kT41, 6912, 2},
      {fixtures::kM42, fixtures::kT42, -4096, 1},
      {fixtures::kM43, fixtures::kT43, 6912, 1},
      {fixtures::kM44, fixtures::kT44, 4096, 0},
  };
  for (int k = 1; k <= 4; ++k) {
    auto report = factor_pipeline(4, k);
    EXPECT_TRUE(report.all_passed()) << "k=" << k;
    EXPECT_EQ(report.M, fixtures::parse4(expected[k - 1].m)) << "k=" << k;
    EXPECT_EQ(report.T, fixtures::parse4(expected[k - 1].t)) << "k=" << k;
    EXPECT_EQ(report.c, make_rational(expected[k - 1].c, 1)) << "k=" << k;
    EXPECT_EQ(report.d, expected[k - 1].d) << "k=" << k;
    EXPECT_EQ(report.observed_multiplicity, static_cast<unsigned>(expected[k - 1].d));
  }
}

TEST(Pipeline, CubicDegenerateMode) {
  const long constants[] = {-64, -64, -432};
  const char* factors[] = {fixtures::kT31, fixtures::kT32, fixtures::kT33};
  for (int k = 1; k <= 3; ++k) {
    auto report = factor_pipeline(3, k);
    EXPECT_TRUE(report.all_passed()) << "k=" << k;
    EXPECT_TRUE(report.M.is_one());
    EXPECT_EQ(report.T, fixtures::parse3(factors[k - 1]));
    EXPECT_EQ(report.c, make_rational(constants[k - 1], 1));
  }
  EXPECT_THROW(factor_pipeline(2, 1), UsageError);
}

TEST(Pipeline, ReconstructionIdentityIsExact) {
  for (int k = 1; k <= 4; ++k) {
    auto report = factor_pipeline(4, k);
    Polynomial rebuilt =
        Int(report.c.get_num()) *
        (Polynomial::var_power(report.T.table(),
                               report.T.table()->require_index("a4"),
                               static_cast<unsigned>(report.d)) *
         report.M.pow(2) * report.T.pow(3));
    EXPECT_EQ(rebuilt - tilde_D(4, k), Polynomial::zero(report.T.table()));
  }
}

TEST(Pipeline, FactorsAreNonZeroSomewhere) {
  std::mt19937_64 rng(601);
  for (int k = 1; k <= 4; ++k) {
    auto report = factor_pipeline(4, k);
    bool m_nonzero = false, t_nonzero = false;
    for (int tries = 0; tries < 20 && !(m_nonzero && t_nonzero); ++tries) {
      auto point = testgen::random_point(rng, 4);
      if (evaluate(report.M, point) != 0) m_nonzero = true;
      if (evaluate(report.T, point) != 0) t_nonzero = true;
    }
    EXPECT_TRUE(m_nonzero) << "k=" << k;
    EXPECT_TRUE(t_nonzero) << "k=" << k;
  }
}

TEST(Pipeline, NumericOracleConfirmsQuartic) {
  Polynomial r4 = big_discriminant(4);
  for (int k = 1; k <= 4; ++k) {
    auto report = factor_pipeline(4, k);
    std::string diagnostic;
    EXPECT_TRUE(confirm_report_numeric(r4, report, 20, 602 + k, &diagnostic))
        << diagnostic;
  }
}

TEST(RestrictionLemma, CubicToQuartic) {
  auto report = verify_restriction_lemma(3);
  EXPECT_TRUE(report.all_passed());
  ASSERT_EQ(report.cases.size(), 4u);  // k=1..3 plus the R case
  for (const auto& item : report.cases) {
    if (item.id == "R") {
      ASSERT_EQ(item.constants.size(), 1u);
      EXPECT_EQ(item.constants[0].second, make_rational(-1, 1));  // (-1)^3
    } else {
      ASSERT_EQ(item.constants.size(), 1u);
      EXPECT_NE(item.constants[0].second, 0);
    }
  }
}

TEST(SpecializedForms, QuarticShapes) {
  // k=1: -27 a^4 d^2 + 256 d^3 restricted shape (two terms).
  auto r1 = verify_specialized_forms(4, 1);
  EXPECT_TRUE(r1.all_passed());
  EXPECT_EQ(r1.cases[0].constants[0].second, make_rational(-27, 1));
  EXPECT_EQ(r1.cases[0].constants[1].second, make_rational(256, 1));

  // k=2: gcd(4,2)=2, so the restriction is the power ladder
  // 16 b^4 d - 128 b^2 d^2 + 256 d^3 (three terms, extremes 16 and 256).
  auto r2 = verify_specialized_forms(4, 2);
  EXPECT_TRUE(r2.all_passed());
  EXPECT_EQ(r2.cases[0].constants[0].second, make_rational(16, 1));
  EXPECT_EQ(r2.cases[0].constants[1].second, make_rational(256, 1));
  EXPECT_NE(r2.cases[0].details.find("terms=3"), std::string::npos);

  // k=4: -27 c^4 + 256 d^3.
  auto r4 = verify_specialized_forms(4, 4);
  EXPECT_TRUE(r4.all_passed());
  EXPECT_EQ(r4.cases[0].constants[0].second, make_rational(256, 1));
  EXPECT_EQ(r4.cases[0].constants[1].second, make_rational(-27, 1));
}

TEST(SpecializedForms, CubicShape) {
  // n=3, k=1: restriction to {a1,a3} is 4 a1^3 a3 + 27 a3^2.
  auto report = verify_specialized_forms(3, 1);
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.cases[0].constants[0].second, make_rational(4, 1));
  EXPECT_EQ(report.cases[0].constants[1].second, make_rational(27, 1));
}

TEST(QhdLemma, CubicAndQuartic) {
  EXPECT_TRUE(verify_qhd(3).all_passed());
  auto report = verify_qhd(4);
  EXPECT_TRUE(report.all_passed());
  // Spot values: QHD(D~_1) = 68 and QHD(M_1) = 12 for n=4.
  bool saw_d1 = false, saw_m1 = false;
  for (const auto& item : report.cases) {
    if (item.id == "D,k=1") {
      saw_d1 = true;
      EXPECT_NE(item.details.find("QHD=68"), std::string::npos);
    }
    if (item.id == "M,k=1") {
      saw_m1 = true;
      EXPECT_NE(item.details.find("QHD=12"), std::string::npos);
    }
  }
  EXPECT_TRUE(saw_d1);
  EXPECT_TRUE(saw_m1);
}

TEST(QhdLemma, ReusesPrecomputedReports) {
  std::vector<FactorizationReport> reports;
  for (int k = 1; k <= 4; ++k) reports.push_back(factor_pipeline(4, k));
  EXPECT_TRUE(verify_qhd(4, &reports).all_passed());
}

}  // namespace
