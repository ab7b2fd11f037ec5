#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coda/composition.hpp"
#include "coda/error.hpp"
#include "test_support.hpp"

namespace coda {
namespace {

const std::vector<std::string> kTaDen = {"NCL", "CL"};
const std::vector<std::string> kTa = {"TA"};

Composition comp(std::initializer_list<Part> parts) { return Composition::from_parts(std::vector<Part>(parts)); }

Composition sample() { return comp({{"TA", 4}, {"NCL", 2}, {"CL", 1}}); }

PartitionTree fig6() { return parse_sbp("(TA|(NCL|CL))"); }

// --- validate_composition -------------------------------------------------

TEST(ValidateComposition, AcceptsPositiveParts) {
    const Composition x = comp({{"TA", 8}, {"NCL", 2}, {"CL", 2}});
    EXPECT_EQ(x.dimension(), 3u);
}

TEST(ValidateComposition, RejectsZeroPart) {
    try {
        comp({{"TA", 8}, {"NCL", 0}, {"CL", 2}});
        FAIL() << "expected CompositionError";
    } catch (const CompositionError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_EQ(e.issues()[0].kind, CompositionError::Kind::NonPositivePart);
        EXPECT_EQ(e.issues()[0].label, "NCL");
        EXPECT_EQ(e.issues()[0].value, 0.0);
    }
}

TEST(ValidateComposition, RejectsNegativePart) {
    try {
        comp({{"TA", 8}, {"NCL", -1}, {"CL", 2}});
        FAIL() << "expected CompositionError";
    } catch (const CompositionError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_EQ(e.issues()[0].label, "NCL");
        EXPECT_EQ(e.issues()[0].value, -1.0);
    }
}

TEST(ValidateComposition, NamesEveryOffendingPart) {
    try {
        comp({{"A", 0}, {"B", -2}, {"A", 3}, {"C", 1}});
        FAIL() << "expected CompositionError";
    } catch (const CompositionError& e) {
        EXPECT_EQ(e.issues().size(), 3u);
        EXPECT_TRUE(e.has(CompositionError::Kind::DuplicateLabel));
        EXPECT_TRUE(e.has(CompositionError::Kind::NonPositivePart));
        EXPECT_NE(std::string(e.what()).find("'B'"), std::string::npos);
    }
}

TEST(ValidateComposition, RejectsSinglePartAndNonFinite) {
    EXPECT_THROW(comp({{"A", 1}}), CompositionError);
    EXPECT_THROW(comp({{"A", 1}, {"B", std::nan("")}}), CompositionError);
    EXPECT_THROW(comp({{"A", 1}, {"B", INFINITY}}), CompositionError);
    EXPECT_THROW(comp({{"", 1}, {"B", 2}}), CompositionError);
}

// --- balance ---------------------------------------------------------------

TEST(Balance, AllEqualIsZero) {
    const Composition x = comp({{"TA", 1}, {"NCL", 1}, {"CL", 1}});
    EXPECT_EQ(balance(x, kTa, kTaDen), 0.0);
}

TEST(Balance, ThreePartExample) {
    // sqrt(2/3) ln(4 / sqrt(2)), mpmath 30 digits.
    EXPECT_NEAR(balance(sample(), kTa, kTaDen), 0.848928454510332771, 1e-12);
}

TEST(Balance, SwappingGroupsNegatesExactly) {
    EXPECT_EQ(balance(sample(), kTaDen, kTa), -balance(sample(), kTa, kTaDen));
    std::mt19937_64 rng(7);
    const auto labels = testing::part_labels(6);
    for (int i = 0; i < 200; ++i) {
        const Composition x = testing::random_composition(labels, rng);
        const std::vector<std::string> num = {"P1", "P4"};
        const std::vector<std::string> den = {"P2", "P3", "P6"};
        EXPECT_EQ(balance(x, num, den), -balance(x, den, num));
    }
}

TEST(Balance, Errors) {
    const std::vector<std::string> none;
    const std::vector<std::string> bogus = {"XX"};
    const std::vector<std::string> overlap = {"TA", "CL"};
    EXPECT_THROW(balance(sample(), bogus, kTaDen), LabelError);
    EXPECT_THROW(balance(sample(), none, kTaDen), LabelError);
    try {
        balance(sample(), overlap, kTaDen);
        FAIL();
    } catch (const LabelError& e) {
        EXPECT_EQ(e.kind(), LabelError::Kind::OverlappingGroups);
        EXPECT_EQ(e.label(), "CL");
    }
}

// --- ilr / clr / pairwise ---------------------------------------------------

TEST(IlrTransform, NeutralElement) {
    const BalanceVector y = ilr_transform(comp({{"TA", 1}, {"NCL", 1}, {"CL", 1}}), fig6());
    ASSERT_EQ(y.size(), 2u);
    EXPECT_EQ(y.coords[0].value, 0.0);
    EXPECT_EQ(y.coords[1].value, 0.0);
    EXPECT_EQ(y.coords[0].name, "y1");
    EXPECT_EQ(y.tree_fingerprint, fig6().fingerprint());
}

TEST(IlrTransform, ThreePartExample) {
    const BalanceVector y = ilr_transform(sample(), fig6());
    EXPECT_NEAR(y.coords[0].value, 0.848928454510332771, 1e-12);
    EXPECT_NEAR(y.coords[1].value, 0.490129071734273596, 1e-12);
}

TEST(IlrTransform, TwoPartDemoFirm) {
    const Composition x = comp({{"Mg1", 0.5}, {"Mg2", 4}});
    const BalanceVector y = ilr_transform(x, parse_sbp("(Mg2|Mg1)"));
    ASSERT_EQ(y.size(), 1u);
    EXPECT_NEAR(y.coords[0].value, 1.470387215202820788, 1e-12);
}

TEST(IlrTransform, PartOrderDoesNotMatter) {
    const Composition shuffled = comp({{"CL", 1}, {"TA", 4}, {"NCL", 2}});
    EXPECT_EQ(ilr_transform(shuffled, fig6()).values(), ilr_transform(sample(), fig6()).values());
}

TEST(IlrTransform, LabelMismatch) {
    const Composition x = comp({{"TA", 1}, {"NCL", 1}, {"INV", 1}});
    try {
        ilr_transform(x, fig6());
        FAIL();
    } catch (const LabelMismatch& e) {
        EXPECT_EQ(e.missing(), std::vector<std::string>{"INV"});
        EXPECT_EQ(e.extra(), std::vector<std::string>{"CL"});
    }
}

TEST(IlrTransform, ScaleInvariance) {
    std::mt19937_64 rng(11);
    const auto labels = testing::part_labels(5);
    const PartitionTree tree = parse_sbp(testing::random_sbp(labels, rng));
    std::uniform_real_distribution<double> lambda(1e-6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const Composition x = testing::random_composition(labels, rng);
        const auto a = ilr_transform(x, tree).values();
        const auto b = ilr_transform(x.scaled(lambda(rng)), tree).values();
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_NEAR(a[k], b[k], 1e-12);
        }
    }
}

TEST(IlrInverse, NeutralElement) {
    const std::vector<double> zero = {0.0, 0.0};
    const Composition x = ilr_inverse(zero, fig6());
    for (const Part& p : x.parts()) {
        EXPECT_NEAR(p.value, 1.0 / 3.0, 1e-15);
    }
}

TEST(IlrInverse, RecoversClosedComposition) {
    const Composition back = ilr_inverse(ilr_transform(sample(), fig6()), fig6());
    EXPECT_NEAR(back.value("TA"), 4.0 / 7.0, 1e-12);
    EXPECT_NEAR(back.value("NCL"), 2.0 / 7.0, 1e-12);
    EXPECT_NEAR(back.value("CL"), 1.0 / 7.0, 1e-12);
}

TEST(IlrInverse, TwoPart) {
    const std::vector<double> y = {std::sqrt(0.5) * std::log(2.0)};
    const Composition x = ilr_inverse(y, parse_sbp("(A|B)"));
    EXPECT_NEAR(x.value("A"), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(x.value("B"), 1.0 / 3.0, 1e-12);
}

TEST(IlrInverse, Errors) {
    const std::vector<double> wrong = {1.0};
    EXPECT_THROW(ilr_inverse(wrong, fig6()), LengthMismatch);
    BalanceVector y = ilr_transform(sample(), fig6());
    EXPECT_THROW(ilr_inverse(y, parse_sbp("((TA|NCL)|CL)")), TreeMismatch);
}

TEST(IlrInverse, RoundTripFromCoordinates) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-20.0, 20.0);
    for (std::size_t d = 2; d <= 7; ++d) {
        const PartitionTree tree = parse_sbp(testing::random_sbp(testing::part_labels(d), rng));
        for (int i = 0; i < 50; ++i) {
            std::vector<double> y(d - 1);
            for (double& v : y) v = coord(rng);
            const auto again = ilr_transform(ilr_inverse(y, tree), tree).values();
            for (std::size_t k = 0; k < y.size(); ++k) {
                EXPECT_NEAR(again[k], y[k], 1e-12);
            }
        }
    }
}

TEST(ClrTransform, Examples) {
    const auto zero = clr_transform(comp({{"a", 1}, {"b", 1}, {"c", 1}}));
    for (double v : zero) EXPECT_EQ(v, 0.0);
    const auto c = clr_transform(comp({{"a", std::exp(1.0)}, {"b", 1}, {"c", 1}}));
    EXPECT_NEAR(c[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(c[1], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(c[2], -1.0 / 3.0, 1e-15);
}

TEST(ClrTransform, ContrastTimesClrIsIlr) {
    std::mt19937_64 rng(5);
    for (std::size_t d = 2; d <= 8; ++d) {
        const auto labels = testing::part_labels(d);
        const PartitionTree tree = parse_sbp(testing::random_sbp(labels, rng));
        const ContrastMatrix v = contrast_matrix(tree);
        for (int i = 0; i < 30; ++i) {
            // clr in tree leaf order
            const Composition x = testing::random_composition(tree.leaf_labels(), rng);
            const auto clr = clr_transform(x);
            double sum = 0.0;
            for (double c : clr) sum += c;
            EXPECT_NEAR(sum, 0.0, 1e-12);
            const auto via_matrix = v.apply(clr);
            const auto direct = ilr_transform(x, tree).values();
            for (std::size_t k = 0; k < direct.size(); ++k) {
                EXPECT_NEAR(via_matrix[k], direct[k], 1e-12);
            }
        }
    }
}

TEST(PairwiseLogratio, Examples) {
    EXPECT_EQ(pairwise_logratio(comp({{"a", 3}, {"b", 3}}), "a", "b"), 0.0);
    EXPECT_NEAR(pairwise_logratio(sample(), "TA", "NCL"), 0.490129071734273596, 1e-12);
    EXPECT_THROW(pairwise_logratio(sample(), "TA", "TA"), LabelError);
    EXPECT_THROW(pairwise_logratio(sample(), "TA", "ZZ"), LabelError);
}

TEST(PairwiseLogratio, LinearCombinationOfSolvencyBalances) {
    std::mt19937_64 rng(13);
    const std::vector<std::string> labels = {"TA", "NCL", "CL"};
    for (int i = 0; i < 500; ++i) {
        const Composition x = testing::random_composition(labels, rng, 2.0);
        const auto y = ilr_transform(x, fig6()).values();
        const double combo = std::sqrt(0.5) * (std::sqrt(1.5) * y[0] - std::sqrt(0.5) * y[1]);
        EXPECT_NEAR(combo, pairwise_logratio(x, "TA", "NCL"), 1e-12);
    }
}

TEST(AitchisonDistance, Examples) {
    const Composition x = sample();
    EXPECT_EQ(aitchison_distance(x, x, fig6()), 0.0);
    EXPECT_NEAR(aitchison_distance(x, x.scaled(123.5), fig6()), 0.0, 1e-12);
    const Composition a = comp({{"A", 1}, {"B", 1}});
    const Composition b = comp({{"A", std::exp(1.0)}, {"B", 1}});
    EXPECT_NEAR(aitchison_distance(a, b, parse_sbp("(A|B)")), std::sqrt(0.5), 1e-15);
}

TEST(AitchisonDistance, SameForEveryTree) {
    std::mt19937_64 rng(17);
    for (std::size_t d = 3; d <= 6; ++d) {
        const auto labels = testing::part_labels(d);
        for (int i = 0; i < 20; ++i) {
            const PartitionTree t1 = parse_sbp(testing::random_sbp(labels, rng));
            const PartitionTree t2 = parse_sbp(testing::random_sbp(labels, rng));
            const Composition x = testing::random_composition(labels, rng);
            const Composition z = testing::random_composition(labels, rng);
            EXPECT_NEAR(aitchison_distance(x, z, t1), aitchison_distance(x, z, t2), 1e-10);
        }
    }
}

TEST(ContrastMatrix, SolvencyTreeRows) {
    const ContrastMatrix v = contrast_matrix(fig6());
    ASSERT_EQ(v.rows, 2u);
    ASSERT_EQ(v.cols, 3u);
    EXPECT_NEAR(v(0, 0), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(v(0, 1), -std::sqrt(1.0 / 6.0), 1e-15);
    EXPECT_NEAR(v(0, 2), -std::sqrt(1.0 / 6.0), 1e-15);
    EXPECT_EQ(v(1, 0), 0.0);
    EXPECT_NEAR(v(1, 1), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(v(1, 2), -std::sqrt(0.5), 1e-15);
}

TEST(ContrastMatrix, TwoPart) {
    const ContrastMatrix v = contrast_matrix(parse_sbp("(A|B)"));
    ASSERT_EQ(v.rows, 1u);
    EXPECT_NEAR(v(0, 0), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(v(0, 1), -std::sqrt(0.5), 1e-15);
}

TEST(ContrastMatrix, OrthonormalZeroSumRows) {
    std::mt19937_64 rng(19);
    for (std::size_t d = 2; d <= 10; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            const ContrastMatrix v = contrast_matrix(parse_sbp(testing::random_sbp(testing::part_labels(d), rng)));
            for (std::size_t i = 0; i < v.rows; ++i) {
                double sum = 0.0;
                for (double e : v.row(i)) sum += e;
                EXPECT_NEAR(sum, 0.0, 1e-12);
                for (std::size_t j = 0; j < v.rows; ++j) {
                    double dot = 0.0;
                    for (std::size_t c = 0; c < v.cols; ++c) dot += v(i, c) * v(j, c);
                    EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
                }
            }
        }
    }
}

}  // namespace
}  // namespace coda
