#include "admlab/classification.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace admlab;

TEST(Matrix, ReproducesPublishedTable) {
    MatrixConfig cfg;
    cfg.replications = 4000;
    cfg.caa_horizon = 20000;
    const auto cells = derive_matrix(cfg);
    EXPECT_EQ(cells.size(), 37u);
    EXPECT_TRUE(compare_with_published(cells).empty());
    for (const auto& c : cells) {
        EXPECT_FALSE(c.evidence.check.empty());
        EXPECT_FALSE(c.evidence.threshold.empty());
        if (c.verdict == Verdict::unverifiable) EXPECT_EQ(c.criterion, Criterion::caa);
    }
}

TEST(Matrix, MismatchIsReported) {
    std::vector<MatrixCell> cells{{Procedure::P2, Criterion::blackwell, Verdict::check, {}, ""}};
    const auto m = compare_with_published(cells);
    bool found = false;
    for (const auto& x : m) found = found || (x.procedure == Procedure::P2 && x.criterion == Criterion::blackwell);
    EXPECT_TRUE(found);
}

TEST(Render, EmptyGivesHeaderOnly) {
    std::ostringstream text;
    render_matrix_text(text, {});
    const std::string t = text.str();
    EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 1);
    std::ostringstream csv;
    render_matrix_csv(csv, {});
    EXPECT_EQ(csv.str(), "procedure,criterion,verdict,footnote,check,measured,threshold,note\n");
}

TEST(Render, SingleCellSingleRow) {
    std::vector<MatrixCell> cells{{Procedure::P3, Criterion::av, Verdict::check, {"x", 0.01, "t", "n"}, ""}};
    std::ostringstream text;
    render_matrix_text(text, cells);
    const std::string t = text.str();
    EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 2);
    EXPECT_NE(t.find("P3: LR e-proc"), std::string::npos);
    std::ostringstream csv;
    render_matrix_csv(csv, cells);
    EXPECT_NE(csv.str().find("P3,av,check,,x,0.01,\"t\",\"n\""), std::string::npos);
}

TEST(Published, DaggerCellAndRange) {
    EXPECT_EQ(published_verdict(Procedure::P6, Criterion::blackwell), Verdict::cross);
    EXPECT_EQ(published_verdict(Procedure::P6, Criterion::blackwell_within_coverage), Verdict::check);
    EXPECT_FALSE(published_verdict(Procedure::P1, Criterion::blackwell_within_coverage).has_value());
    EXPECT_EQ(published_verdict(Procedure::P1, Criterion::caa), Verdict::unverifiable);
}
