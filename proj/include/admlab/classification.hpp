#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace admlab {

enum class Procedure { P1, P2, P3, P4, P5, P6 };

/// The six table columns, plus the extra cell that carries P6's footnote
/// (admissible within the coverage-feasible class).
enum class Criterion { martingale, blackwell, av, coverage, caa, constructive, blackwell_within_coverage };

enum class Verdict { check, cross, not_applicable, unverifiable };

inline constexpr Procedure kProcedures[] = {Procedure::P1, Procedure::P2, Procedure::P3,
                                            Procedure::P4, Procedure::P5, Procedure::P6};
inline constexpr Criterion kGridCriteria[] = {Criterion::martingale, Criterion::blackwell, Criterion::av,
                                              Criterion::coverage,   Criterion::caa,       Criterion::constructive};

std::string procedure_name(Procedure p);
std::string procedure_label(Procedure p);  // "P1: Bayes" etc.
std::string criterion_name(Criterion c);
std::string verdict_name(Verdict v);  // check, cross, NA, unverifiable
std::string verdict_symbol(Verdict v);  // ✓ × N/A ?

struct Evidence {
    std::string check;      // name of the producing check
    double measured = 0.0;  // NaN for structural cells
    std::string threshold;  // decision rule, human readable
    std::string note;
};

struct MatrixCell {
    Procedure procedure;
    Criterion criterion;
    Verdict verdict;
    Evidence evidence;
    std::string footnote;  // "†" or "‡" when the table carries one
};

struct MatrixConfig {
    std::uint64_t seed = 42;
    std::size_t replications = 10000;  // Ville MC and P6 coverage MC
    std::size_t caa_horizon = 100000;
    double alpha = 0.1;  // set-valued procedures
    std::size_t threads = 0;
};

/// Runs every per-cell check. Returns the 36 grid cells in table order
/// followed by the P6 within-coverage cell.
std::vector<MatrixCell> derive_matrix(const MatrixConfig& config);

/// The published verdict for a grid cell; nullopt for cells outside it.
std::optional<Verdict> published_verdict(Procedure p, Criterion c);

struct CellMismatch {
    Procedure procedure;
    Criterion criterion;
    Verdict derived;
    Verdict published;
};

/// Cells whose derived verdict differs from the published one. A missing
/// grid cell counts as a mismatch with derived = NA only if the published
/// verdict is not NA.
std::vector<CellMismatch> compare_with_published(std::span<const MatrixCell> cells);

/// Grid text: header, one row per procedure present (table order), then one
/// line per out-of-grid cell. An empty list renders the header only.
void render_matrix_text(std::ostream& os, std::span<const MatrixCell> cells);

/// Long form, one row per cell with its evidence.
void render_matrix_csv(std::ostream& os, std::span<const MatrixCell> cells);

}  // namespace admlab
