#ifndef NONINFO_TABLES_HPP
#define NONINFO_TABLES_HPP

#include "noninfo/equivalence.hpp"
#include "noninfo/optimizer.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace noninfo
{

/// Model, parameter box and starting support size of one published table.
struct TableSetup
{
    std::string id; // "1", "2", "2b", "3", "5"
    ModelSpec model;
    ParamBox box;
    int m = 3;
};

/// Setups in publication order.
std::vector<TableSetup> table_setups();
TableSetup table_setup(const std::string& id);

/// Published design of one table column; empty points mean "not tabulated".
struct ReferenceDesign
{
    std::vector<double> points;
    std::vector<double> weights;
};

std::optional<ReferenceDesign> reference_design(const std::string& table, CriterionKind kind);

struct TableOptions
{
    std::uint64_t seed = 7;
    int restarts = 24;
    QuadratureRule quadrature;
    int grid = kDefaultGrid;
    double verify_tol = kDefaultVerifyTol;
    double cell_tol = 2e-3;
    Exec exec = Exec::Parallel;
    /// Subset of table ids; empty runs all.
    std::vector<std::string> only;
};

/// One computed column: an optimizer or closed-form design plus its verification.
struct TableColumn
{
    std::string table;
    CriterionKind kind = CriterionKind::BayesDUniform;
    std::string source; // "optimizer", "polyopt", "closed_form"
    Design design;
    double objective = kNegInf;
    bool escalated = false;
    SensitivityReport report;
    /// Reported but excluded from the exit status.
    bool open_question = false;
    std::string note;

    std::string slug() const;
};

struct CellCheck
{
    std::string table;
    std::string column;
    std::string quantity; // "x" or "w"
    int index = 0;
    double computed = 0.0;
    double reference = 0.0;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool open_question = false;
    bool pass = false;
};

struct TablesReport
{
    std::vector<TableColumn> columns;
    std::vector<CellCheck> cells;

    /// True when every cell outside the open-question set is within tolerance.
    bool pass() const;
    const TableColumn* find(const std::string& table, CriterionKind kind, const std::string& source) const;
};

TablesReport reproduce_tables(const TableOptions& opts);

nlohmann::json to_json(const TablesReport& r);
std::string format_tables(const TablesReport& r);

/// Writes tables.json, tables.txt and one sensitivity CSV per column into dir.
void write_tables(const TablesReport& r, const std::string& dir);

} // namespace noninfo

#endif // NONINFO_TABLES_HPP
