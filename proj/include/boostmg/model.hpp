#pragma once

// Canonical optimization model: minimize c'x subject to A x = b and
// per-variable bounds, with an integrality mask for the binary commitment
// variables. Inequalities are expressed by the builders through explicit
// slack columns.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace boostmg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Compressed sparse columns; row indices strictly increasing within a column.
struct SparseCols {
  int rows = 0;
  std::vector<int> starts{0};  // size cols()+1
  std::vector<int> index;
  std::vector<double> value;

  int cols() const { return static_cast<int>(starts.size()) - 1; }
};

struct StandardFormModel {
  std::vector<double> obj;
  std::vector<double> lower;
  std::vector<double> upper;   // may be +inf
  std::vector<std::uint8_t> is_integer;  // binaries only
  SparseCols cols;             // equality constraints A x = rhs
  std::vector<double> rhs;
  std::vector<std::string> names;  // optional, aligned with columns when set

  int num_vars() const { return static_cast<int>(obj.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
  bool has_integers() const;

  // Throws std::invalid_argument when dimensions or bounds are inconsistent.
  void validate() const;
};

// Incremental construction; coefficients may arrive in any order.
class ModelBuilder {
 public:
  int add_var(std::string name, double lb, double ub, double cost,
              bool integer = false);
  int add_row(double rhs);
  void set_coef(int row, int var, double value);

  StandardFormModel build();

 private:
  struct Entry {
    int row;
    int var;
    double value;
  };
  StandardFormModel m_;
  std::vector<Entry> entries_;
};

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNodeLimit,
};

const char* to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x;              // structural variable values
  std::vector<double> duals;          // one per row
  std::vector<double> reduced_costs;  // one per structural variable
  long iterations = 0;
  long nodes = 0;
  std::vector<double> incumbent_history;  // MILP: objective at each improvement
  double wall_seconds = 0.0;
};

// Plain-text listing of the model (objective, rows, bounds) for external
// cross-checking.
std::string dump_model(const StandardFormModel& m);

}  // namespace boostmg
