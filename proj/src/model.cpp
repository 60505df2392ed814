#include "boostmg/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace boostmg {

bool StandardFormModel::has_integers() const {
  return std::any_of(is_integer.begin(), is_integer.end(),
                     [](std::uint8_t b) { return b != 0; });
}

void StandardFormModel::validate() const {
  const std::size_t n = obj.size();
  if (lower.size() != n || upper.size() != n || is_integer.size() != n)
    throw std::invalid_argument("model: variable array sizes disagree");
  if (cols.cols() != static_cast<int>(n))
    throw std::invalid_argument("model: column count disagrees with objective");
  if (cols.rows != static_cast<int>(rhs.size()))
    throw std::invalid_argument("model: row count disagrees with rhs");
  if (!names.empty() && names.size() != n)
    throw std::invalid_argument("model: names size disagrees");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(obj[j]))
      throw std::invalid_argument("model: NaN in variable data");
    if (lower[j] > upper[j])
      throw std::invalid_argument("model: lower bound above upper bound");
    if (!std::isfinite(lower[j]) && !std::isfinite(upper[j]))
      throw std::invalid_argument("model: variable free in both directions");
    if (is_integer[j] && (lower[j] < -1e-12 || upper[j] > 1.0 + 1e-12))
      throw std::invalid_argument("model: integer variable bounds outside [0,1]");
  }
  for (int c = 0; c < cols.cols(); ++c) {
    int prev = -1;
    for (int k = cols.starts[c]; k < cols.starts[c + 1]; ++k) {
      const int r = cols.index[k];
      if (r <= prev || r >= cols.rows)
        throw std::invalid_argument("model: bad row index in column");
      if (!std::isfinite(cols.value[k]))
        throw std::invalid_argument("model: non-finite matrix coefficient");
      prev = r;
    }
  }
  for (double b : rhs)
    if (!std::isfinite(b)) throw std::invalid_argument("model: non-finite rhs");
}

int ModelBuilder::add_var(std::string name, double lb, double ub, double cost,
                          bool integer) {
  m_.obj.push_back(cost);
  m_.lower.push_back(lb);
  m_.upper.push_back(ub);
  m_.is_integer.push_back(integer ? 1 : 0);
  m_.names.push_back(std::move(name));
  return static_cast<int>(m_.obj.size()) - 1;
}

int ModelBuilder::add_row(double rhs) {
  m_.rhs.push_back(rhs);
  return static_cast<int>(m_.rhs.size()) - 1;
}

void ModelBuilder::set_coef(int row, int var, double value) {
  if (value == 0.0) return;
  entries_.push_back({row, var, value});
}

StandardFormModel ModelBuilder::build() {
  const int n = static_cast<int>(m_.obj.size());
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.var != b.var ? a.var < b.var : a.row < b.row;
                   });
  m_.cols.rows = static_cast<int>(m_.rhs.size());
  m_.cols.starts.assign(static_cast<std::size_t>(n) + 1, 0);
  m_.cols.index.clear();
  m_.cols.value.clear();
  m_.cols.index.reserve(entries_.size());
  m_.cols.value.reserve(entries_.size());
  std::size_t k = 0;
  for (int c = 0; c < n; ++c) {
    m_.cols.starts[c] = static_cast<int>(m_.cols.index.size());
    while (k < entries_.size() && entries_[k].var == c) {
      // merge duplicates
      if (!m_.cols.index.empty() &&
          m_.cols.starts[c] < static_cast<int>(m_.cols.index.size()) &&
          m_.cols.index.back() == entries_[k].row) {
        m_.cols.value.back() += entries_[k].value;
      } else {
        m_.cols.index.push_back(entries_[k].row);
        m_.cols.value.push_back(entries_[k].value);
      }
      ++k;
    }
  }
  m_.cols.starts[n] = static_cast<int>(m_.cols.index.size());
  StandardFormModel out = std::move(m_);
  m_ = StandardFormModel{};
  entries_.clear();
  out.validate();
  return out;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration-limit";
    case SolveStatus::kNodeLimit: return "node-limit";
  }
  return "unknown";
}

namespace {
std::string var_name(const StandardFormModel& m, int j) {
  if (!m.names.empty() && !m.names[j].empty()) return m.names[j];
  return "x" + std::to_string(j);
}
}  // namespace

std::string dump_model(const StandardFormModel& m) {
  std::ostringstream os;
  os.precision(17);
  os << "minimize\n ";
  bool first = true;
  for (int j = 0; j < m.num_vars(); ++j) {
    if (m.obj[j] == 0.0) continue;
    os << (first ? " " : " + ") << m.obj[j] << " " << var_name(m, j);
    first = false;
  }
  if (first) os << " 0";
  os << "\nsubject to\n";
  // transpose to rows for readability
  std::vector<std::vector<std::pair<int, double>>> rows(m.num_rows());
  for (int c = 0; c < m.cols.cols(); ++c)
    for (int k = m.cols.starts[c]; k < m.cols.starts[c + 1]; ++k)
      rows[m.cols.index[k]].push_back({c, m.cols.value[k]});
  for (int r = 0; r < m.num_rows(); ++r) {
    os << " r" << r << ":";
    for (auto [c, v] : rows[r]) os << " + " << v << " " << var_name(m, c);
    os << " = " << m.rhs[r] << "\n";
  }
  os << "bounds\n";
  for (int j = 0; j < m.num_vars(); ++j) {
    os << " " << m.lower[j] << " <= " << var_name(m, j) << " <= " << m.upper[j];
    if (m.is_integer[j]) os << " integer";
    os << "\n";
  }
  return os.str();
}

}  // namespace boostmg
