#include "proxtrace/core.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

namespace proxtrace {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void check_dims(const Vec& p, const Vec& q, const char* op) {
  if (p.size() != q.size()) {
    fail(std::string(op) + ": dimension mismatch (" + std::to_string(p.size()) +
         " vs " + std::to_string(q.size()) + ")");
  }
}

}  // namespace

bool all_finite(const Vec& x) { return x.allFinite(); }

double distance(const Vec& p, const Vec& q) {
  check_dims(p, q, "distance");
  return (p - q).norm();
}

GuaranteeViolation::GuaranteeViolation(std::size_t iteration, double stepsize, double limit)
    : std::runtime_error("stepsize guarantee violated at k=" + std::to_string(iteration) +
                         ": alpha=" + format_double(stepsize) + " exceeds 1/L=" +
                         format_double(limit)),
      iteration_(iteration),
      stepsize_(stepsize) {}

Trajectory::Trajectory(std::string label, std::vector<Vec> points,
                       std::vector<double> stepsizes,
                       std::vector<double> objective_values)
    : label_(std::move(label)),
      points_(std::move(points)),
      stepsizes_(std::move(stepsizes)),
      objective_values_(std::move(objective_values)) {
  if (!points_.empty()) {
    const Eigen::Index d = points_.front().size();
    if (d < 1) fail("trajectory: points must have dimension >= 1");
    for (const Vec& x : points_) {
      if (x.size() != d) fail("trajectory: all points must share one dimension");
      if (!all_finite(x)) fail("trajectory: non-finite coordinate");
    }
  }
  if (!stepsizes_.empty()) {
    if (stepsizes_.size() + 1 != points_.size())
      fail("trajectory: stepsizes must have one entry per transition");
    for (double a : stepsizes_)
      if (!(a > 0.0)) fail("trajectory: stepsizes must be strictly positive");
  }
  if (!objective_values_.empty() && objective_values_.size() != points_.size())
    fail("trajectory: objective values must have one entry per point");
}

Trajectory Trajectory::prefix(std::size_t count) const {
  if (count > points_.size()) count = points_.size();
  std::vector<Vec> pts(points_.begin(), points_.begin() + count);
  std::vector<double> st;
  if (!stepsizes_.empty() && count > 0)
    st.assign(stepsizes_.begin(), stepsizes_.begin() + (count - 1));
  std::vector<double> obj;
  if (!objective_values_.empty())
    obj.assign(objective_values_.begin(), objective_values_.begin() + count);
  return Trajectory(label_, std::move(pts), std::move(st), std::move(obj));
}

TrajectoryBuilder& TrajectoryBuilder::start(Vec x0) {
  points_.clear();
  stepsizes_.clear();
  objective_values_.clear();
  points_.push_back(std::move(x0));
  return *this;
}

TrajectoryBuilder& TrajectoryBuilder::start(Vec x0, double objective) {
  start(std::move(x0));
  objective_values_.push_back(objective);
  return *this;
}

TrajectoryBuilder& TrajectoryBuilder::append(Vec x) {
  points_.push_back(std::move(x));
  return *this;
}

TrajectoryBuilder& TrajectoryBuilder::append(Vec x, double stepsize) {
  points_.push_back(std::move(x));
  stepsizes_.push_back(stepsize);
  return *this;
}

TrajectoryBuilder& TrajectoryBuilder::append(Vec x, double stepsize, double objective) {
  append(std::move(x), stepsize);
  objective_values_.push_back(objective);
  return *this;
}

Trajectory TrajectoryBuilder::freeze() && {
  return Trajectory(std::move(label_), std::move(points_), std::move(stepsizes_),
                    std::move(objective_values_));
}

double length(const Trajectory& t) {
  if (t.empty()) fail("length: empty trajectory");
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) sum += distance(t[k + 1], t[k]);
  return sum;
}

double diameter(const Trajectory& t) {
  if (t.empty()) fail("diameter: empty trajectory");
  double best = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      best = std::max(best, distance(t[i], t[j]));
  return best;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(const Trajectory& t, std::ostream& out) {
  if (t.empty()) fail("write_trajectory_csv: empty trajectory");
  const Eigen::Index d = t.dimension();
  out << "k";
  for (Eigen::Index i = 0; i < d; ++i) out << ",x" << i;
  if (t.has_stepsizes()) out << ",alpha";
  if (t.has_objective_values()) out << ",objective";
  out << "\n";
  for (std::size_t k = 0; k < t.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < d; ++i) out << "," << format_double(t[k][i]);
    if (t.has_stepsizes()) {
      out << ",";
      if (k > 0) out << format_double(t.stepsizes()[k - 1]);
    }
    if (t.has_objective_values()) out << "," << format_double(t.objective_values()[k]);
    out << "\n";
  }
}

void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("write_trajectory_csv: cannot open " + path.string());
  write_trajectory_csv(t, out);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const char* what) {
  double v{};
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    fail("csv row " + std::to_string(row) + ": bad " + std::string(what) + " value '" +
         cell + "'");
  }
  return v;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in, std::string label) {
  std::string line;
  if (!std::getline(in, line)) fail("csv: missing header row");
  const std::vector<std::string> header = split_csv_row(line);
  if (header.empty() || header[0] != "k") fail("csv: header must start with 'k'");

  std::size_t d = 0;
  std::size_t col = 1;
  while (col < header.size() && header[col] == "x" + std::to_string(d)) {
    ++d;
    ++col;
  }
  if (d == 0) fail("csv: header has no coordinate columns");
  bool has_alpha = false;
  bool has_objective = false;
  if (col < header.size() && header[col] == "alpha") {
    has_alpha = true;
    ++col;
  }
  if (col < header.size() && header[col] == "objective") {
    has_objective = true;
    ++col;
  }
  if (col != header.size()) fail("csv: unrecognized header column '" + header[col] + "'");

  std::vector<Vec> points;
  std::vector<double> stepsizes;
  std::vector<double> objectives;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_row(line);
    if (cells.size() != col)
      fail("csv row " + std::to_string(row) + ": expected " + std::to_string(col) +
           " cells, got " + std::to_string(cells.size()));
    const double kv = parse_cell(cells[0], row, "index");
    if (kv != static_cast<double>(row))
      fail("csv row " + std::to_string(row) + ": index out of order");
    Vec x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      x[static_cast<Eigen::Index>(i)] = parse_cell(cells[1 + i], row, "coordinate");
    }
    if (!all_finite(x)) fail("csv row " + std::to_string(row) + ": non-finite coordinate");
    points.push_back(std::move(x));
    std::size_t c = 1 + d;
    if (has_alpha) {
      const std::string& cell = cells[c++];
      if (row == 0) {
        if (!cell.empty()) fail("csv row 0: alpha cell must be empty");
      } else {
        if (cell.empty()) fail("csv row " + std::to_string(row) + ": missing alpha");
        stepsizes.push_back(parse_cell(cell, row, "alpha"));
      }
    }
    if (has_objective) objectives.push_back(parse_cell(cells[c], row, "objective"));
    ++row;
  }
  if (points.empty()) fail("csv: no data rows");
  return Trajectory(std::move(label), std::move(points), std::move(stepsizes),
                    std::move(objectives));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("read_trajectory_csv: cannot open " + path.string());
  return read_trajectory_csv(in, path.stem().string());
}

}  // namespace proxtrace
