#include "givp/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace givp {

namespace {

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Centered second moments; the building block for pearson and linfit.
struct Moments {
  double mx, my, sxx, syy, sxy;
};

Moments moments(const Series& x, const Series& y, const char* what) {
  if (x.values.size() != y.values.size())
    throw std::invalid_argument(std::string(what) + ": series lengths differ");
  if (x.values.size() < 2)
    throw std::invalid_argument(std::string(what) + ": needs at least two observations");
  Moments m{mean_of(x.values), mean_of(y.values), 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const double dx = x.values[i] - m.mx;
    const double dy = y.values[i] - m.my;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

Summary summary(const Series& s, StdDivisor divisor) {
  const std::size_t n = s.values.size();
  if (n == 0) throw std::invalid_argument("summary: empty series");
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  Summary out;
  out.median = (n % 2 == 1) ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  out.mean = mean_of(s.values);
  double ss = 0.0;
  for (double x : s.values) {
    const double d = x - out.mean;
    ss += d * d;
  }
  if (n == 1) {
    out.stddev = 0.0;
  } else {
    const double div = divisor == StdDivisor::sample
                           ? static_cast<double>(n - 1)
                           : static_cast<double>(n);
    out.stddev = std::sqrt(ss / div);
  }
  return out;
}

double pearson(const Series& x, const Series& y) {
  const Moments m = moments(x, y, "pearson");
  if (m.sxx == 0.0 || m.syy == 0.0)
    throw std::invalid_argument("pearson: zero variance");
  const double r = m.sxy / std::sqrt(m.sxx * m.syy);
  return std::clamp(r, -1.0, 1.0);
}

LinFit linfit(const Series& x, const Series& y) {
  const Moments m = moments(x, y, "linfit");
  if (m.sxx == 0.0) throw std::invalid_argument("linfit: constant x");
  LinFit fit;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.my - fit.slope * m.mx;
  return fit;
}

std::vector<double> Histogram::edges() const {
  std::vector<double> e(counts.size() + 1);
  const double width = (hi - lo) / static_cast<double>(counts.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = lo + width * static_cast<double>(i);
  e.back() = hi;
  return e;
}

Histogram histogram(const Series& s, int bins) {
  if (s.values.empty()) throw std::invalid_argument("histogram: empty series");
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  Histogram h;
  const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
  h.lo = *mn;
  h.hi = *mx;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  if (h.lo == h.hi) {
    h.counts[0] = static_cast<int>(s.values.size());
    return h;
  }
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : s.values) {
    auto idx = static_cast<long>((v - h.lo) / width);
    idx = std::clamp(idx, 0L, static_cast<long>(bins) - 1L);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

double poisson_mle(const Series& s) {
  if (s.values.empty()) throw std::invalid_argument("poisson_mle: empty series");
  return mean_of(s.values);
}

CsvTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::runtime_error("load_csv: missing header row in " + path);
  return t;
}

void save_csv(const CsvTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path);
  auto write_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  write_row(t.header);
  for (const auto& row : t.rows) write_row(row);
  if (!out) throw std::runtime_error("save_csv: write failed for " + path);
}

int column_index(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("column_index: no column named " + name);
}

bool is_number(const std::string& cell) {
  if (cell.empty()) return false;
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

Series numeric_column(const CsvTable& t, const std::string& name) {
  const auto col = static_cast<std::size_t>(column_index(t, name));
  Series s;
  s.label = name;
  s.values.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (col >= row.size())
      throw std::invalid_argument("numeric_column: short row in column " + name);
    const std::string& cell = row[col];
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
      throw std::invalid_argument("numeric_column: cell '" + cell +
                                  "' in column " + name + " is not numeric");
    s.values.push_back(value);
  }
  return s;
}

}  // namespace givp
