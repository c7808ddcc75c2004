#pragma once

#include <string>
#include <vector>

namespace givp {

// A labeled column of numeric observations.
struct Series {
  std::string label;
  std::vector<double> values;
};

enum class StdDivisor { sample, population };

struct Summary {
  double median = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Median (even counts average the two middle values), mean, and standard
// deviation. Divisor is n-1 by default; a single observation reports
// deviation 0 under either divisor. Throws std::invalid_argument on an
// empty series.
Summary summary(const Series& s, StdDivisor divisor = StdDivisor::sample);

// Sample Pearson correlation coefficient, clamped to [-1, 1]. Requires equal
// lengths >= 2 and nonzero variance in both series.
double pearson(const Series& x, const Series& y);

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares fit y = slope * x + intercept. Requires equal
// lengths >= 2 and nonconstant x.
LinFit linfit(const Series& x, const Series& y);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int> counts;

  // bins + 1 boundaries; bins are right-open except the last, which is
  // closed so the maximum lands in it.
  std::vector<double> edges() const;
};

// Equal-width bins over [min, max]. A constant series puts all mass in the
// first bin. Requires bins >= 1 and a non-empty series.
Histogram histogram(const Series& s, int bins);

// Maximum-likelihood rate for a Poisson model: the sample mean.
double poisson_mle(const Series& s);

// Minimal CSV table: a header row plus string-valued records. Cells are kept
// exactly as written so save(load(path)) reproduces the file byte for byte.
// No quoting: cells must not contain commas or newlines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable load_csv(const std::string& path);
void save_csv(const CsvTable& t, const std::string& path);

// Index of a header column; throws std::invalid_argument if absent.
int column_index(const CsvTable& t, const std::string& name);

// Whether the whole cell parses as a finite number.
bool is_number(const std::string& cell);

// Extracts a column as a Series labeled by the header name. Throws
// std::invalid_argument if any cell in the column fails to parse; filter
// non-data rows (summary rows keyed by MED/AVG/STD) before calling.
Series numeric_column(const CsvTable& t, const std::string& name);

}  // namespace givp
