#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinbath {

/// Sampled trajectory: a time column followed by named value columns, plus
/// ordered key/value metadata emitted as a `#` header in CSV.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<std::string> columns);

  /// Row length must match the header; the first column must increase strictly.
  void add_row(std::vector<double> row);
  void set_meta(std::string key, std::string value);
  void set_meta(std::string key, double value);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }
  std::size_t size() const { return rows_.size(); }

  std::vector<double> column(std::string_view name) const;
  const std::string* meta(std::string_view key) const;

  void write_csv(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// Shortest round-trip decimal representation.
std::string format_number(double v);

/// n evenly spaced samples on [t0, t1], endpoints included.
std::vector<double> linspace(double t0, double t1, int n);

}  // namespace spinbath
