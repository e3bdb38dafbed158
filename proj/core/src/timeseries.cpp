#include "spinbath/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "spinbath/types.hpp"

namespace spinbath {

TimeSeries::TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidInput("time series needs at least one column");
}

void TimeSeries::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw InvalidInput("row has " + std::to_string(row.size()) + " values, header has " +
                       std::to_string(columns_.size()));
  }
  if (!rows_.empty() && !(row.front() > rows_.back().front())) {
    throw InvalidInput("time column must increase strictly");
  }
  rows_.push_back(std::move(row));
}

void TimeSeries::set_meta(std::string key, std::string value) {
  for (auto& kv : meta_) {
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  }
  meta_.emplace_back(std::move(key), std::move(value));
}

void TimeSeries::set_meta(std::string key, double value) {
  set_meta(std::move(key), format_number(value));
}

std::vector<double> TimeSeries::column(std::string_view name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw InvalidInput("no column named '" + std::string(name) + "'");
  const auto idx = static_cast<std::size_t>(it - columns_.begin());
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[idx]);
  return out;
}

const std::string* TimeSeries::meta(std::string_view key) const {
  for (const auto& kv : meta_)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

void TimeSeries::write_csv(std::ostream& os) const {
  for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 1) throw InvalidInput("linspace needs at least one sample");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = t0;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = t0 + (t1 - t0) * i / (n - 1);
  return out;
}

}  // namespace spinbath
