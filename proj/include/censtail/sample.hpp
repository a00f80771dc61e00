#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace censtail {

struct Observation {
  double z;   // min(X, C), strictly positive
  int delta;  // 1 if X was observed, 0 if censored

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Raw censored data in input order. Validated on construction.
class CensoredSample {
 public:
  explicit CensoredSample(std::vector<Observation> observations);
  CensoredSample(std::span<const double> z, std::span<const int> delta);

  std::size_t size() const noexcept { return obs_.size(); }
  const std::vector<Observation>& observations() const noexcept { return obs_; }
  const Observation& operator[](std::size_t i) const { return obs_[i]; }

  // Multiplies every observation by c > 0.
  CensoredSample scaled(double c) const;

 private:
  std::vector<Observation> obs_;
};

// Ascending order statistics Z_{1:n} <= ... <= Z_{n:n} with their
// concomitant indicators. Index 0 holds Z_{1:n}.
class SortedCensoredSample {
 public:
  std::size_t size() const noexcept { return z_.size(); }
  const std::vector<double>& z() const noexcept { return z_; }
  const std::vector<int>& delta() const noexcept { return delta_; }

  // 1-based accessors matching the order-statistic notation.
  double order_stat(std::size_t i) const { return z_[i - 1]; }
  int concomitant(std::size_t i) const { return delta_[i - 1]; }

 private:
  friend SortedCensoredSample sort_with_concomitants(const CensoredSample&);
  std::vector<double> z_;
  std::vector<int> delta_;
};

// Ties on z: uncensored before censored, then original index order.
SortedCensoredSample sort_with_concomitants(const CensoredSample& sample);

enum class HeaderMode { Detect, Present, Absent };

struct CsvFormat {
  HeaderMode header = HeaderMode::Detect;
};

CensoredSample read_csv(std::istream& in, CsvFormat format = {});
CensoredSample read_csv(const std::filesystem::path& path, CsvFormat format = {});

// A rectangular table with named columns. std::monostate marks an undefined
// cell and is written as "NA".
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

// Doubles are written with 17 significant digits; a ".0" suffix is added to
// integral values so they read back as doubles.
std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
// Writes to a sibling temporary and renames, so no partial file is left on
// failure.
void write_csv(const Table& table, const std::filesystem::path& path);

// Writes `text` to a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

// Reads a table written by write_csv (header line required).
Table read_table(std::istream& in);

}  // namespace censtail
