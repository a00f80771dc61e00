#include "censtail/sample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

#include "censtail/error.hpp"

namespace censtail {
namespace {

void validate(const Observation& o, std::size_t index) {
  if (!(o.z > 0.0) || !std::isfinite(o.z)) {
    throw Error(ErrorCode::NonPositiveObservation,
                "observation " + std::to_string(index + 1) +
                    " must be finite and > 0, got " + format_double(o.z));
  }
  if (o.delta != 0 && o.delta != 1) {
    throw Error(ErrorCode::InvalidIndicator,
                "observation " + std::to_string(index + 1) +
                    " has indicator " + std::to_string(o.delta));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

CensoredSample::CensoredSample(std::vector<Observation> observations)
    : obs_(std::move(observations)) {
  if (obs_.empty()) throw Error(ErrorCode::EmptySample, "sample has no observations");
  for (std::size_t i = 0; i < obs_.size(); ++i) validate(obs_[i], i);
}

CensoredSample::CensoredSample(std::span<const double> z, std::span<const int> delta)
    : CensoredSample([&] {
        if (z.size() != delta.size()) {
          throw Error(ErrorCode::DomainError, "z and delta lengths differ");
        }
        std::vector<Observation> obs(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) obs[i] = {z[i], delta[i]};
        return obs;
      }()) {}

CensoredSample CensoredSample::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::DomainError, "scale factor must be finite and > 0");
  }
  std::vector<Observation> out = obs_;
  for (auto& o : out) o.z *= c;
  return CensoredSample(std::move(out));
}

SortedCensoredSample sort_with_concomitants(const CensoredSample& sample) {
  const auto& obs = sample.observations();
  std::vector<std::size_t> order(obs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (obs[a].z != obs[b].z) return obs[a].z < obs[b].z;
    if (obs[a].delta != obs[b].delta) return obs[a].delta > obs[b].delta;
    return a < b;
  });

  SortedCensoredSample out;
  out.z_.reserve(obs.size());
  out.delta_.reserve(obs.size());
  for (auto i : order) {
    out.z_.push_back(obs[i].z);
    out.delta_.push_back(obs[i].delta);
  }
  return out;
}

CensoredSample read_csv(std::istream& in, CsvFormat format) {
  std::vector<Observation> obs;
  std::string line;
  bool first = true;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    auto view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view);

    if (first) {
      first = false;
      double probe = 0.0;
      bool header = format.header == HeaderMode::Present ||
                    (format.header == HeaderMode::Detect && !parse_double(fields[0], probe));
      if (header) continue;
    }

    ++row;
    if (fields.size() != 2) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row) + ": expected 2 fields, got " +
                      std::to_string(fields.size()),
                  row);
    }
    Observation o{};
    if (!parse_double(fields[0], o.z)) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row) + ": cannot parse value '" +
                      std::string(fields[0]) + "'",
                  row);
    }
    double d = 0.0;
    if (!parse_double(fields[1], d)) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row) + ": cannot parse delta '" +
                      std::string(fields[1]) + "'",
                  row);
    }
    if (d != 0.0 && d != 1.0) {
      throw Error(ErrorCode::InvalidIndicator,
                  "row " + std::to_string(row) + ": delta must be 0 or 1, got '" +
                      std::string(fields[1]) + "'",
                  row);
    }
    o.delta = static_cast<int>(d);
    if (!(o.z > 0.0) || !std::isfinite(o.z)) {
      throw Error(ErrorCode::NonPositiveObservation,
                  "row " + std::to_string(row) + ": value must be finite and > 0, got '" +
                      std::string(fields[0]) + "'",
                  row);
    }
    obs.push_back(o);
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure");
  return CensoredSample(std::move(obs));
}

CensoredSample read_csv(const std::filesystem::path& path, CsvFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_csv(in, format);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_csv(const Table& table, std::ostream& out) {
  auto write_row = [&](const auto& cells, auto&& emit) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      emit(cells[i]);
    }
    out << '\n';
  };
  write_row(table.columns, [&](const std::string& c) { out << c; });
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error(ErrorCode::DomainError, "table row width does not match header");
    }
    write_row(row, [&](const Cell& cell) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) out << "NA";
            else if constexpr (std::is_same_v<T, std::int64_t>) out << v;
            else if constexpr (std::is_same_v<T, double>) out << format_double(v);
            else out << v;
          },
          cell);
    });
  }
  if (!out) throw Error(ErrorCode::IoError, "write failure");
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "write failure on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto '" + path.string() + "'");
  }
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_csv(table, buffer);
  write_text_atomic(path, buffer.str());
}

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "missing header");
  for (auto f : split(trim(line))) t.columns.emplace_back(f);

  std::size_t row = 0;
  while (std::getline(in, line)) {
    auto view = trim(line);
    if (view.empty()) continue;
    ++row;
    auto fields = split(view);
    if (fields.size() != t.columns.size()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ": width mismatch", row);
    }
    std::vector<Cell> cells;
    cells.reserve(fields.size());
    for (auto f : fields) {
      std::int64_t i = 0;
      double d = 0.0;
      if (f == "NA") cells.emplace_back(std::monostate{});
      else if (parse_int(f, i)) cells.emplace_back(i);
      else if (parse_double(f, d)) cells.emplace_back(d);
      else cells.emplace_back(std::string(f));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace censtail
