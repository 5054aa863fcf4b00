#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "latdisc/diophantine.hpp"
#include "latdisc/polygon.hpp"

namespace latdisc {

/// printf %.17g, which round-trips every double.
std::string format_double(double x);

/// Parses {"vertices": [[x, y], ...]}. Structural problems and polygon
/// invariant failures both throw, naming the offending vertex.
Polygond polygon_from_json(const nlohmann::json& j);
Polygond polygon_from_json_text(std::string_view text);
Polygond load_polygon(const std::string& path);

nlohmann::json polygon_to_json(const Polygond& p);

nlohmann::json certificate_to_json(const DipCertificate& c);
DipCertificate certificate_from_json(const nlohmann::json& j);

/// Dilation grids:
///   a,b,c             explicit list
///   lin:A:B:N         N equally spaced values on [A, B]
///   log:A:B:N         N log-spaced values on [A, B]
///   ilog:A:B:N        log-spaced values rounded to integers, duplicates dropped
///   pow2:A:B          powers of two in [A, B]
///   golden:A:B        m + g for integers A <= m < B, g the golden-ratio fraction
///   mixed:A:B:N       ilog:A:B:N merged with m + g for the same integers m
/// Values are sorted ascending. An empty result is an input error.
std::vector<double> parse_grid(std::string_view spec);

inline constexpr double kGoldenFraction = 0.6180339887498949;

/// Writes rows with format_double for numbers; the header is written first.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(std::string_view s);
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace latdisc
