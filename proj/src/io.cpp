#include "latdisc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace latdisc {
namespace {

double parse_number(std::string_view s, std::string_view what) {
  const std::string str(s);
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(str, &used);
  } catch (const std::exception&) {
    throw InputError("grid: bad " + std::string(what) + " '" + str + "'");
  }
  if (used != str.size() || !std::isfinite(x)) throw InputError("grid: bad " + std::string(what) + " '" + str + "'");
  return x;
}

int parse_count(std::string_view s) {
  const double x = parse_number(s, "count");
  if (x < 1 || x != std::floor(x) || x > 1e7) throw InputError("grid: count must be a positive integer");
  return static_cast<int>(x);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<double> log_spaced(double a, double b, int n) {
  if (!(a > 0) || !(b >= a)) throw InputError("grid: log spacing needs 0 < A <= B");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v.push_back(i == n - 1 ? b : a * std::pow(b / a, f));
  }
  return v;
}

std::vector<double> rounded_unique(const std::vector<double>& v) {
  std::vector<double> out;
  for (const double x : v) out.push_back(std::nearbyint(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Polygond polygon_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw PolygonError("polygon JSON needs a \"vertices\" array");
  const auto& vs = j.at("vertices");
  if (!vs.is_array()) throw PolygonError("\"vertices\" must be an array");
  std::vector<Point<double>> pts;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& v = vs[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw PolygonError("vertex must be a pair of numbers [x, y]", i);
    }
    pts.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return Polygond::from_points(pts);
}

Polygond polygon_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("polygon JSON does not parse: ") + e.what());
  }
  return polygon_from_json(j);
}

Polygond load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open polygon file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return polygon_from_json_text(buf.str());
}

nlohmann::json polygon_to_json(const Polygond& p) {
  nlohmann::json vs = nlohmann::json::array();
  for (Eigen::Index h = 0; h < p.size(); ++h) vs.push_back({p.vertex(h).x(), p.vertex(h).y()});
  return {{"vertices", vs}};
}

nlohmann::json certificate_to_json(const DipCertificate& c) {
  nlohmann::json checked = nlohmann::json::array();
  for (const auto& v : c.checked) checked.push_back({{"k", {v.k.x(), v.k.y()}}, {"side", v.side}, {"value", v.value}});
  nlohmann::json j = {{"u", c.u},
                      {"rho_u", c.rho_u},
                      {"bound", c.bound},
                      {"rho_cap", c.rho_cap},
                      {"truncated", c.truncated},
                      {"checked", checked}};
  j["k_cap"] = c.k_cap ? nlohmann::json(*c.k_cap) : nlohmann::json(nullptr);
  return j;
}

DipCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    DipCertificate c;
    c.u = j.at("u").get<int>();
    c.rho_u = j.at("rho_u").get<std::int64_t>();
    c.bound = j.at("bound").get<double>();
    c.rho_cap = j.at("rho_cap").get<std::int64_t>();
    c.truncated = j.at("truncated").get<bool>();
    if (!j.at("k_cap").is_null()) c.k_cap = j.at("k_cap").get<int>();
    for (const auto& v : j.at("checked")) {
      const auto& k = v.at("k");
      c.checked.push_back({Eigen::Vector2i(k.at(0).get<int>(), k.at(1).get<int>()), v.at("side").get<int>(),
                           v.at("value").get<double>()});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> v;
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    if (!spec.empty()) {
      for (const auto part : split(spec, ',')) {
        if (!part.empty()) v.push_back(parse_number(part, "value"));
      }
    }
  } else {
    const std::string_view kind = spec.substr(0, colon);
    const auto args = split(spec.substr(colon + 1), ':');
    const auto need = [&](std::size_t n) {
      if (args.size() != n) throw InputError("grid: '" + std::string(kind) + "' takes " + std::to_string(n) + " fields");
    };
    if (kind == "lin") {
      need(3);
      const double a = parse_number(args[0], "bound");
      const double b = parse_number(args[1], "bound");
      const int n = parse_count(args[2]);
      for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else if (kind == "log") {
      need(3);
      v = log_spaced(parse_number(args[0], "bound"), parse_number(args[1], "bound"), parse_count(args[2]));
    } else if (kind == "ilog") {
      need(3);
      v = rounded_unique(log_spaced(parse_number(args[0], "bound"), parse_number(args[1], "bound"), parse_count(args[2])));
    } else if (kind == "pow2") {
      need(2);
      const double a = parse_number(args[0], "bound");
      const double b = parse_number(args[1], "bound");
      for (double x = 1; x <= b; x *= 2) {
        if (x >= a) v.push_back(x);
      }
    } else if (kind == "golden") {
      need(2);
      const double a = std::ceil(parse_number(args[0], "bound"));
      const double b = parse_number(args[1], "bound");
      if (b - a > 1e7) throw InputError("grid: golden range too long");
      for (double m = a; m < b; m += 1) v.push_back(m + kGoldenFraction);
    } else if (kind == "mixed") {
      need(3);
      v = rounded_unique(log_spaced(parse_number(args[0], "bound"), parse_number(args[1], "bound"), parse_count(args[2])));
      const std::size_t integers = v.size();
      for (std::size_t i = 0; i < integers; ++i) v.push_back(v[i] + kGoldenFraction);
    } else {
      throw InputError("grid: unknown kind '" + std::string(kind) + "'");
    }
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) throw InputError("grid is empty");
  return v;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
  for (const auto& h : header) cell(std::string_view(h));
  end_row();
}

CsvWriter& CsvWriter::cell(double x) { return cell(std::string_view(format_double(x))); }

CsvWriter& CsvWriter::cell(long long x) { return cell(std::string_view(std::to_string(x))); }

CsvWriter& CsvWriter::cell(std::string_view s) {
  if (!first_) out_ << ',';
  out_ << s;
  first_ = false;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace latdisc
