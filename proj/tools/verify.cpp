#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "latdisc/diophantine.hpp"
#include "latdisc/discrepancy.hpp"
#include "latdisc/fourier.hpp"
#include "latdisc/generators.hpp"
#include "latdisc/io.hpp"
#include "oracle.hpp"

namespace latdisc::verify {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

class Checker {
 public:
  Checker(std::string suite, Report& report, std::ostream& out) : suite_(std::move(suite)), report_(report), out_(out) {}

  void check(bool ok, const std::string& invariant, const std::function<std::string()>& counterexample) {
    ++report_.checks;
    if (ok) return;
    Failure f{suite_, invariant, counterexample()};
    out_ << "FAIL " << f.suite << ": " << f.invariant << " | " << f.counterexample << '\n';
    report_.failures.push_back(std::move(f));
  }

 private:
  std::string suite_;
  Report& report_;
  std::ostream& out_;
};

std::string describe(const Polygond& p) { return polygon_to_json(p).dump(); }

std::string fmt(double x) { return format_double(x); }

void geometry(std::uint64_t seed, Checker& c) {
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t s = seed * 1000 + static_cast<std::uint64_t>(i);
    const bool family = i % 2 == 0;
    const int n = family ? 2 + i % 4 : 3 + i % 7;
    const Polygond p = family ? generate_family_p(n, 1.0, s) : generate_convex(n, s);
    const auto where = [&] { return std::string(family ? "generate_family_p" : "generate_convex") + " n=" + std::to_string(n) + " seed=" + std::to_string(s) + " " + describe(p); };

    c.check(std::abs(area(p) - oracle::fan_area(p)) <= 1e-12 * area(p), "area equals centroid-fan area", where);
    const Point<double> centroid = vertex_centroid(p);
    const auto frames = side_frames(p);
    for (std::size_t h = 0; h < frames.size(); ++h) {
      const auto hh = static_cast<Eigen::Index>(h);
      const Point<double> mid = 0.5 * (p.vertex(hh) + p.vertex(hh + 1));
      c.check(frames[h].nu.dot(centroid - mid) < 0, "side normal points away from the centroid",
              [&] { return where() + " side=" + std::to_string(h); });
    }
    c.check(satisfies_normalization(p), "generator output has min side and min |P_h + P_{h+1}| >= 1", where);
    const auto cls = regularity_class(p);
    if (family) {
      c.check(cls.tag == RegularityTag::kIrregularFamilyP, "family-P generator output classifies as IRREGULAR_FAMILY_P", where);
    } else if (n % 2 == 1) {
      c.check(cls.tag == RegularityTag::kRegularUnpairedSide, "odd convex polygon classifies as REGULAR_UNPAIRED_SIDE", where);
    }
    c.check((cls.tag == RegularityTag::kIrregularFamilyP) == in_family_p(p), "tag agrees with in_family_p", where);

    // Relabel the start vertex and rotate about the vertex centroid.
    typename Polygond::Vertices rolled(2, p.size());
    for (Eigen::Index h = 0; h < p.size(); ++h) rolled.col(h) = p.vertex(h + 1);
    const Polygond relabeled(rolled);
    const Polygond rotated = translated(transformed(translated(p, Point<double>(-centroid)), 1.0, 0.7, Point<double>(Point<double>::Zero())), centroid);
    const Polygond dilated = translated(transformed(translated(p, Point<double>(-centroid)), 3.5, 0.0, Point<double>(Point<double>::Zero())), centroid);
    c.check(in_family_p(relabeled) == in_family_p(p), "in_family_p invariant under relabeling", where);
    c.check(in_family_p(rotated) == in_family_p(p), "in_family_p invariant under rotation about the center", where);
    c.check(in_family_p(dilated) == in_family_p(p), "in_family_p invariant under dilation about the center", where);
  }
}

void transform(std::uint64_t seed, Checker& c) {
  UniformSource rng(seed);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t s = seed * 1000 + static_cast<std::uint64_t>(i);
    const Polygond p = generate_convex(6, s);
    const Point<double> xi = frequency(rng(0.1, 50.0), rng(0.0, kTwoPi));
    const auto where = [&] { return "generate_convex n=6 seed=" + std::to_string(s) + " xi=(" + fmt(xi.x()) + "," + fmt(xi.y()) + ")"; };
    const auto value = chi_hat(p, xi);
    c.check(std::abs(value - chi_hat_oracle(p, xi)) <= 1e-8, "chi_hat matches the quadrature oracle to 1e-8", where);
    c.check(std::abs(chi_hat(p, Point<double>(-xi)) - std::conj(value)) <= 1e-12, "chi_hat(-xi) = conj(chi_hat(xi))", where);
    c.check(std::abs(value) <= area(p) * (1 + 1e-12), "|chi_hat| <= area", where);
    const Point<double> v(rng(-5.0, 5.0), rng(-5.0, 5.0));
    const auto shifted = chi_hat(translated(p, v), xi);
    c.check(std::abs(shifted - std::polar(1.0, -kTwoPi * xi.dot(v)) * value) <= 1e-10, "translation covariance", where);
  }
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t s = seed * 1000 + static_cast<std::uint64_t>(i);
    const Polygond raw = generate_family_p(4, 1.0, s);
    const Polygond p = translated(raw, Point<double>(-*symmetry_center(raw)));
    const double rho = rng(0.5, 20.0);
    const double theta = rng(0.0, kTwoPi);
    const auto where = [&] { return "generate_family_p n=4 seed=" + std::to_string(s) + " rho=" + fmt(rho) + " theta=" + fmt(theta); };
    const auto general = chi_hat(p, frequency(rho, theta));
    c.check(std::abs(general.imag()) <= 1e-10, "centered family-P transform is real", where);
    c.check(std::abs(chi_hat_symmetric(p, rho, theta) - general.real()) <= 1e-8, "symmetric form matches chi_hat", where);
  }
}

void counting(std::uint64_t seed, Checker& c) {
  UniformSource rng(seed);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t s = seed * 1000 + static_cast<std::uint64_t>(i);
    const Polygond raw = i % 2 == 0 ? generate_convex(3 + i % 6, s) : generate_family_p(2 + i % 3, 1.0, s);
    // Unit diameter keeps the brute-force box at most 50 x 50.
    const Polygond p = transformed(raw, 1 / diameter(raw), 0.0, Point<double>(Point<double>::Zero()));
    const double r = rng(1.0, 50.0);
    const double sigma = rng(0.0, kTwoPi);
    const Point<double> t(rng(-0.5, 0.5), rng(-0.5, 0.5));
    c.check(count_lattice_points(p, r, sigma, t) == oracle::brute_force_count(p, r, sigma, t),
            "row-scan count equals brute-force enumeration", [&] {
              return describe(p) + " rho=" + fmt(r) + " sigma=" + fmt(sigma) + " t=(" + fmt(t.x()) + "," + fmt(t.y()) + ")";
            });
  }
}

void parseval(std::uint64_t seed, Checker& c) {
  const std::pair<const char*, double> cases[] = {{"square", 5.3}, {"triangle", 5.7}, {"hex-sym-noncyclic", 2.3}};
  for (const auto& [name, rho] : cases) {
    const Polygond p = preset(name);
    const auto where = [&] { return std::string("preset ") + name + " rho=" + fmt(rho) + " seed=" + std::to_string(seed); };
    const auto direct = l2_norm_direct(p, rho, {1000, 100, SamplingMode::kMonteCarlo, seed});
    const auto series = parseval_series(p, rho, 64, 64);
    const auto full = truncated_sum(series, 64);
    NormEstimate pars = l2_norm_parseval(p, rho, 64, 64);
    const double gap = std::abs(direct.value * direct.value - pars.value * pars.value);
    const double budget = *direct.std_error + *pars.tail_estimate + *pars.quadrature_error;
    c.check(gap <= budget, "direct and Parseval squared norms agree within stderr + tail + quadrature", [&] {
      return where() + " gap=" + fmt(gap) + " budget=" + fmt(budget);
    });
    double previous = 0;
    for (int k = 1; k <= 64; ++k) {
      const auto partial = truncated_sum(series, k);
      c.check(partial.value_squared >= previous, "Parseval partial sums are nondecreasing",
              [&] { return where() + " k=" + std::to_string(k); });
      c.check(partial.value_squared + partial.tail >= full.value_squared * (1 - 1e-12),
              "partial sum plus tail bounds the full sum",
              [&] { return where() + " k=" + std::to_string(k); });
      previous = partial.value_squared;
    }
  }
}

void diophantine(std::uint64_t seed, Checker& c) {
  UniformSource rng(seed);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const std::int64_t j = 2 + static_cast<std::int64_t>(rng() * 11);
    std::vector<double> r;
    for (int s = 0; s < n; ++s) r.push_back(rng());
    const auto got = dirichlet_simultaneous(r, j);
    const auto all = oracle::dirichlet_all(r, j);
    c.check(got.exact && !all.empty() && got.q == all.front(), "Dirichlet q is the smallest admissible q", [&] {
      std::ostringstream os;
      os << "j=" << j << " r=";
      for (const double x : r) os << fmt(x) << ' ';
      os << "q=" << got.q;
      return os.str();
    });
  }
  for (int i = 0; i < 60; ++i) {
    const double rho = rng(1.0, 500.0);
    const double eps = rng(0.05, 0.8);
    const double alpha = rng(0.05, 0.49);
    const auto got = ps_witness(rho, eps, alpha);
    const auto want = oracle::witness_min_norm2(rho, eps, alpha);
    const bool ok = got.has_value() == want.has_value() && (!got || got->squaredNorm() == *want);
    c.check(ok, "ps_witness matches exhaustive enumeration", [&] {
      return "rho=" + fmt(rho) + " epsilon=" + fmt(eps) + " alpha=" + fmt(alpha);
    });
  }
  const Polygond square = preset("square");
  const auto cert = construct_dip(square, 2, 4, 10000);
  const auto recheck = oracle::recheck_dip(square, 2, 4, cert.rho_u);
  c.check(recheck.pairs == cert.checked.size() && recheck.max_value < cert.bound,
          "dip certificate re-validates from scratch", [&] {
            return "preset square u=2 k_cap=4 rho_u=" + std::to_string(cert.rho_u) + " max=" + fmt(recheck.max_value);
          });
}

const std::vector<std::pair<std::string, void (*)(std::uint64_t, Checker&)>>& suites() {
  static const std::vector<std::pair<std::string, void (*)(std::uint64_t, Checker&)>> all = {
      {"geometry", geometry}, {"transform", transform}, {"counting", counting},
      {"parseval", parseval}, {"diophantine", diophantine}};
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.push_back(s.first);
  names.emplace_back("all");
  return names;
}

Report run_suite(const std::string& name, std::uint64_t seed, std::ostream& out) {
  Report report;
  bool matched = false;
  for (const auto& [suite, fn] : suites()) {
    if (name != "all" && name != suite) continue;
    matched = true;
    Checker checker(suite, report, out);
    fn(seed, checker);
  }
  if (!matched) throw InputError("unknown verify suite '" + name + "'");
  out << "verify " << name << ": " << report.checks << " checks, " << report.failures.size() << " failures\n";
  return report;
}

}  // namespace latdisc::verify
