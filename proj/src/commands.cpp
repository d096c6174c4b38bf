#include "degeis/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "degeis/constant_terms.hpp"
#include "degeis/parallel.hpp"
#include "degeis/que_measure.hpp"
#include "degeis/rng.hpp"

#ifndef DEGEIS_VERSION
#define DEGEIS_VERSION "0.0.0"
#endif

namespace degeis {

std::string code_version() { return DEGEIS_VERSION; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify-identities", "compare-evaluators", "constant-terms",
                                                 "mean-identity", "que-scan"};
  return names;
}

namespace {

class Csv {
 public:
  Csv(std::ostream& os, const RunConfig& cfg, const std::vector<std::string>& columns) : os_(os) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    os_ << "# degeis version=" << code_version() << " config_hash=" << hash << " seed=" << cfg.seed
        << " command=" << cfg.command << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
  }

  Csv& operator<<(double v) {
    sep();
    os_ << format_double(v);
    return *this;
  }
  Csv& operator<<(int v) {
    sep();
    os_ << v;
    return *this;
  }
  Csv& operator<<(std::int64_t v) {
    sep();
    os_ << v;
    return *this;
  }
  Csv& operator<<(std::uint64_t v) {
    sep();
    os_ << v;
    return *this;
  }
  Csv& operator<<(const std::string& v) {
    sep();
    os_ << v;
    return *this;
  }
  Csv& operator<<(const char* v) { return *this << std::string(v); }
  void end() {
    os_ << "\n";
    first_ = true;
    os_.flush();
  }

 private:
  void sep() {
    if (!first_) os_ << ",";
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

int threads_of(const RunConfig& cfg) { return cfg.threads > 0 ? cfg.threads : default_threads(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string complex_label(const char* name, cplx v) {
  return std::string(name) + "=" + format_double(v.real()) + (v.imag() < 0 ? "" : "+") + format_double(v.imag()) + "i";
}

IwasawaPoint point_from(const RunConfig& cfg, int n, const std::vector<double>& dx, const std::vector<double>& dy) {
  const auto& x = cfg.z_x.empty() ? dx : cfg.z_x;
  const auto& y = cfg.z_y.empty() ? dy : cfg.z_y;
  try {
    return IwasawaPoint(n, x, y);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("config: invalid point: ") + e.what());
  }
}

std::string point_label(const IwasawaPoint& z) {
  std::string s = "x=";
  for (std::size_t i = 0; i < z.x.size(); ++i) s += (i ? ";" : "") + format_double(z.x[i]);
  s += " y=";
  for (std::size_t i = 0; i < z.y.size(); ++i) s += (i ? ";" : "") + format_double(z.y[i]);
  return s;
}

CoordinateBox box_from(int n, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() % 2 || y.size() % 2) throw ConfigError("config: box intervals need lo, hi pairs");
  std::vector<Interval> xi, yi;
  for (std::size_t i = 0; i < x.size(); i += 2) xi.push_back({x[i], x[i + 1]});
  for (std::size_t i = 0; i < y.size(); i += 2) yi.push_back({y[i], y[i + 1]});
  try {
    return CoordinateBox::make(n, xi, yi);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("config: invalid box: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

int cmd_verify_identities(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.stade_count < 0 || cfg.ramanujan_count < 0) throw ConfigError("config: suite sizes must be non-negative");
  if (cfg.ramanujan_terms < 1 || cfg.ramanujan_terms > 10000000)
    throw ConfigError("config: ramanujan_terms must lie in [1, 1e7]");
  const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-7;
  Csv csv(out, cfg, {"identity", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err", "tolerance", "status"});
  int failures = 0;

  struct StadeCase {
    cplx mu, nu, s;
  };
  std::vector<StadeCase> stade;
  const std::vector<StadeCase> fixed = {{0.0, 0.0, 2.0}, {cplx(0, 0.3), cplx(0, -0.3), 1.5}};
  for (int i = 0; i < cfg.stade_count; ++i) {
    if (i < static_cast<int>(fixed.size())) {
      stade.push_back(fixed[static_cast<std::size_t>(i)]);
      continue;
    }
    CounterRng r(cfg.seed, 1000 + static_cast<std::uint64_t>(i));
    const cplx mu(r.uniform(-0.4, 0.4), r.uniform(-3.0, 3.0));
    const cplx nu(r.uniform(-0.4, 0.4), r.uniform(-3.0, 3.0));
    const cplx s(std::abs(mu.real()) + std::abs(nu.real()) + r.uniform(0.5, 2.5), r.uniform(-3.0, 3.0));
    stade.push_back({mu, nu, s});
  }
  for (std::size_t i = 0; i < cfg.stade_extra.size(); i += 6) {
    const auto& e = cfg.stade_extra;
    stade.push_back({cplx(e[i], e[i + 1]), cplx(e[i + 2], e[i + 3]), cplx(e[i + 4], e[i + 5])});
  }
  for (const auto& c : stade) {
    const std::string params = complex_label("mu", c.mu) + ";" + complex_label("nu", c.nu) + ";" + complex_label("s", c.s);
    if (!(c.s.real() > std::abs(c.mu.real()) + std::abs(c.nu.real()))) {
      csv << "stade" << params << "" << "" << "" << "" << "" << tol << "skipped-precondition";
      csv.end();
      continue;
    }
    const auto r = stade_check(c.mu, c.nu, c.s);
    const double rel = std::abs(r.lhs.value - r.rhs.value) / std::abs(r.rhs.value);
    const bool pass = rel < tol;
    failures += !pass;
    csv << "stade" << params << r.lhs.value.real() << r.lhs.value.imag() << r.rhs.value.real() << r.rhs.value.imag()
        << rel << tol << (pass ? "pass" : "fail");
    csv.end();
  }

  struct RamCase {
    cplx a, b, s;
  };
  std::vector<RamCase> ram;
  const std::vector<RamCase> rfixed = {{0.0, 0.0, 4.0}, {-1.0, cplx(-1.0, 0.5), 3.0}};
  for (int i = 0; i < cfg.ramanujan_count; ++i) {
    if (i < static_cast<int>(rfixed.size())) {
      ram.push_back(rfixed[static_cast<std::size_t>(i)]);
      continue;
    }
    CounterRng r(cfg.seed, 2000 + static_cast<std::uint64_t>(i));
    const cplx a(r.uniform(-1.5, 0.3), r.uniform(-2.0, 2.0));
    const cplx b(r.uniform(-1.5, 0.3), r.uniform(-2.0, 2.0));
    const double floor = 1.0 + std::max(a.real(), 0.0) + std::max(b.real(), 0.0) + 0.5;
    ram.push_back({a, b, cplx(floor + r.uniform(0.5, 2.5), r.uniform(-3.0, 3.0))});
  }
  for (const auto& c : ram) {
    const std::string params = complex_label("a", c.a) + ";" + complex_label("b", c.b) + ";" + complex_label("s", c.s) +
                               ";N=" + std::to_string(cfg.ramanujan_terms);
    const auto r = ramanujan_check(c.a, c.b, c.s, cfg.ramanujan_terms);
    const double diff = std::abs(r.lhs_partial - r.rhs);
    const double rel = diff / std::abs(r.rhs);
    const bool pass = diff < r.tail_bound;
    failures += !pass;
    csv << "ramanujan" << params << r.lhs_partial.real() << r.lhs_partial.imag() << r.rhs.real() << r.rhs.imag() << rel
        << r.tail_bound / std::abs(r.rhs) << (pass ? "pass" : "fail");
    csv.end();
  }
  log << "verify-identities: " << stade.size() << " Mellin-Bessel rows, " << ram.size() << " divisor-series rows, "
      << failures << " failures\n";
  return failures ? kExitTolerance : kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_compare_evaluators(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const int n = cfg.n ? cfg.n : 2;
  if (n != 2 && n != 3) throw ConfigError("compare-evaluators: n must be 2 or 3");
  const IwasawaPoint z = n == 2 ? point_from(cfg, 2, {0.3}, {1.7}) : point_from(cfg, 3, {1, 1, 1}, {1, 1});
  const cplx s = cfg.s.empty() ? cplx(n == 2 ? 1.3 : 1.2, 0.0) : cplx(cfg.s[0], cfg.s[1]);
  if (!(n * s.real() > n + 0.2))
    throw ConfigError("compare-evaluators: the lattice sum converges only for Re(ns) > n + 0.2; "
                      "unitary-line parameters can be evaluated by the Fourier expansion alone");
  const int R = cfg.lattice_cutoff > 0 ? cfg.lattice_cutoff : (n == 2 ? 160 : 60);
  const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : (n == 2 ? 1e-6 : 1e-5);
  Csv csv(out, cfg,
          {"n", "z", "s_re", "s_im", "epstein_re", "epstein_im", "epstein_err", "fourier_re", "fourier_im", "fourier_err",
           "rel_err", "tolerance", "seconds", "status"});
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = epstein_direct(z, s, R);
  const SpectralParameter sp{n, s};
  TruncationPolicy pol = TruncationPolicy::for_parameter(sp);
  pol.threads = threads_of(cfg);
  const auto f = eisenstein_fourier_eval(z, sp, pol);
  const double secs = seconds_since(t0);
  const double rel = std::abs(e.value - f.value) / std::abs(f.value);
  const bool pass = rel < tol;
  csv << n << point_label(z) << s.real() << s.imag() << e.value.real() << e.value.imag() << e.abs_error
      << f.value.real() << f.value.imag() << f.abs_error << rel << tol << secs << (pass ? "pass" : "fail");
  csv.end();
  log << "compare-evaluators: n=" << n << " rel_err=" << format_double(rel) << "\n";
  return pass ? kExitPass : kExitTolerance;
}

// ---------------------------------------------------------------------------

int cmd_constant_terms(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const int n = cfg.n ? cfg.n : 3;
  if (n < 3) throw ConfigError("constant-terms: n must be at least 3");
  if (cfg.grid < 16) throw ConfigError("constant-terms: grid must be at least 16");
  std::vector<double> dx(static_cast<std::size_t>(n * (n - 1) / 2), 0.0), dy(static_cast<std::size_t>(n - 1), 1.0);
  if (n == 3) {
    dx = {0.21, -0.17, 0.33};
    dy = {1.15, 0.93};
  }
  const IwasawaPoint z = point_from(cfg, n, dx, dy);
  std::vector<cplx> svals;
  if (cfg.s.empty())
    svals = {cplx(1.3, 0.0), cplx(0.5, 5.0)};
  else
    svals = {cplx(cfg.s[0], cfg.s[1])};
  Csv csv(out, cfg,
          {"quantity", "s_re", "s_im", "formula_re", "formula_im", "quadrature_re", "quadrature_im", "rel_deviation",
           "grid", "tolerance", "status"});
  int failures = 0;
  for (const cplx s : svals) {
    const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : (std::abs(s.real() - 0.5) < 1e-12 ? 1e-3 : 1e-4);
    ConstantTermsVerification v;
    try {
      v = verify_constant_terms(z, s, cfg.grid, threads_of(cfg));
    } catch (const PoleError& e) {
      throw ConfigError(std::string("constant-terms: ") + e.what());
    }
    auto row = [&](const char* name, const ConstantTermReport& r, bool gating) {
      const bool pass = r.rel_deviation < tol;
      if (gating) failures += !pass;
      csv << name << s.real() << s.imag() << r.formula_value.real() << r.formula_value.imag()
          << r.quadrature_value.real() << r.quadrature_value.imag() << r.rel_deviation << r.grid_size << tol
          << (gating ? (pass ? "pass" : "fail") : (pass ? "reference-agrees" : "reference-differs"));
      csv.end();
    };
    row("constant_term", v.constant_term, true);
    row("constant_square", v.constant_square, true);
    row("constant_square_as_displayed", v.constant_square_as_displayed, false);
    log << "constant-terms: s=" << format_double(s.real()) << "+" << format_double(s.imag())
        << "i  deviations " << format_double(v.constant_term.rel_deviation) << ", "
        << format_double(v.constant_square.rel_deviation) << " (as displayed "
        << format_double(v.constant_square_as_displayed.rel_deviation) << ")\n";
  }
  return failures ? kExitTolerance : kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_mean_identity(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const int n = cfg.n ? cfg.n : 2;
  if (n != 2) throw ConfigError("mean-identity: only n = 2 has an exact fundamental domain here");
  const std::int64_t samples = cfg.samples > 0 ? cfg.samples : 1000000;
  if (!cfg.eta.empty() && cfg.eta.size() != 3) throw ConfigError("config: eta must be 'lo, hi, power'");
  const double lo = cfg.eta.empty() ? 1.1 : cfg.eta[0];
  const double hi = cfg.eta.empty() ? 2.0 : cfg.eta[1];
  const int power = cfg.eta.empty() ? 4 : static_cast<int>(cfg.eta[2]);
  if (!(lo > 0.0 && hi > lo) || power < 1) throw ConfigError("config: eta needs 0 < lo < hi and power >= 1");
  const int threads = threads_of(cfg);

  Csv csv(out, cfg, {"check", "candidate", "mc_value", "std_error", "candidate_value", "z_score", "status"});
  const auto mass = fundamental_domain_mass(samples, cfg.seed, threads);
  const double zm = (mass.value - 1.0) / mass.std_error;
  const bool mass_ok = std::abs(zm) <= 3.0;
  csv << "total_mass" << "one" << mass.value << mass.std_error << 1.0 << zm << (mass_ok ? "pass" : "fail");
  csv.end();

  const auto eta = polynomial_bump(lo, hi, power, 1.0);
  const auto r = mean_identity_check(eta, n, samples, splitmix64(cfg.seed), threads);
  const double zp = (r.mc_value - r.mellin_value) / r.std_error;
  const double za = (r.mc_value - r.alt_value) / r.std_error;
  csv << "mean_identity" << "mellin_only" << r.mc_value << r.std_error << r.mellin_value << zp
      << (r.matches_mellin ? "within-3sigma" : "excluded");
  csv.end();
  csv << "mean_identity" << "with_measure_constant" << r.mc_value << r.std_error << r.alt_value << za
      << (r.matches_alt ? "within-3sigma" : "excluded");
  csv.end();
  const bool precise = r.std_error < 0.01 * std::abs(r.mc_value);
  const bool decided = precise && (r.matches_mellin != r.matches_alt);
  const std::string winner = !decided ? "undecided" : (r.matches_alt ? "with_measure_constant" : "mellin_only");
  csv << "resolution" << winner << r.mc_value << r.std_error << (r.matches_alt ? r.alt_value : r.mellin_value)
      << (r.matches_alt ? za : zp) << (decided ? "pass" : "fail");
  csv.end();
  log << "mean-identity: mass " << format_double(mass.value) << " +- " << format_double(mass.std_error)
      << ", resolution " << winner << "\n";
  return (mass_ok && decided) ? kExitPass : kExitTolerance;
}

// ---------------------------------------------------------------------------

int cmd_que_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const int n = cfg.n ? cfg.n : 2;
  if (n != 2 && n != 3) throw ConfigError("que-scan: n must be 2 or 3");
  std::vector<double> tg = cfg.t_grid;
  if (tg.empty()) tg = n == 2 ? std::vector<double>{20, 40, 60, 80, 100, 120} : std::vector<double>{30};
  CoordinateBox A, B;
  bool have_b = false;
  if (n == 2) {
    A = box_from(2, cfg.box_a_x.empty() ? std::vector<double>{-0.25, 0.25} : cfg.box_a_x,
                 cfg.box_a_y.empty() ? std::vector<double>{2.0, 3.0} : cfg.box_a_y);
    if (!cfg.box_b_y.empty()) {
      B = box_from(2, cfg.box_b_x, cfg.box_b_y);
      have_b = true;
    }
  } else {
    const std::vector<double> x3 = {-0.1, 0.1, -0.1, 0.1, -0.1, 0.1};
    A = box_from(3, cfg.box_a_x.empty() ? x3 : cfg.box_a_x,
                 cfg.box_a_y.empty() ? std::vector<double>{1.1, 1.5, 1.1, 1.5} : cfg.box_a_y);
    B = box_from(3, cfg.box_b_x.empty() ? x3 : cfg.box_b_x,
                 cfg.box_b_y.empty() ? std::vector<double>{1.6, 2.2, 1.1, 1.5} : cfg.box_b_y);
    have_b = true;
  }
  const std::int64_t samples = cfg.samples > 0 ? cfg.samples : (n == 2 ? 100000 : 20000);
  const double slope_tol = cfg.tolerance > 0.0 ? cfg.tolerance : (n == 2 ? 0.15 : 0.25);
  const double ratio_tol = cfg.ratio_tolerance > 0.0 ? cfg.ratio_tolerance : (n == 2 ? 0.15 : 0.25);
  const int threads = threads_of(cfg);

  // All preconditions are checked before any estimate is computed.
  try {
    for (double t : tg) {
      check_que_preconditions(n, t, A, 10000, cfg.seed);
      if (have_b) check_que_preconditions(n, t, B, 10000, cfg.seed);
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("que-scan: ") + e.what());
  }

  Csv csv(out, cfg,
          {"row_type", "t", "box_id", "value", "std_error", "samples", "seed", "target", "rel_deviation", "status"});
  const double two_over_xi = 2.0 / completed_zeta(static_cast<double>(n)).value.real();
  const double vol_a = volume_box(A);
  std::vector<MeasureEstimate> est_a;
  int failures = 0;
  for (std::size_t i = 0; i < tg.size(); ++i) {
    const std::uint64_t cell_seed = splitmix64(cfg.seed + i);
    MuOptions oa;
    oa.threads = threads;
    oa.box_id = "A";
    const auto ea = mu_estimate(n, tg[i], A, samples, cell_seed, oa);
    est_a.push_back(ea);
    csv << "mu" << ea.t << ea.box_id << ea.value << ea.std_error << ea.samples << ea.seed << "" << "" << "";
    csv.end();
    log << "que-scan: t=" << format_double(tg[i]) << " mu(A)=" << format_double(ea.value) << "\n";
    if (have_b) {
      MuOptions ob = oa;
      ob.box_id = "B";
      const auto eb = mu_estimate(n, tg[i], B, samples, cell_seed, ob);
      csv << "mu" << eb.t << eb.box_id << eb.value << eb.std_error << eb.samples << eb.seed << "" << "" << "";
      csv.end();
      const double ratio = ea.value / eb.value;
      const double sigma =
          ratio * std::hypot(ea.std_error / ea.value, eb.std_error / eb.value);
      const double target = vol_a / volume_box(B);
      const double dev = std::abs(ratio / target - 1.0);
      const bool pass = dev <= ratio_tol;
      failures += !pass;
      csv << "ratio" << tg[i] << "A/B" << ratio << sigma << samples << cell_seed << target << dev
          << (pass ? "pass" : "fail");
      csv.end();
    }
  }
  std::set<double> distinct(tg.begin(), tg.end());
  if (distinct.size() >= 4) {
    const auto fit = slope_fit(est_a);
    const double target = two_over_xi * vol_a;
    const double dev = std::abs(fit.slope / target - 1.0);
    const bool pass = dev <= slope_tol;
    failures += !pass;
    csv << "slope" << "" << "A" << fit.slope << fit.slope_error << samples << cfg.seed << target << dev
        << (pass ? "pass" : "fail");
    csv.end();
    csv << "intercept" << "" << "A" << fit.intercept << "" << samples << cfg.seed << "" << "" << "info";
    csv.end();
    csv << "fit_chi2_per_dof" << "" << "A" << fit.residual << "" << samples << cfg.seed << "" << "" << "info";
    csv.end();
    log << "que-scan: slope " << format_double(fit.slope) << " target " << format_double(target) << "\n";
  }
  return failures ? kExitTolerance : kExitPass;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  if (cfg.command == "verify-identities") return cmd_verify_identities(cfg, csv, log);
  if (cfg.command == "compare-evaluators") return cmd_compare_evaluators(cfg, csv, log);
  if (cfg.command == "constant-terms") return cmd_constant_terms(cfg, csv, log);
  if (cfg.command == "mean-identity") return cmd_mean_identity(cfg, csv, log);
  if (cfg.command == "que-scan") return cmd_que_scan(cfg, csv, log);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

int run_command_safely(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  try {
    return run_command(cfg, csv, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DivergenceError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CertificationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PoleError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GeometryError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace degeis
