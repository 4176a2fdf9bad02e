// tdelta: exact and asymptotic Toeplitz determinants with a delta term.
//
//   tdelta det --symbol magnetization --lambda 0.5 --zn=-2/N --n-stop 30
//   tdelta compare --symbol correlation --nu 2 --zn=-1/N --rho 0.72 --n-start 6 --n-stop 20
//   tdelta xy --observable magnetization --alpha y --chain 13 17 21
//   tdelta condition --symbol magnetization --nu 1 --rho 0.55 --n-stop 20
//   tdelta compare --config configs/compare_zero_winding.toml --format json --out run.json

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pool.hpp"
#include "table.hpp"
#include "tdelta/tdelta.hpp"

namespace tdelta::cli {
namespace {

constexpr int kConfigError = 2;
constexpr int kNumericError = 3;
// Errors at rounding level carry no decay information.
constexpr double kFitFloor = 1e-13;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || !std::isfinite(v)) throw ConfigError("zn: cannot parse '" + whole + "'");
  return v;
}

/// Accepts a, bi, a+bi, a-bi (i or j).
cplx parse_complex(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  const std::string whole = s;
  if (s.empty()) throw ConfigError("zn: empty value");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, whole), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, parse_real(s, whole)};
  return {parse_real(s.substr(0, split), whole), parse_real(s.substr(split), whole)};
}

/// zn is either a literal complex number or "c/N", meaning c / (2n + 1).
struct ZnRule {
  cplx value{};
  bool per_length = false;

  static ZnRule parse(const std::string& text) {
    static const std::regex rule(R"(^\s*(.+?)\s*/\s*N\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, rule)) return {parse_complex(m[1].str()), true};
    return {parse_complex(text), false};
  }

  cplx at(int n) const { return per_length ? value / static_cast<double>(2 * n + 1) : value; }
  bool is_zero() const { return value == cplx{}; }
};

struct RunConfig {
  std::string command;
  std::string symbol = "magnetization";
  double lambda = 0.5;
  int nu = 0;
  double value = 1.0;
  double theta0 = 0.0;
  std::string zn = "0";
  int n_start = 1;
  int n_stop = 10;
  int n_step = 1;
  std::optional<double> rho;
  std::string format = "csv";
  std::string out;
  unsigned jobs = 1;

  std::string observable = "correlation";
  std::string alpha = "x";
  double q = 0.0;
  std::optional<int> q_index;
  std::vector<int> chain{21};

  std::vector<int> n_values() const {
    if (n_step < 1) throw ConfigError("n-step: must be >= 1");
    if (n_start < 1) throw ConfigError("n-start: must be >= 1");
    if (n_stop < n_start) throw ConfigError("n-stop: range is empty");
    std::vector<int> ns;
    for (int n = n_start; n <= n_stop; n += n_step) ns.push_back(n);
    return ns;
  }
};

AnnularSymbol build_symbol(const RunConfig& c) {
  if (c.symbol == "constant") {
    if (c.nu != 0) throw ConfigError("nu: the constant symbol has winding 0");
    if (c.value == 0.0) throw ConfigError("value: must be non-zero");
    return constant_symbol(c.value);
  }
  if (c.symbol != "magnetization" && c.symbol != "correlation")
    throw ConfigError("symbol: expected constant, magnetization or correlation");
  if (!(c.lambda > 0.0 && c.lambda < 1.0))
    throw ConfigError("lambda: must lie in (0, 1), got " + format_double(c.lambda));
  return c.symbol == "magnetization" ? magnetization_family(c.lambda, c.nu)
                                     : correlation_family(c.lambda, c.nu);
}

void check_theta0(double theta0) {
  if (!(theta0 >= 0.0 && theta0 < 2.0 * kPi)) throw ConfigError("theta0: must lie in [0, 2 pi)");
}

struct Context {
  AnnularSymbol symbol;
  LaurentSeries f;
  cplx fe{};
  ZnRule zn;
  std::vector<int> ns;
};

Context prepare(const RunConfig& c) {
  auto symbol = build_symbol(c);
  check_theta0(c.theta0);
  auto ns = c.n_values();
  const int margin = std::abs(c.nu) + 8;
  auto f = coefficients_of(symbol, std::max(ns.back() + margin, 64));
  const cplx fe = symbol(std::polar(1.0, c.theta0));
  return {std::move(symbol), std::move(f), fe, ZnRule::parse(c.zn), std::move(ns)};
}

DetValue exact_det(const Context& ctx, double theta0, int n) {
  if (ctx.zn.is_zero()) return toeplitz_det(ctx.f, n);
  return det_exact(build_matrix({n, ctx.f, DeltaTerm{theta0, ctx.zn.at(n), ctx.fe}}));
}

Table cmd_det(const RunConfig& c, std::exception_ptr& failure) {
  const auto ctx = prepare(c);
  Table t{"det", {"n", "exact_value_re", "exact_value_im", "log_modulus"}, {}, {}, {}};
  auto results = ordered_map<DetValue>(ctx.ns.size(), c.jobs,
                                       [&](std::size_t i) { return exact_det(ctx, c.theta0, ctx.ns[i]); });
  std::size_t i = 0;
  collect<DetValue>(t, std::move(results), [&](const DetValue& d) {
    return Row{static_cast<long long>(ctx.ns[i++]), d.value.real(), d.value.imag(), d.log_modulus};
  }, failure);
  return t;
}

struct CompareRow {
  DetValue exact;
  AsymptoticResult asym;
  double rel_error = 0.0;
  std::optional<double> condition;
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& w : v) s += (s.empty() ? "" : "; ") + w;
  return s;
}

Table cmd_compare(const RunConfig& c, std::exception_ptr& failure) {
  const auto ctx = prepare(c);
  const int m = std::abs(c.nu);
  const auto wh = factorize(sample_coefficients(ctx.symbol.zero_winding_part(), ctx.f.K()), ctx.ns.back() + m + 8);
  AsymptoticOptions opts;
  opts.rho = c.rho;
  resolve_rho(wh, opts);
  Table t{"compare",
          {"n", "exact_re", "exact_im", "asymptotic_re", "asymptotic_im", "rel_error", "predicted_order",
           "condition_ratio", "warnings"},
          {}, {}, {}};
  auto results = ordered_map<CompareRow>(ctx.ns.size(), c.jobs, [&](std::size_t i) {
    const int n = ctx.ns[i];
    CompareRow r;
    r.exact = exact_det(ctx, c.theta0, n);
    const cplx zn = ctx.zn.at(n);
    r.asym = c.nu == 0 ? theorem1(wh, c.theta0, zn, n, opts) : theorem2(wh, c.nu, c.theta0, zn, n, opts);
    const double scale = std::abs(r.exact.value);
    r.rel_error = std::abs(r.asym.value - r.exact.value) / (scale > 0.0 ? scale : 1.0);
    if (auto it = r.asym.diagnostics.find("condition_ratio"); it != r.asym.diagnostics.end())
      r.condition = it->second;
    return r;
  });
  std::size_t i = 0;
  std::vector<double> fit_n, fit_err;
  collect<CompareRow>(t, std::move(results), [&](const CompareRow& r) {
    const int n = ctx.ns[i++];
    if (r.rel_error > kFitFloor && std::isfinite(r.rel_error)) {
      fit_n.push_back(n);
      fit_err.push_back(std::log(r.rel_error));
    }
    return Row{static_cast<long long>(n),
               r.exact.value.real(),
               r.exact.value.imag(),
               r.asym.value.real(),
               r.asym.value.imag(),
               r.rel_error,
               std::pow(r.asym.error_order, n),
               r.condition ? Cell{*r.condition} : Cell{},
               join(r.asym.warnings)};
  }, failure);
  Row summary(t.columns.size());
  summary[0] = std::string("fit");
  if (fit_n.size() >= 2) {
    Eigen::MatrixXd A(static_cast<Eigen::Index>(fit_n.size()), 2);
    Eigen::VectorXd y(A.rows());
    for (Eigen::Index k = 0; k < A.rows(); ++k) {
      A(k, 0) = 1.0;
      A(k, 1) = fit_n[static_cast<std::size_t>(k)];
      y(k) = fit_err[static_cast<std::size_t>(k)];
    }
    const Eigen::Vector2d beta = A.colPivHouseholderQr().solve(y);
    summary[5] = std::exp(beta(1));
    summary[8] = std::string("rel_error column holds the fitted geometric rate");
  } else {
    summary[8] = std::string("fewer than two errors above 1e-13; no fit");
  }
  t.summary = summary;
  return t;
}

Table cmd_condition(const RunConfig& c, std::exception_ptr& failure) {
  if (c.nu == 0) throw ConfigError("nu: condition ratio needs a non-zero winding");
  const auto ctx = prepare(c);
  const int m = std::abs(c.nu);
  const auto wh = factorize(sample_coefficients(ctx.symbol.zero_winding_part(), ctx.f.K()), ctx.ns.back() + m + 8);
  AsymptoticOptions opts;
  opts.rho = c.rho;
  const double rho = resolve_rho(wh, opts);
  Table t{"condition", {"n", "nu", "rho", "condition_ratio", "delta_abs"}, {}, {}, {}};
  struct Out {
    double ratio;
    double delta_abs;
  };
  auto results = ordered_map<Out>(ctx.ns.size(), c.jobs, [&](std::size_t i) {
    const int n = ctx.ns[i];
    return Out{condition_ratio(wh, c.nu, n, c.theta0, rho), std::abs(band_determinants(wh, c.nu, n, c.theta0).delta)};
  });
  std::size_t i = 0;
  collect<Out>(t, std::move(results), [&](const Out& o) {
    return Row{static_cast<long long>(ctx.ns[i++]), static_cast<long long>(c.nu), rho, o.ratio, o.delta_abs};
  }, failure);
  return t;
}

Table cmd_xy(const RunConfig& c, std::exception_ptr& failure) {
  if (!(c.lambda > 0.0 && c.lambda < 1.0))
    throw ConfigError("lambda: must lie in (0, 1), got " + format_double(c.lambda));
  xy::Axis axis;
  try {
    axis = xy::parse_axis(c.alpha);
  } catch (const std::invalid_argument&) {
    throw ConfigError("alpha: expected x or y, got '" + c.alpha + "'");
  }
  const bool magnetization = c.observable == "magnetization";
  if (!magnetization && c.observable != "correlation")
    throw ConfigError("observable: expected correlation or magnetization");
  if (c.chain.empty()) throw ConfigError("chain: at least one chain length is required");

  struct Job {
    xy::ChainParams p;
    int n;
  };
  std::vector<Job> jobs;
  for (int N : c.chain) {
    if (N < 3 || N % 2 == 0) throw ConfigError("chain: N must be odd and >= 3, got " + std::to_string(N));
    xy::ChainParams p{c.lambda, N, c.q, axis};
    if (c.q_index) p.q = wrap_angle(2.0 * kPi * *c.q_index / N);
    if (magnetization) {
      p.q = 0.0;
      jobs.push_back({p, p.half()});
      continue;
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("q: ") + e.what());
    }
    for (int n : c.n_values()) {
      if (2 * n >= N)
        throw ConfigError("n-stop: n = " + std::to_string(n) + " must be below N/2 for N = " + std::to_string(N));
      jobs.push_back({p, n});
    }
  }

  Table t{"xy", {"N", "n", "q", "alpha", "exact", "asymptotic", "rel_error"}, {}, {}, {}};
  struct Out {
    double exact;
    std::optional<double> asym;
  };
  auto results = ordered_map<Out>(jobs.size(), c.jobs, [&](std::size_t i) {
    const auto& j = jobs[i];
    if (magnetization) return Out{xy::magnetization_exact(j.p), xy::magnetization_asymptotic(j.p)};
    Out o{xy::correlation_exact(j.p, j.n), std::nullopt};
    if (j.n >= 2) o.asym = xy::correlation_asymptotic(j.p, j.n);
    return o;
  });
  std::size_t i = 0;
  collect<Out>(t, std::move(results), [&](const Out& o) {
    const auto& j = jobs[i++];
    Row r{static_cast<long long>(j.p.N), static_cast<long long>(j.n), j.p.q, std::string(xy::to_string(j.p.alpha)),
          o.exact, Cell{}, Cell{}};
    if (o.asym) {
      r[5] = *o.asym;
      r[6] = std::abs(o.exact - *o.asym) / std::abs(*o.asym);
    }
    return r;
  }, failure);
  return t;
}

void add_shared(CLI::App& app, RunConfig& c) {
  app.add_option("--symbol", c.symbol, "constant | magnetization | correlation")
      ->check(CLI::IsMember({"constant", "magnetization", "correlation"}));
  app.add_option("--lambda", c.lambda, "family parameter in (0, 1)");
  app.add_option("--nu", c.nu, "winding number");
  app.add_option("--value", c.value, "value of the constant symbol");
  app.add_option("--theta0", c.theta0, "delta location in [0, 2 pi)");
  app.add_option("--zn", c.zn, "delta weight: complex literal (0.1, -0.3+0.2i) or c/N with N = 2n + 1");
  app.add_option("--n-start", c.n_start, "first n");
  app.add_option("--n-stop", c.n_stop, "last n (inclusive)");
  app.add_option("--n-step", c.n_step, "n increment");
  app.add_option("--rho", c.rho, "decay rate override for error models and condition checks");
  app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

int emit(const RunConfig& c, const Table& t) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) {
      std::cerr << "tdelta: out: cannot open '" << c.out << "'\n";
      return kConfigError;
    }
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == "json")
    write_json(os, t);
  else
    write_csv(os, t);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Toeplitz determinants with a delta-function term"};
  app.set_config("--config", "", "TOML-style key = value file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  RunConfig c;
  add_shared(app, c);
  auto* det = app.add_subcommand("det", "exact determinants over the n-range");
  auto* compare = app.add_subcommand("compare", "exact versus asymptotic, with a fitted error rate");
  auto* condition = app.add_subcommand("condition", "band-determinant condition ratio for nu != 0");
  auto* xy = app.add_subcommand("xy", "frustrated XY chain observables");
  xy->add_option("--observable", c.observable, "correlation | magnetization")
      ->check(CLI::IsMember({"correlation", "magnetization"}));
  xy->add_option("--alpha", c.alpha, "spin axis x | y");
  auto* q = xy->add_option("--q", c.q, "momentum, a multiple of 2 pi / N");
  xy->add_option("--q-index", c.q_index, "momentum index j, q = 2 pi j / N")->excludes(q);
  xy->add_option("--chain", c.chain, "odd chain lengths N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "tdelta: " << e.what() << '\n';
    return kConfigError;
  }

  Table t;
  std::exception_ptr failure;
  try {
    if (det->parsed()) t = cmd_det(c, failure);
    if (compare->parsed()) t = cmd_compare(c, failure);
    if (condition->parsed()) t = cmd_condition(c, failure);
    if (xy->parsed()) t = cmd_xy(c, failure);
  } catch (const ConfigError& e) {
    std::cerr << "tdelta: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tdelta: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "tdelta: numeric failure: " << e.what() << '\n';
    return kNumericError;
  }

  if (!failure) return emit(c, t);
  std::string what = "unknown error";
  int code = kNumericError;
  try {
    std::rethrow_exception(failure);
  } catch (const std::invalid_argument& e) {
    what = e.what();
    code = kConfigError;
  } catch (const std::exception& e) {
    what = e.what();
  }
  t.summary.reset();
  t.error = what;
  if (const int rc = emit(c, t)) return rc;
  std::cerr << "tdelta: " << (code == kNumericError ? "numeric failure after " : "config error after ")
            << t.rows.size() << " rows: " << what << '\n';
  return code;
}

}  // namespace
}  // namespace tdelta::cli

int main(int argc, char** argv) { return tdelta::cli::run(argc, argv); }
