#include "softcore/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "softcore/errors.hpp"
#include "softcore/harmonium.hpp"
#include "softcore/model.hpp"
#include "softcore/oracle.hpp"
#include "softcore/radial3d.hpp"
#include "softcore/rel1d.hpp"

namespace softcore::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<long long, double, std::string, std::vector<double>>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  return fmt::format("{:.15g}", v);
}

double rounded(double v) { return std::stod(format_number(v)); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
  Json config = Json::object();
  Json summary = Json::object();
};

std::string csv_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const auto& list = std::get<std::vector<double>>(c);
  std::string joined;
  for (std::size_t i = 0; i < list.size(); ++i) joined += (i ? ";" : "") + format_number(list[i]);
  return joined;
}

Json json_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return rounded(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  Json arr = Json::array();
  for (double v : std::get<std::vector<double>>(c)) arr.push_back(rounded(v));
  return arr;
}

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

std::string render_json(const std::string& command, const Table& t) {
  Json doc;
  doc["command"] = command;
  doc["config"] = t.config;
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  if (!t.summary.empty()) doc["summary"] = t.summary;
  doc["warnings"] = t.warnings;
  return doc.dump(2) + "\n";
}

struct Options {
  std::string format = "csv";
  std::string output;

  double V = 0.0;
  double a = 1.0;
  int l = 0;
  std::string parity;
  double chi_max = 12.0;
  double scan_step = radial3d::kDefaultScanStep;

  int level = 0;
  std::string convention = "solver";
  int principal = 0;
  int points = 600;
  double r_max = 0.0;

  std::vector<double> V_values;
  std::vector<double> a_values;
  int levels = 3;
  int jobs = 1;

  int k = 5;
  int grid_n = 0;

  int p = 1;
  double lambda_max = 0.0;
};

constexpr double kOracleRMax = 14.0;
constexpr int kOracleN = 5600;

const CLI::Validator kFinite = CLI::Validator(
    [](std::string& s) -> std::string {
      try {
        return std::isfinite(std::stod(s)) ? std::string{} : "value must be finite";
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
    },
    "FINITE");

long long as_cell(int v) { return v; }

bool given(const CLI::App* app, const std::string& name) { return app->count(name) > 0; }

SoftCorePotential potential(const Options& o) {
  require(std::isfinite(o.V), "--V must be finite");
  require(o.a > 0.0 && std::isfinite(o.a), "--a must be positive");
  return {o.V, o.a};
}

Parity parity_of(const std::string& s) {
  try {
    return parse_parity(s);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// Levels of a channel, extending chi_max until `count` are found when the
// caller did not fix it.
template <typename Find>
auto enough_levels(Find find, double chi_max, bool fixed, std::size_t count) {
  auto spec = find(chi_max);
  while (!fixed && spec.levels.size() < count && chi_max < 1e4) {
    chi_max *= 2.0;
    spec = find(chi_max);
  }
  return spec;
}

Table cmd_spectrum(const Options& o) {
  const auto pot = potential(o);
  require(o.l >= 0, "--l must be non-negative");
  require(o.scan_step > 0.0, "--scan-step must be positive");
  require(o.chi_max > std::min(0.0, o.V), "--chi-max must exceed min(0, V)");
  const auto spec = radial3d::find_spectrum(pot, {o.l}, o.chi_max, o.scan_step);
  Table t;
  t.config = {{"V", o.V}, {"a", o.a}, {"l", o.l}, {"chi_max", o.chi_max}, {"scan_step", o.scan_step}};
  t.columns = {"index", "chi", "radial_index"};
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    const auto& lv = spec.levels[i];
    t.rows.push_back({static_cast<long long>(i), lv.chi, as_cell(lv.radial_index)});
  }
  t.warnings = spec.warnings;
  return t;
}

std::vector<Parity> sectors(const std::string& parity) {
  if (parity.empty() || parity == "both") return {Parity::even, Parity::odd};
  return {parity_of(parity)};
}

Table cmd_spectrum1d(const Options& o) {
  const auto pot = potential(o);
  require(o.scan_step > 0.0, "--scan-step must be positive");
  require(o.chi_max > std::min(0.0, o.V), "--chi-max must exceed min(0, V)");
  std::vector<ParityLevel> levels;
  Table t;
  for (Parity p : sectors(o.parity)) {
    const auto spec = rel1d::find_spectrum_1d(pot, {p}, o.chi_max, o.scan_step);
    levels.insert(levels.end(), spec.levels.begin(), spec.levels.end());
    for (const auto& w : spec.warnings) t.warnings.push_back(to_string(p) + ": " + w);
  }
  std::stable_sort(levels.begin(), levels.end(), [](const ParityLevel& x, const ParityLevel& y) { return x.chi < y.chi; });
  t.config = {{"V", o.V}, {"a", o.a}, {"parity", o.parity.empty() ? "both" : o.parity}, {"chi_max", o.chi_max},
              {"scan_step", o.scan_step}};
  t.columns = {"index", "chi", "parity", "radial_index"};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i), levels[i].chi, to_string(levels[i].sector.parity),
                      as_cell(levels[i].radial_index)});
  }
  return t;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> r(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    r[static_cast<std::size_t>(i)] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
  }
  return r;
}

enum class Convention { solver, figure };

Convention convention_of(const std::string& s) {
  if (s == "solver" || s == "eq5") return Convention::solver;
  if (s == "figure" || s == "paper") return Convention::figure;
  throw UsageError("--convention must be solver (eq5) or figure (paper), got '" + s + "'");
}

Table cmd_wavefunction(const Options& o, const CLI::App* app) {
  const Convention conv = convention_of(o.convention);
  require(o.points >= 2, "--points must be at least 2");
  require(o.level >= 0, "--level must be non-negative");
  const double r_max = o.r_max > 0.0 ? o.r_max : 6.0;
  require(std::isfinite(r_max), "--r-max must be finite");
  Table t;
  t.columns = {"r", "u"};

  if (conv == Convention::figure) {
    for (const char* flag : {"--V", "--a", "--parity", "--level"}) {
      require(!given(app, flag), fmt::format("{} does not apply to the figure convention", flag));
    }
    require(o.l >= 0, "--l must be non-negative");
    const int n = given(app, "--n") ? o.principal : 2 * o.l + 3;
    const auto grid = uniform_grid(0.0, r_max, o.points);
    for (const auto& [r, u] : radial3d::figure_convention_curve(n, o.l, grid)) t.rows.push_back({r, u});
    t.config = {{"convention", "figure"}, {"n", n}, {"l", o.l}, {"r_max", r_max}, {"points", o.points}};
    return t;
  }

  require(!given(app, "--n"), "--n applies to the figure convention only");
  const auto pot = potential(o);
  const auto count = static_cast<std::size_t>(o.level) + 1;
  if (!o.parity.empty()) {
    const Parity parity = parity_of(o.parity);
    const auto spec = enough_levels(
        [&](double chi_max) { return rel1d::find_spectrum_1d(pot, {parity}, chi_max, o.scan_step); }, 12.0, false,
        count);
    require(spec.levels.size() >= count, fmt::format("level {} not found", o.level));
    const auto wf = rel1d::build_wavefunction_1d(spec.levels[static_cast<std::size_t>(o.level)], pot);
    const auto grid = uniform_grid(-r_max, r_max, o.points);
    const auto u = wf.values(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], u[i]});
    t.config = {{"convention", "solver"}, {"V", o.V},           {"a", o.a},         {"parity", o.parity},
                {"level", o.level},        {"chi", rounded(wf.level().chi)}, {"r_max", r_max}, {"points", o.points}};
    t.warnings = spec.warnings;
    return t;
  }
  require(o.l >= 0, "--l must be non-negative");
  const auto spec = enough_levels(
      [&](double chi_max) { return radial3d::find_spectrum(pot, {o.l}, chi_max, o.scan_step); }, 12.0, false, count);
  require(spec.levels.size() >= count, fmt::format("level {} not found", o.level));
  const auto wf = radial3d::build_wavefunction(spec.levels[static_cast<std::size_t>(o.level)], pot);
  for (double r : uniform_grid(0.0, r_max, o.points)) t.rows.push_back({r, wf.value(r)});
  t.config = {{"convention", "solver"}, {"V", o.V},           {"a", o.a},         {"l", o.l},
              {"level", o.level},        {"chi", rounded(wf.level().chi)}, {"r_max", r_max}, {"points", o.points}};
  t.warnings = spec.warnings;
  return t;
}

struct SweepCell {
  double V = 0.0;
  double a = 0.0;
  std::vector<std::pair<double, int>> levels;  // (chi, radial_index)
  std::vector<std::string> warnings;
  std::exception_ptr error;
};

Table cmd_sweep(const Options& o) {
  require(!o.V_values.empty(), "--V-values needs at least one value");
  require(!o.a_values.empty(), "--a-values needs at least one value");
  require(o.levels >= 1, "--levels must be at least 1");
  require(o.jobs >= 1, "--jobs must be at least 1");
  require(o.scan_step > 0.0, "--scan-step must be positive");
  for (double v : o.V_values) {
    require(std::isfinite(v), "--V-values must be finite");
    require(o.chi_max > std::min(0.0, v), "--chi-max must exceed min(0, V) for every V");
  }
  for (double a : o.a_values) require(a > 0.0 && std::isfinite(a), "--a-values must be positive");
  const bool one_d = !o.parity.empty();
  const Parity parity = one_d ? parity_of(o.parity) : Parity::even;
  require(one_d || o.l >= 0, "--l must be non-negative");

  std::vector<SweepCell> cells;
  for (double v : o.V_values) {
    for (double a : o.a_values) cells.push_back({v, a, {}, {}, nullptr});
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCell& c = cells[i];
      try {
        const SoftCorePotential pot{c.V, c.a};
        if (one_d) {
          const auto spec = rel1d::find_spectrum_1d(pot, {parity}, o.chi_max, o.scan_step);
          for (const auto& lv : spec.levels) c.levels.emplace_back(lv.chi, lv.radial_index);
          c.warnings = spec.warnings;
        } else {
          const auto spec = radial3d::find_spectrum(pot, {o.l}, o.chi_max, o.scan_step);
          for (const auto& lv : spec.levels) c.levels.emplace_back(lv.chi, lv.radial_index);
          c.warnings = spec.warnings;
        }
      } catch (...) {
        c.error = std::current_exception();
      }
    }
  };
  {
    const int threads = std::min<int>(o.jobs, static_cast<int>(cells.size()));
    std::vector<std::jthread> pool;
    for (int j = 1; j < threads; ++j) pool.emplace_back(worker);
    worker();
  }

  Table t;
  t.columns = {"V", "a", "index", "chi", "radial_index"};
  for (const auto& c : cells) {
    if (c.error) std::rethrow_exception(c.error);
    const std::size_t shown = std::min(c.levels.size(), static_cast<std::size_t>(o.levels));
    if (shown < static_cast<std::size_t>(o.levels)) {
      t.warnings.push_back(fmt::format("V = {}, a = {}: only {} levels below chi_max", format_number(c.V),
                                       format_number(c.a), shown));
    }
    for (std::size_t i = 0; i < shown; ++i) {
      t.rows.push_back({c.V, c.a, static_cast<long long>(i), c.levels[i].first, as_cell(c.levels[i].second)});
    }
    for (const auto& w : c.warnings) {
      t.warnings.push_back(fmt::format("V = {}, a = {}: {}", format_number(c.V), format_number(c.a), w));
    }
  }
  Json vs = Json::array(), as = Json::array();
  for (double v : o.V_values) vs.push_back(v);
  for (double a : o.a_values) as.push_back(a);
  t.config = {{"V_values", vs}, {"a_values", as}, {"levels", o.levels}, {"chi_max", o.chi_max},
              {"scan_step", o.scan_step}};
  if (one_d) {
    t.config["parity"] = o.parity;
  } else {
    t.config["l"] = o.l;
  }
  return t;
}

Table cmd_oracle_compare(const Options& o, const CLI::App* app) {
  const auto pot = potential(o);
  require(o.k >= 1, "--k must be at least 1");
  require(o.scan_step > 0.0, "--scan-step must be positive");
  const double r_max = o.r_max > 0.0 ? o.r_max : kOracleRMax;
  require(std::isfinite(r_max), "--r-max must be finite");
  const bool one_d = !o.parity.empty();
  const bool fixed = given(app, "--chi-max");
  require(!fixed || o.chi_max > std::min(0.0, o.V), "--chi-max must exceed min(0, V)");
  const double chi_start = fixed ? o.chi_max : 12.0;
  const auto count = static_cast<std::size_t>(o.k);

  std::vector<double> semi, grid;
  Table t;
  oracle::GridSpec spec;
  if (one_d) {
    const Parity parity = parity_of(o.parity);
    // Same spacing as the half-line default.
    spec = {r_max, given(app, "--n") ? o.grid_n : 2 * kOracleN + 1, oracle::Geometry::full_line};
    require(spec.n >= 100, "--n must be at least 100");
    const auto s = enough_levels(
        [&](double chi_max) { return rel1d::find_spectrum_1d(pot, {parity}, chi_max, o.scan_step); }, chi_start,
        fixed, count);
    for (const auto& lv : s.levels) semi.push_back(lv.chi);
    t.warnings = s.warnings;
    semi.resize(std::min(semi.size(), count));
    if (!semi.empty()) grid = oracle::oracle_spectrum(pot, ParitySector{parity}, spec, static_cast<int>(semi.size()));
  } else {
    require(o.l >= 0, "--l must be non-negative");
    spec = {r_max, given(app, "--n") ? o.grid_n : kOracleN, oracle::Geometry::half_line_dirichlet};
    require(spec.n >= 100, "--n must be at least 100");
    const auto s = enough_levels(
        [&](double chi_max) { return radial3d::find_spectrum(pot, {o.l}, chi_max, o.scan_step); }, chi_start, fixed,
        count);
    for (const auto& lv : s.levels) semi.push_back(lv.chi);
    t.warnings = s.warnings;
    semi.resize(std::min(semi.size(), count));
    if (!semi.empty()) grid = oracle::oracle_spectrum(pot, AngularChannel{o.l}, spec, static_cast<int>(semi.size()));
  }
  if (semi.size() < count) t.warnings.push_back(fmt::format("only {} semi-analytic levels found", semi.size()));

  t.columns = {"index", "chi_semi", "chi_oracle", "delta", "abs_delta"};
  double worst = 0.0;
  for (std::size_t i = 0; i < semi.size(); ++i) {
    const double d = semi[i] - grid[i];
    worst = std::max(worst, std::fabs(d));
    t.rows.push_back({static_cast<long long>(i), semi[i], grid[i], d, std::fabs(d)});
  }
  t.summary = {{"max_abs_delta", rounded(worst)}};
  t.config = {{"V", o.V}, {"a", o.a}, {"k", o.k}, {"r_max", r_max}, {"n", spec.n},
              {"h", rounded(spec.spacing())}, {"scan_step", o.scan_step}};
  if (one_d) {
    t.config["parity"] = o.parity;
  } else {
    t.config["l"] = o.l;
  }
  return t;
}

Table cmd_qes(const Options& o) {
  require(o.p >= 1, "--p must be at least 1");
  require(o.l >= 0, "--l must be non-negative");
  require(o.lambda_max >= 0.0 && std::isfinite(o.lambda_max), "--lambda-max must be non-negative");
  const auto sols = harmonium::find_qes_couplings(o.p, o.l, o.lambda_max);
  Table t;
  t.columns = {"p", "l", "lambda", "E", "residual", "coefficients"};
  for (const auto& s : sols) {
    t.rows.push_back({as_cell(s.degree), as_cell(s.l), s.coupling, s.energy, s.residual, s.coefficients});
  }
  t.config = {{"p", o.p}, {"l", o.l}, {"lambda_max", o.lambda_max > 0.0 ? o.lambda_max : 10.0 * (o.p + 1)}};
  return t;
}

Table cmd_figure1(const Options& o) {
  require(o.points >= 2, "--points must be at least 2");
  const double r_max = o.r_max > 0.0 ? o.r_max : 6.0;
  require(std::isfinite(r_max), "--r-max must be finite");
  const auto grid = uniform_grid(0.0, r_max, o.points);
  Table t;
  t.columns = {"n", "l", "r", "u"};
  for (int n : {1, 3}) {
    for (int l : {0, 1}) {
      for (const auto& [r, u] : radial3d::figure_convention_curve(n, l, grid)) {
        t.rows.push_back({as_cell(n), as_cell(l), r, u});
      }
    }
  }
  t.config = {{"convention", "figure"}, {"r_max", r_max}, {"points", o.points}};
  return t;
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("-o,--output", o.output, "Output file (relative paths resolve against SOFTCORE_OUTPUT_DIR)");
}

void add_potential(CLI::App* sub, Options& o) {
  sub->add_option("--V", o.V, "Core height V")->check(kFinite)->capture_default_str();
  sub->add_option("--a", o.a, "Core range a")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_scan(CLI::App* sub, Options& o) {
  sub->add_option("--scan-step", o.scan_step, "Scan step in chi")->check(CLI::PositiveNumber)->capture_default_str();
}

std::filesystem::path resolve_output(const Options& o, const std::string& command) {
  const char* dir = std::getenv("SOFTCORE_OUTPUT_DIR");
  const bool have_dir = dir != nullptr && *dir != '\0';
  if (!o.output.empty() && o.output != "-") {
    std::filesystem::path p(o.output);
    return p.is_relative() && have_dir ? std::filesystem::path(dir) / p : p;
  }
  if (o.output.empty() && have_dir) return std::filesystem::path(dir) / (command + "." + o.format);
  return {};
}

std::string error_record(const std::string& kind, const std::string& message, const std::string& command) {
  Json rec;
  rec["error"] = {{"kind", kind}, {"message", message}, {"command", command}};
  return rec.dump() + "\n";
}

int report_failure(std::exception_ptr failure, const std::string& command, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Soft-core two-particle trap spectra", "softcore"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "3D radial spectrum of one angular channel");
  add_potential(spectrum, o);
  spectrum->add_option("--l", o.l, "Angular momentum")->check(CLI::NonNegativeNumber)->capture_default_str();
  spectrum->add_option("--chi-max", o.chi_max, "Upper end of the scan")->capture_default_str();
  add_scan(spectrum, o);
  spectrum->add_option("--parity", o.parity)->group("");
  add_output(spectrum, o);

  auto* spectrum1d = app.add_subcommand("spectrum1d", "1D spectrum by parity sector");
  add_potential(spectrum1d, o);
  spectrum1d->add_option("--parity", o.parity, "even, odd or both (default)")
      ->check(CLI::IsMember({"even", "odd", "both"}));
  spectrum1d->add_option("--chi-max", o.chi_max, "Upper end of the scan")->capture_default_str();
  add_scan(spectrum1d, o);
  spectrum1d->add_option("--l", o.l)->group("");
  add_output(spectrum1d, o);

  auto* wavefunction = app.add_subcommand("wavefunction", "Normalized eigenfunction on a uniform grid");
  add_potential(wavefunction, o);
  auto* wf_l = wavefunction->add_option("--l", o.l, "Angular momentum (3D)");
  auto* wf_parity = wavefunction->add_option("--parity", o.parity, "Parity sector (1D)")
                        ->check(CLI::IsMember({"even", "odd"}));
  wf_l->excludes(wf_parity);
  wavefunction->add_option("--level", o.level, "Level index within the channel")->capture_default_str();
  wavefunction
      ->add_option("--convention", o.convention,
                   "solver (alias eq5): normalized solution with trap term r^2/4; "
                   "figure (alias paper): unnormalized r^(l+1) e^(-r^2/2) M((2l+3-n)/4, l+3/2, r^2)")
      ->capture_default_str();
  wavefunction->add_option("--n", o.principal, "Principal number for the figure convention");
  wavefunction->add_option("--points", o.points, "Grid points")->capture_default_str();
  wavefunction->add_option("--r-max", o.r_max, "Grid extent (default 6)")->check(CLI::PositiveNumber);
  add_scan(wavefunction, o);
  add_output(wavefunction, o);

  auto* sweep = app.add_subcommand("sweep", "Lowest levels over a (V, a) grid");
  sweep->add_option("--V-values", o.V_values, "Comma-separated core heights")->delimiter(',')->required();
  sweep->add_option("--a-values", o.a_values, "Comma-separated core ranges")->delimiter(',')->required();
  auto* sw_l = sweep->add_option("--l", o.l, "Angular momentum (3D)");
  auto* sw_parity = sweep->add_option("--parity", o.parity, "Parity sector (1D)")->check(CLI::IsMember({"even", "odd"}));
  sw_l->excludes(sw_parity);
  sweep->add_option("--levels", o.levels, "Levels per cell")->capture_default_str();
  sweep->add_option("--chi-max", o.chi_max, "Upper end of the scan")->capture_default_str();
  sweep->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  add_scan(sweep, o);
  add_output(sweep, o);

  auto* compare = app.add_subcommand("oracle-compare", "Semi-analytic levels against the grid oracle");
  add_potential(compare, o);
  auto* oc_l = compare->add_option("--l", o.l, "Angular momentum (3D)");
  auto* oc_parity = compare->add_option("--parity", o.parity, "Parity sector (1D)")->check(CLI::IsMember({"even", "odd"}));
  oc_l->excludes(oc_parity);
  compare->add_option("--k", o.k, "Levels to compare")->capture_default_str();
  compare->add_option("--r-max", o.r_max, "Grid extent (default 14)")->check(CLI::PositiveNumber);
  compare->add_option("--n", o.grid_n, "Interior grid points (default 5600, 11201 on the full line)");
  compare->add_option("--chi-max", o.chi_max, "Fix the scan end instead of extending it until k levels are found");
  add_scan(compare, o);
  add_output(compare, o);

  auto* qes = app.add_subcommand("qes", "Quasi-exactly solvable Coulomb couplings");
  qes->add_option("--p", o.p, "Polynomial degree")->capture_default_str();
  qes->add_option("--l", o.l, "Angular momentum")->capture_default_str();
  qes->add_option("--lambda-max", o.lambda_max, "Coupling scan half-width (default 10(p+1))");
  add_output(qes, o);

  auto* figure1 = app.add_subcommand("figure1", "Figure-convention curves for n in {1, 3}, l in {0, 1}");
  figure1->add_option("--points", o.points, "Grid points")->capture_default_str();
  figure1->add_option("--r-max", o.r_max, "Grid extent (default 6)")->check(CLI::PositiveNumber);
  add_output(figure1, o);

  std::string command;
  std::filesystem::path path;
  bool created = false;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << error_record("usage", e.what(), subs.empty() ? "" : subs.front()->get_name());
    return kUsageError;
  }
  const CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();

  try {
    if (command == "spectrum") require(!given(sub, "--parity"), "--parity selects a 1D sector; use spectrum1d");
    if (command == "spectrum1d") require(!given(sub, "--l"), "--l selects a 3D channel; use spectrum");

    // Probe the destination before computing so a bad path fails fast.
    path = resolve_output(o, command);
    if (!path.empty()) {
      created = !std::filesystem::exists(path);
      std::ofstream probe(path, std::ios::binary | std::ios::app);
      if (!probe) throw IoError("cannot write " + path.string());
    }

    Table table;
    if (command == "spectrum") table = cmd_spectrum(o);
    else if (command == "spectrum1d") table = cmd_spectrum1d(o);
    else if (command == "wavefunction") table = cmd_wavefunction(o, sub);
    else if (command == "sweep") table = cmd_sweep(o);
    else if (command == "oracle-compare") table = cmd_oracle_compare(o, sub);
    else if (command == "qes") table = cmd_qes(o);
    else table = cmd_figure1(o);

    const std::string text = o.format == "json" ? render_json(command, table) : render_csv(table);
    if (path.empty()) {
      out << text;
    } else {
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      file << text;
      file.close();
      if (!file) throw IoError("failed writing " + path.string());
    }
    if (o.format == "csv") {
      for (const auto& w : table.warnings) err << "warning: " << w << '\n';
    }
    return kOk;
  } catch (...) {
    std::error_code ec;
    if (created) std::filesystem::remove(path, ec);
    return report_failure(std::current_exception(), command, err);
  }
}

namespace {

int report_failure(std::exception_ptr failure, const std::string& command, std::ostream& err) {
  try {
    std::rethrow_exception(failure);
  } catch (const UsageError& e) {
    err << error_record("usage", e.what(), command);
    return kUsageError;
  } catch (const IoError& e) {
    err << error_record("io", e.what(), command);
    return kIoError;
  } catch (const DomainError& e) {
    err << error_record("domain", e.what(), command);
    return kNumericalError;
  } catch (const NonConvergenceError& e) {
    err << error_record("non_convergence", e.what(), command);
    return kNumericalError;
  } catch (const OverflowError& e) {
    err << error_record("overflow", e.what(), command);
    return kNumericalError;
  } catch (const MatchingDegeneracyError& e) {
    err << error_record("matching_degeneracy", e.what(), command);
    return kNumericalError;
  } catch (const std::exception& e) {
    err << error_record("internal", e.what(), command);
    return kInternalError;
  }
}

}  // namespace

}  // namespace softcore::cli
