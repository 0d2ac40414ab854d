// factorcop command line front end. Talks to the library through the C API only.

#include <factorcop/factorcop.h>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

enum ExitCode
{
  exit_ok = 0,
  exit_error = 1,
  exit_config = 2,
  exit_partial = 3,
};

// Carries a library status out of a subcommand so main can pick the exit code.
struct LibraryError : std::runtime_error
{
  fcop_status status;
  LibraryError(fcop_status s, const std::string& what)
    : std::runtime_error(what)
    , status(s)
  {
  }
};

void
check(fcop_status status, const char* what)
{
  if (status != FCOP_OK)
    throw LibraryError(status, std::string(what) + ": " + fcop_last_error());
}

struct Table
{
  std::vector<std::string> names;
  std::vector<double> values; // row-major
  int rows = 0;

  int cols() const { return static_cast<int>(names.size()); }

  int column_index(const std::string& key) const
  {
    for (int j = 0; j < cols(); ++j)
      if (names[j] == key)
        return j;
    int j = -1;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), j);
    if (ec == std::errc() && ptr == key.data() + key.size() && j >= 0 && j < cols())
      return j;
    throw std::runtime_error("no column '" + key + "'");
  }

  std::vector<double> column(int j) const
  {
    std::vector<double> out(rows);
    for (int i = 0; i < rows; ++i)
      out[i] = values[static_cast<size_t>(i) * cols() + j];
    return out;
  }
};

std::vector<std::string>
split(const std::string& line, char sep)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    auto first = field.find_first_not_of(" \t\r");
    auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

Table
read_csv(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw LibraryError(FCOP_ERR_IO, "cannot open " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line))
    throw LibraryError(FCOP_ERR_IO, path + ": empty file");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0)
    line.erase(0, 3);
  t.names = split(line, ',');
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    auto fields = split(line, ',');
    if (static_cast<int>(fields.size()) != t.cols())
      throw LibraryError(FCOP_ERR_IO, path + ":" + std::to_string(lineno) + ": expected " +
                                        std::to_string(t.cols()) + " fields");
    for (const auto& f : fields) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw LibraryError(FCOP_ERR_IO, path + ":" + std::to_string(lineno) + ": not a number: '" + f + "'");
      t.values.push_back(x);
    }
    ++t.rows;
  }
  return t;
}

class CsvWriter
{
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path)
    , path_(path)
  {
    if (!out_)
      throw LibraryError(FCOP_ERR_IO, "cannot write " + path);
    for (size_t j = 0; j < header.size(); ++j)
      out_ << (j ? "," : "") << header[j];
    out_ << '\n';
  }

  void row(const double* x, size_t m)
  {
    char buf[32];
    for (size_t j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", x[j]);
      out_ << (j ? "," : "") << buf;
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& x) { row(x.data(), x.size()); }

  ~CsvWriter() noexcept(false)
  {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0)
      throw LibraryError(FCOP_ERR_IO, "write failed: " + path_);
  }

private:
  std::ofstream out_;
  std::string path_;
};

// Uniform-scale matrix from a raw CSV: kernel CDF transform, or validation only.
std::vector<double>
to_uniform(const Table& t, bool already_uniform)
{
  std::vector<double> u(t.values.size());
  if (already_uniform)
    check(fcop_validate_uniform(t.values.data(), t.rows, t.cols(), u.data()), "input");
  else
    check(fcop_pseudo_observations(t.values.data(), t.rows, t.cols(), 0.0, u.data()), "pseudo-observations");
  return u;
}

int
cmd_mc_study(const std::string& config, const std::string& out, bool verbose)
{
  fcop_study* study = nullptr;
  check(fcop_study_load(config.c_str(), &study), "config");
  struct Guard
  {
    fcop_study* s;
    ~Guard() { fcop_study_destroy(s); }
  } guard{ study };
  if (!out.empty())
    check(fcop_study_set_output(study, out.c_str()), "output");
  check(fcop_study_run(study, verbose), "study");
  std::cout << fcop_study_summary_csv(study);
  size_t failed = fcop_study_failed(study);
  if (failed > 0) {
    std::cerr << "warning: " << failed << " replication(s) failed\n";
    return exit_partial;
  }
  return exit_ok;
}

int
cmd_simulate(const std::string& family_name, double theta, int n, int d, uint64_t seed, const std::string& out,
             bool latent)
{
  fcop_family family;
  check(fcop_family_parse(family_name.c_str(), &family), "family");
  fcop_model* model = nullptr;
  check(fcop_model_create(family, theta, d, &model), "model");
  std::vector<double> u(static_cast<size_t>(n) * d), v0(n);
  fcop_status s = fcop_model_sample(model, n, seed, u.data(), v0.data());
  fcop_model_destroy(model);
  check(s, "sample");

  std::vector<std::string> header;
  for (int j = 0; j < d; ++j)
    header.push_back("u" + std::to_string(j + 1));
  if (latent)
    header.push_back("v0");
  CsvWriter w(out, header);
  std::vector<double> row(header.size());
  for (int i = 0; i < n; ++i) {
    std::copy_n(u.begin() + static_cast<ptrdiff_t>(i) * d, d, row.begin());
    if (latent)
      row[d] = v0[i];
    w.row(row);
  }
  return exit_ok;
}

int
cmd_proxy(const std::string& in, const std::string& out, bool already_uniform)
{
  Table t = read_csv(in);
  auto u = to_uniform(t, already_uniform);
  std::vector<double> z(t.rows), v(t.rows), w(t.rows);
  size_t ties = 0;
  check(fcop_proxy(u.data(), t.rows, t.cols(), 0, z.data(), v.data(), w.data(), &ties), "proxy");
  if (ties > 0)
    std::cerr << "warning: " << ties << " tied proxy value(s); ties broken by row order\n";
  CsvWriter csv(out, { "z_bar", "v_hat", "w_hat" });
  for (int i = 0; i < t.rows; ++i)
    csv.row({ z[i], v[i], w[i] });
  return exit_ok;
}

int
cmd_pair_density(const std::string& in, const std::string& cols, int grid, const std::string& out,
                 bool already_uniform)
{
  if (grid < 2)
    throw CLI::ValidationError("--grid", "must be at least 2");
  auto names = split(cols, ',');
  if (names.size() != 2)
    throw CLI::ValidationError("--cols", "expected two columns A,B");
  Table t = read_csv(in);
  auto u = to_uniform(t, already_uniform);
  Table ut = t;
  ut.values = u;

  std::vector<double> a = ut.column(ut.column_index(names[0]));
  std::vector<double> b;
  if (names[1] == "proxy") {
    b.resize(t.rows);
    check(fcop_proxy(u.data(), t.rows, t.cols(), 0, nullptr, b.data(), nullptr, nullptr), "proxy");
  } else {
    b = ut.column(ut.column_index(names[1]));
  }

  fcop_estimator_options opts;
  fcop_estimator_options_init(&opts);
  fcop_pair_fit* fit = nullptr;
  check(fcop_pair_fit_create(a.data(), b.data(), t.rows, &opts, &fit), "pair fit");
  size_t m = static_cast<size_t>(grid) * grid;
  std::vector<double> gu(m), gv(m), dens(m);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      size_t k = static_cast<size_t>(i) * grid + j;
      gu[k] = opts.clip_lo + (opts.clip_hi - opts.clip_lo) * i / (grid - 1);
      gv[k] = opts.clip_lo + (opts.clip_hi - opts.clip_lo) * j / (grid - 1);
    }
  fcop_status s = fcop_pair_fit_density(fit, gu.data(), gv.data(), m, dens.data());
  fcop_pair_fit_destroy(fit);
  check(s, "pair density");

  CsvWriter csv(out, { "u", "v", "density" });
  for (size_t k = 0; k < m; ++k)
    csv.row({ gu[k], gv[k], dens[k] });
  return exit_ok;
}

int
cmd_factor_density(const std::string& in, int k, const std::string& eval, const std::string& out, bool with_naive,
                   bool already_uniform)
{
  Table t = read_csv(in);
  auto u = to_uniform(t, already_uniform);
  Table points = read_csv(eval);
  if (points.cols() != k)
    throw LibraryError(FCOP_ERR_DIMENSION, eval + ": expected " + std::to_string(k) + " columns");
  size_t m = points.rows;

  fcop_factor_fit* fit = nullptr;
  check(fcop_factor_fit_create(u.data(), t.rows, t.cols(), k, nullptr, &fit), "factor fit");
  std::vector<double> dens(m);
  fcop_status s = fcop_factor_fit_density(fit, points.values.data(), m, dens.data());
  fcop_factor_fit_destroy(fit);
  check(s, "factor density");

  std::vector<double> naive;
  if (with_naive) {
    std::vector<double> first(static_cast<size_t>(t.rows) * k);
    for (int i = 0; i < t.rows; ++i)
      std::copy_n(u.begin() + static_cast<ptrdiff_t>(i) * t.cols(), k, first.begin() + static_cast<ptrdiff_t>(i) * k);
    fcop_naive_fit* nf = nullptr;
    check(fcop_naive_fit_create(first.data(), t.rows, k, nullptr, &nf), "naive fit");
    naive.resize(m);
    s = fcop_naive_fit_density(nf, points.values.data(), m, naive.data());
    fcop_naive_fit_destroy(nf);
    check(s, "naive density");
  }

  std::vector<std::string> header = points.names;
  header.push_back("density");
  if (with_naive)
    header.push_back("naive");
  CsvWriter csv(out, header);
  std::vector<double> row(header.size());
  for (size_t i = 0; i < m; ++i) {
    std::copy_n(points.values.begin() + static_cast<ptrdiff_t>(i) * k, k, row.begin());
    row[k] = dens[i];
    if (with_naive)
      row[k + 1] = naive[i];
    csv.row(row);
  }
  return exit_ok;
}

int
cmd_scree(const std::string& in, const std::string& out)
{
  Table t = read_csv(in);
  std::vector<double> ev(t.cols());
  check(fcop_scree(t.values.data(), t.rows, t.cols(), ev.data()), "scree");
  CsvWriter csv(out, { "component", "eigenvalue" });
  for (int j = 0; j < t.cols(); ++j)
    csv.row({ static_cast<double>(j + 1), ev[j] });
  return exit_ok;
}

int
cmd_rmsd(const std::string& est, const std::string& ref, const std::string& col)
{
  Table a = read_csv(est);
  Table b = read_csv(ref);
  auto x = a.column(a.column_index(col));
  auto y = b.column(b.column_index(col));
  if (x.size() != y.size())
    throw LibraryError(FCOP_ERR_DIMENSION, "row counts differ: " + std::to_string(x.size()) + " vs " +
                                             std::to_string(y.size()));
  double r = 0.0;
  check(fcop_rmsd(x.data(), y.data(), x.size(), &r), "rmsd");
  std::printf("%.12g\n", r);
  return exit_ok;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{ "Kernel estimation of one-factor copula densities" };
  app.set_version_flag("--version", std::string(fcop_version()));
  app.require_subcommand(1);
  int code = exit_ok;

  std::string config, out, in, family = "gumbel", cols, eval, est, ref, col = "density";
  double theta = 1.4;
  int n = 500, d = 20, k = 5, grid = 101;
  uint64_t seed = 1;
  bool verbose = false, latent = false, already_uniform = false, with_naive = false;

  auto* mc = app.add_subcommand("mc-study", "Run a Monte Carlo study from a JSON config");
  mc->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
  mc->add_option("--out", out, "Summary CSV (overrides the config)");
  mc->add_flag("--verbose", verbose, "Report progress on stderr");
  mc->callback([&] { code = cmd_mc_study(config, out, verbose); });

  auto* sim = app.add_subcommand("simulate", "Sample from a one-factor copula");
  sim->add_option("--family", family, "gumbel, clayton or independence");
  sim->add_option("--theta", theta, "Link copula parameter");
  sim->add_option("--n", n, "Observations")->check(CLI::PositiveNumber);
  sim->add_option("--d", d, "Variables")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Random seed");
  sim->add_option("--out", out, "Output CSV")->required();
  sim->add_flag("--latent", latent, "Append the latent factor as column v0");
  sim->callback([&] { code = cmd_simulate(family, theta, n, d, seed, out, latent); });

  auto* px = app.add_subcommand("proxy", "Estimate the latent factor proxy");
  px->add_option("--in", in, "Input CSV")->required()->check(CLI::ExistingFile);
  px->add_option("--out", out, "Output CSV")->required();
  px->add_flag("--already-uniform", already_uniform, "Input is already on the copula scale");
  px->callback([&] { code = cmd_proxy(in, out, already_uniform); });

  auto* pd = app.add_subcommand("pair-density", "Bivariate copula density on a grid");
  pd->add_option("--in", in, "Input CSV")->required()->check(CLI::ExistingFile);
  pd->add_option("--cols", cols, "Columns A,B by name or index; B may be 'proxy'")->required();
  pd->add_option("--grid", grid, "Grid points per axis");
  pd->add_option("--out", out, "Output CSV")->required();
  pd->add_flag("--already-uniform", already_uniform, "Input is already on the copula scale");
  pd->callback([&] { code = cmd_pair_density(in, cols, grid, out, already_uniform); });

  auto* fd = app.add_subcommand("factor-density", "One-factor copula density at given points");
  fd->add_option("--in", in, "Input CSV")->required()->check(CLI::ExistingFile);
  fd->add_option("--k", k, "Number of leading variables")->required()->check(CLI::PositiveNumber);
  fd->add_option("--eval", eval, "Evaluation points CSV, one K-vector per row")->required()->check(CLI::ExistingFile);
  fd->add_option("--out", out, "Output CSV")->required();
  fd->add_flag("--with-naive", with_naive, "Add the product-kernel estimate");
  fd->add_flag("--already-uniform", already_uniform, "Input is already on the copula scale");
  fd->callback([&] { code = cmd_factor_density(in, k, eval, out, with_naive, already_uniform); });

  auto* sc = app.add_subcommand("scree", "Eigenvalues of the Spearman correlation matrix");
  sc->add_option("--in", in, "Input CSV")->required()->check(CLI::ExistingFile);
  sc->add_option("--out", out, "Output CSV")->required();
  sc->callback([&] { code = cmd_scree(in, out); });

  auto* rm = app.add_subcommand("rmsd", "Root mean squared difference of two density columns");
  rm->add_option("--est", est, "First CSV")->required()->check(CLI::ExistingFile);
  rm->add_option("--ref", ref, "Second CSV")->required()->check(CLI::ExistingFile);
  rm->add_option("--col", col, "Column compared in both files");
  rm->callback([&] { code = cmd_rmsd(est, ref, col); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.status == FCOP_ERR_CONFIG ? exit_config : exit_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return code;
}
