#include "cli.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canonsys/atomic.hpp"
#include "canonsys/csv.hpp"
#include "canonsys/direct.hpp"
#include "canonsys/errors.hpp"
#include "canonsys/measure_json.hpp"
#include "canonsys/opuc.hpp"
#include "canonsys/periodic.hpp"
#include "canonsys/pw_diagnostic.hpp"

namespace canonsys::cli {

namespace {

using nlohmann::json;

constexpr const char* kDefaultAtomicGrid = "0.1:10:100";
constexpr const char* kDefaultAxisGrid = "-10:10:201";
constexpr int kDefaultDualMoments = 16;
constexpr double kDefaultVerifyTol = 5e-2;
constexpr double kDefaultOpucTol = 1e-8;
constexpr int kLineBlocksPerUnitTime = 50;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json cplx_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

void require_input(const CommandRequest& r) {
  if (r.input.empty()) fail(ErrorKind::InvalidArgument, "--input is required");
}

const LineMeasure& line_with_density(const SpectralMeasure& mu) {
  const auto& l = mu.as_line();
  if (!(l.lebesgue > 0.0)) fail(ErrorKind::OutOfScope, "the soliton solver needs a positive Lebesgue part");
  return l;
}

PiecewiseHamiltonian solve_periodic_for(const SpectralMeasure& mu, std::size_t steps, const CommandRequest& r) {
  PeriodicSolveOptions opt;
  opt.steps = steps;
  opt.gauge_k = r.gauge_k;
  opt.crosscheck = r.crosscheck;
  if (r.tol) opt.crosscheck_tol = *r.tol;
  return hamiltonian_from_periodic(mu, opt);
}

// Piecewise-constant approximation of the soliton Hamiltonian from midpoint samples.
PiecewiseHamiltonian soliton_blocks(const SpectralMeasure& mu, double T, double gauge_k) {
  const auto& l = line_with_density(mu);
  const int blocks = std::max(1, static_cast<int>(std::ceil(T * kLineBlocksPerUnitTime)));
  std::vector<double> mids;
  for (int i = 0; i < blocks; ++i) mids.push_back(T * (i + 0.5) / blocks);
  const auto rows = hamiltonian_from_atomic(l.lebesgue, l.atoms, mids, gauge_k);
  std::vector<HamiltonianBlock> out;
  for (int i = 0; i < blocks; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    out.push_back({T * i / blocks, T * (i + 1) / blocks, row.h11, row.h12, row.h22});
  }
  return PiecewiseHamiltonian(std::move(out));
}

std::string do_solve_periodic(const CommandRequest& r) {
  require_input(r);
  if (r.steps < 1) fail(ErrorKind::InvalidArgument, "--steps must be at least 1");
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  return piecewise_csv(solve_periodic_for(mu, static_cast<std::size_t>(r.steps), r));
}

std::string do_solve_atomic(const CommandRequest& r) {
  require_input(r);
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  const auto& l = line_with_density(mu);
  const auto grid = parse_grid(r.grid.value_or(kDefaultAtomicGrid)).points();
  return sampled_csv(hamiltonian_from_atomic(l.lebesgue, l.atoms, grid, r.gauge_k));
}

std::string do_dual(const CommandRequest& r) {
  require_input(r);
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  DualOptions opt;
  if (r.tol) opt.consistency_tol = *r.tol;
  const int K = r.moments > 0 ? r.moments : kDefaultDualMoments;
  return measure_to_json(dual_measure(mu, r.b, static_cast<std::size_t>(K), opt));
}

PiecewiseHamiltonian load_hamiltonian(const std::string& path, const CommandRequest& r, double T) {
  const std::string text = read_file(path);
  if (has_suffix(path, ".csv")) return parse_piecewise_csv(text);
  const SpectralMeasure mu = parse_measure_json(text);
  if (mu.is_periodic()) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * T - 1e-12)));
    return solve_periodic_for(mu, std::max<std::size_t>(steps, static_cast<std::size_t>(r.steps)), r);
  }
  if (mu.is_line()) return soliton_blocks(mu, T, r.gauge_k);
  fail(ErrorKind::Unsupported, "no inverse solver for rational-density input");
}

std::string do_direct_eval(const CommandRequest& r) {
  require_input(r);
  const bool csv_input = has_suffix(r.input, ".csv");
  const PiecewiseHamiltonian H = load_hamiltonian(r.input, r, r.chain_time);
  const double T = csv_input && r.chain_time > H.end() ? H.end() : r.chain_time;
  const auto xs = parse_grid(r.grid.value_or(kDefaultAxisGrid)).points();
  std::string out;
  if (r.matrizant) {
    out = "x,A_re,A_im,B_re,B_im,C_re,C_im,D_re,D_im\n";
    for (double x : xs) {
      const TransferMatrix m = matrizant(H, T, cplx(x, 0.0));
      out += format_double(x);
      for (cplx v : {m.A, m.B, m.C, m.D}) out += ',' + format_double(v.real()) + ',' + format_double(v.imag());
      out += '\n';
    }
  } else {
    out = "x,density\n";
    for (double x : xs) out += format_double(x) + ',' + format_double(spectral_density(H, T, x, r.rescale)) + '\n';
  }
  return out;
}

struct VerifyOutcome {
  std::string report;
  bool pass = true;
  double max_residual = 0.0;
  double tol = 0.0;
};

VerifyOutcome do_verify(const CommandRequest& r) {
  require_input(r);
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  const double T = r.chain_time;
  if (!(T > 0.0)) fail(ErrorKind::InvalidArgument, "--chain-time must be positive");
  PiecewiseHamiltonian H;
  if (!r.hamiltonian.empty()) {
    H = load_hamiltonian(r.hamiltonian, r, T);
  } else if (mu.is_periodic()) {
    const auto steps = static_cast<std::size_t>(std::ceil(2.0 * T - 1e-12));
    H = solve_periodic_for(mu, std::max<std::size_t>(steps, 1), r);
  } else if (mu.is_line()) {
    H = soliton_blocks(mu, T, r.gauge_k);
  } else {
    fail(ErrorKind::Unsupported, "verify needs --hamiltonian for rational-density input");
  }
  const int K = r.moments > 0 ? r.moments : 3;
  const RoundtripReport rep = roundtrip_residual(mu, H, T, static_cast<std::size_t>(K), r.periods);
  VerifyOutcome outcome;
  outcome.tol = r.tol.value_or(kDefaultVerifyTol);
  outcome.max_residual = rep.max_residual();
  outcome.pass = outcome.max_residual < outcome.tol;
  json doc;
  doc["chain_time"] = T;
  doc["moments"] = K;
  doc["periods"] = r.periods;
  doc["window"] = {rep.window_lo, rep.window_hi};
  doc["atoms"] = rep.atoms;
  doc["tol"] = outcome.tol;
  json rows = json::array();
  for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
    rows.push_back({{"k", k},
                    {"estimated", cplx_json(rep.estimated[k])},
                    {"expected", cplx_json(rep.expected[k])},
                    {"residual", rep.residuals[k]}});
  }
  doc["residuals"] = rows;
  doc["max_residual"] = outcome.max_residual;
  doc["pass"] = outcome.pass;
  outcome.report = doc.dump(2) + "\n";
  return outcome;
}

struct OpucOutcome {
  std::string report;
  bool pass = true;
  double max_diff = 0.0;
  double tol = 0.0;
};

OpucOutcome do_opuc_check(const CommandRequest& r) {
  require_input(r);
  if (r.steps < 1) fail(ErrorKind::InvalidArgument, "--steps must be at least 1");
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  const auto N = static_cast<std::size_t>(r.steps - 1);
  const MomentSequence gamma = periodic_moments(mu, N);
  const HgSequences hg = hg_sequences(gamma, N);
  const OpucBasis basis = szego_basis(gamma, N);
  OpucOutcome outcome;
  outcome.tol = r.tol.value_or(kDefaultOpucTol);
  json rows = json::array();
  for (std::size_t n = 0; n <= N; ++n) {
    const double ho = h_via_onp(basis, n, cplx(1.0, 0.0));
    const double diff = std::abs(hg.h[n] - ho);
    outcome.max_diff = std::max(outcome.max_diff, diff);
    rows.push_back({{"n", n}, {"h_toeplitz", hg.h[n]}, {"h_opuc", ho}, {"abs_diff", diff}});
  }
  outcome.pass = outcome.max_diff <= outcome.tol;
  json doc;
  doc["rows"] = rows;
  doc["max_abs_diff"] = outcome.max_diff;
  doc["tol"] = outcome.tol;
  doc["pass"] = outcome.pass;
  outcome.report = doc.dump(2) + "\n";
  return outcome;
}

std::string do_diagnose_pw(const CommandRequest& r) {
  require_input(r);
  const SpectralMeasure mu = parse_measure_json(read_file(r.input));
  const auto [lo, hi] = parse_window(r.window);
  PwOptions opt;
  opt.t = r.pw_t;
  opt.L = r.pw_L;
  opt.delta = r.pw_delta;
  const PwReport rep = pw_diagnostic(mu, lo, hi, opt);
  json doc;
  doc["window"] = {rep.window_lo, rep.window_hi};
  doc["t"] = opt.t;
  doc["L"] = opt.L;
  doc["delta"] = opt.delta;
  doc["sup_unit_mass"] = rep.sup_unit_mass;
  doc["intervals_checked"] = rep.intervals_checked;
  doc["min_capacity"] = rep.min_capacity;
  doc["min_capacity_ratio"] = rep.min_capacity_ratio;
  doc["worst_interval_lo"] = rep.worst_interval_lo;
  doc["capacity_ok"] = rep.capacity_ok;
  doc["flagged_non_pw"] = mu.flagged_non_pw();
  doc["verdict"] = std::string(to_string(rep.verdict));
  doc["note"] = "finite-window heuristic, not a proof";
  return doc.dump(2) + "\n";
}

void emit(const CommandRequest& r, const std::string& content, std::ostream& out) {
  if (r.output == "-" || r.output.empty()) {
    out << content;
  } else {
    write_file_atomic(r.output, content);
  }
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    xs.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1));
  return xs;
}

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
    fail(ErrorKind::InvalidArgument, "grid must look like start:stop:count");
  try {
    std::size_t used = 0;
    const std::string a = spec.substr(0, c1), b = spec.substr(c1 + 1, c2 - c1 - 1), c = spec.substr(c2 + 1);
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    g.count = std::stoi(c, &used);
    if (used != c.size()) throw std::invalid_argument(c);
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidArgument, "grid must look like start:stop:count");
  }
  if (g.count < 1 || !std::isfinite(g.start) || !std::isfinite(g.stop))
    fail(ErrorKind::InvalidArgument, "grid needs finite bounds and count >= 1");
  return g;
}

std::pair<double, double> parse_window(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) fail(ErrorKind::InvalidArgument, "window must look like LO,HI");
  try {
    std::size_t used = 0;
    const std::string a = spec.substr(0, comma), b = spec.substr(comma + 1);
    const double lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const double hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (!(lo < hi)) fail(ErrorKind::InvalidArgument, "window needs LO < HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidArgument, "window must look like LO,HI");
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write output file " + path);
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::InvalidArgument, "failed writing output file " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::InvalidArgument, "cannot move output into place: " + path);
  }
}

std::optional<CommandRequest> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                 std::ostream& err, int& exit_code) {
  CLI::App app{"Inverse and direct spectral problems for 2x2 canonical systems", "canonsys"};
  app.require_subcommand(1);
  CommandRequest req;
  std::string grid;
  double tol = 0.0;
  int moments = 0;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", req.input, "Input measure JSON (or Hamiltonian .csv where noted)")->required();
    sub->add_option("--output", req.output, "Output path, '-' for stdout")->default_val("-");
  };
  auto add_tol = [&](CLI::App* sub, const char* what) { sub->add_option("--tol", tol, what); };

  auto* sp = app.add_subcommand("solve-periodic", "Piecewise Hamiltonian of a periodic measure (CSV)");
  add_io(sp);
  sp->add_option("--steps", req.steps, "Number of half-unit blocks")->default_val(8);
  sp->add_option("--gauge-k", req.gauge_k, "Gauge parameter k: h12 = g - k h11")->default_val(0.0);
  sp->add_flag("--crosscheck", req.crosscheck, "Cross-check h22 against the dual measure (even measures)");
  add_tol(sp, "Cross-check tolerance (default 1e-6)");

  auto* sa = app.add_subcommand("solve-atomic", "Sampled Hamiltonian of a soliton measure (CSV)");
  add_io(sa);
  sa->add_option("--grid", grid, "t grid start:stop:count")->default_val(kDefaultAtomicGrid);
  sa->add_option("--gauge-k", req.gauge_k, "Gauge parameter k")->default_val(0.0);

  auto* du = app.add_subcommand("dual", "Aleksandrov-Clark dual measure (JSON)");
  add_io(du);
  du->add_option("--b", req.b, "Dual parameter b")->default_val(0.0);
  du->add_option("--moments", moments, "Number of dual moments for periodic input")->default_val(kDefaultDualMoments);
  add_tol(du, "Quadrature consistency tolerance (default 1e-9)");

  auto* de = app.add_subcommand("direct-eval", "Spectral density or matrizant entries on an x grid (CSV)");
  add_io(de);
  de->add_option("--grid", grid, "x grid start:stop:count")->default_val(kDefaultAxisGrid);
  de->add_option("--chain-time", req.chain_time, "Chain time t")->default_val(20.0);
  de->add_option("--steps", req.steps, "Minimum solver steps for measure input")->default_val(8);
  de->add_option("--gauge-k", req.gauge_k, "Gauge parameter k for measure input")->default_val(0.0);
  de->add_flag("--matrizant", req.matrizant, "Emit A, B, C, D instead of the density");
  de->add_flag("--rescale", req.rescale, "Use the final-block invariant form instead of |E|^2");

  auto* ve = app.add_subcommand("verify", "Round-trip moment residuals (JSON)");
  add_io(ve);
  ve->add_option("--hamiltonian", req.hamiltonian, "Hamiltonian CSV to verify instead of solving");
  ve->add_option("--chain-time", req.chain_time, "Chain time T")->default_val(20.0);
  ve->add_option("--moments", moments, "Highest moment index K")->default_val(3);
  ve->add_option("--periods", req.periods, "Window half-width in multiples of pi")->default_val(12);
  ve->add_option("--gauge-k", req.gauge_k, "Gauge parameter k")->default_val(0.0);
  add_tol(ve, "Residual tolerance (default 5e-2)");

  auto* oc = app.add_subcommand("opuc-check", "Toeplitz h_n against |phi_n(1)|^2 (JSON)");
  add_io(oc);
  oc->add_option("--steps", req.steps, "Number of h values")->default_val(8);
  add_tol(oc, "Agreement tolerance (default 1e-8)");

  auto* pw = app.add_subcommand("diagnose-pw", "PW-sampling diagnostic on a window (JSON)");
  add_io(pw);
  pw->add_option("--window", req.window, "Window LO,HI")->default_val("0,100");
  pw->add_option("--pw-t", req.pw_t, "Capacity density t")->default_val(1.0);
  pw->add_option("--pw-L", req.pw_L, "Interval length L")->default_val(10.0);
  pw->add_option("--pw-delta", req.pw_delta, "Massive-interval threshold delta")->default_val(0.4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    exit_code = app.exit(e, out, err);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    exit_code = app.exit(e, out, err);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    exit_code = ValidationError;
    return std::nullopt;
  }

  const std::pair<CLI::App*, Subcommand> table[] = {
      {sp, Subcommand::SolvePeriodic}, {sa, Subcommand::SolveAtomic}, {du, Subcommand::Dual},
      {de, Subcommand::DirectEval},    {ve, Subcommand::Verify},      {oc, Subcommand::OpucCheck},
      {pw, Subcommand::DiagnosePw}};
  for (const auto& [sub, kind] : table) {
    if (!sub->parsed()) continue;
    req.subcommand = kind;
    if (const auto* o = sub->get_option_no_throw("--tol"); o != nullptr && o->count() > 0) req.tol = tol;
    if (sub->get_option_no_throw("--grid") != nullptr) req.grid = grid;
    if (sub->get_option_no_throw("--moments") != nullptr) req.moments = moments;
  }
  exit_code = Ok;
  return req;
}

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  try {
    switch (request.subcommand) {
      case Subcommand::SolvePeriodic:
        emit(request, do_solve_periodic(request), out);
        return Ok;
      case Subcommand::SolveAtomic:
        emit(request, do_solve_atomic(request), out);
        return Ok;
      case Subcommand::Dual:
        emit(request, do_dual(request), out);
        return Ok;
      case Subcommand::DirectEval:
        emit(request, do_direct_eval(request), out);
        return Ok;
      case Subcommand::Verify: {
        const VerifyOutcome v = do_verify(request);
        emit(request, v.report, out);
        if (!v.pass) {
          err << "consistency: max residual " << format_double(v.max_residual) << " exceeds tolerance "
              << format_double(v.tol) << "\n";
          return NumericalError;
        }
        return Ok;
      }
      case Subcommand::OpucCheck: {
        const OpucOutcome o = do_opuc_check(request);
        emit(request, o.report, out);
        if (!o.pass) {
          err << "consistency: Toeplitz and OPUC h differ by " << format_double(o.max_diff) << " (tolerance "
              << format_double(o.tol) << ")\n";
          return NumericalError;
        }
        return Ok;
      }
      case Subcommand::DiagnosePw:
        emit(request, do_diagnose_pw(request), out);
        return Ok;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.kind()) ? ValidationError : NumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return NumericalError;
  }
  return Ok;
}

}  // namespace canonsys::cli
