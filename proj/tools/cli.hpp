#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace canonsys::cli {

enum class Subcommand { SolvePeriodic, SolveAtomic, Dual, DirectEval, Verify, OpucCheck, DiagnosePw };

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  std::vector<double> points() const;
};

GridSpec parse_grid(const std::string& spec);
std::pair<double, double> parse_window(const std::string& spec);

struct CommandRequest {
  Subcommand subcommand = Subcommand::SolvePeriodic;
  std::string input;
  std::string output = "-";
  std::string hamiltonian;  // verify: optional Hamiltonian CSV instead of solving
  int steps = 8;
  std::optional<std::string> grid;
  double b = 0.0;
  double gauge_k = 0.0;
  std::optional<double> tol;
  std::string window = "0,100";
  bool crosscheck = false;
  double chain_time = 20.0;
  int moments = 3;
  int periods = 12;
  double pw_t = 1.0;
  double pw_L = 10.0;
  double pw_delta = 0.4;
  bool matrizant = false;
  bool rescale = false;
};

enum ExitCode : int { Ok = 0, ValidationError = 2, NumericalError = 3 };

/// Parses argv; on --help or errors writes to out/err and returns the exit code.
std::optional<CommandRequest> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                 std::ostream& err, int& exit_code);

/// Executes the request, writing the result to request.output ("-" = out).
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace canonsys::cli
