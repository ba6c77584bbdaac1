#pragma once

// Command-line front end. Every command is a function of its RunConfig and
// writes only to the given streams and the configured output path.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "machinlike/bigfloat.hpp"
#include "machinlike/bigint.hpp"
#include "machinlike/errors.hpp"

namespace machinlike::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitDomain = 4,
  kExitVerification = 5,
  kExitParse = 6,
  kExitPrecision = 7,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::optional<int> k;
  long precision = 100;
  std::optional<int> terms;
  std::string out_path;
  std::string formula_path;
  std::string fixture;
  std::string u2_path;
  std::string series = "fast";
  bool allow_huge = false;
  bool exact_coeffs = false;
  std::string x_min = "-1e-6";
  std::string x_max = "1e-6";
  int samples = 101;
  int k_max = 27;
  int exact_max = 20;
};

// Parses argv-style arguments (without the program name). Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

// Runs one command; exceptions are reported on `err` and mapped to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run, reporting usage errors.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SweepRow {
  int k = 0;
  std::string u1;
  double e = 0.0;
  std::string path;  // "exact" or "trig"
};

// Lehmer measure of the generated two-term formula for k = 2..k_max; exact u2
// up to exact_max, the trigonometric magnitude beyond.
std::vector<SweepRow> measure_sweep(int k_max, int exact_max);

struct ErrorCurvePoint {
  BigRational x;
  // |arctan(x) - series(x, terms)|
  BigFloat error;
};

std::vector<ErrorCurvePoint> error_curve(const std::string& series, int terms, const std::string& x_min,
                                         const std::string& x_max, int samples, long precision);

}  // namespace machinlike::cli
