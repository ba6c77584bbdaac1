#include "machinlike/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "machinlike/formula.hpp"
#include "machinlike/pi_engine.hpp"
#include "machinlike/radical.hpp"
#include "machinlike/trig.hpp"
#include "machinlike/u2.hpp"

namespace machinlike::cli {

namespace {

using nlohmann::json;

constexpr long kValidationPrecision = 100;
constexpr std::size_t kInlineFractionChars = 200;

int require_k(const RunConfig& c) {
  if (!c.k) throw UsageError(c.command + " needs --k");
  if (*c.k < 2) throw UsageError("--k must be >= 2, got " + std::to_string(*c.k));
  return *c.k;
}

void check_common(const RunConfig& c) {
  if (c.precision < 20) throw UsageError("--precision must be >= 20");
  if (c.terms && *c.terms < 1) throw UsageError("--terms must be >= 1");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

CoefficientMode mode_of(const RunConfig& c) {
  return c.exact_coeffs ? CoefficientMode::exact : CoefficientMode::floating;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const int k = require_k(c);
  if (k > kDeskScaleMaxK && !c.allow_huge)
    throw UsageError("k=" + std::to_string(k) + " exceeds " + std::to_string(kDeskScaleMaxK) +
                     "; pass --allow-huge to continue");
  if (k > kMaxLadderK) throw UsageError("k must be <= " + std::to_string(kMaxLadderK));
  const TwoTermFormula f = generate_two_term(k);
  if (!c.out_path.empty()) write_fraction_file(c.out_path, f.u2);

  const MachinFormula mf = to_machin_formula(f);
  const MeasureReport measure = lehmer_measure(mf);
  const ValidationResult validation = validate_formula(mf, kValidationPrecision);

  json j;
  j["k"] = k;
  j["u1"] = f.u1.to_string();
  if (f.u2.numerator().decimal_digits() + f.u2.denominator().decimal_digits() + 2 <= kInlineFractionChars)
    j["u2"] = f.u2.to_string();
  j["u2_scientific"] = BigFloat::from_rational(f.u2, 30).to_scientific(21);
  j["numerator_digits"] = f.u2.numerator().decimal_digits();
  j["denominator_digits"] = f.u2.denominator().decimal_digits();
  j["e"] = std::round(measure.value() * 1e6) / 1e6;
  j["valid"] = validation.valid;
  j["validation_precision"] = kValidationPrecision;
  j["agreement_digits"] = validation.agreement_digits;
  if (!c.out_path.empty()) j["u2_file"] = c.out_path;
  out << j.dump(2) << '\n';
  if (!validation.valid) throw VerificationError("generated formula failed validation at 100 digits");
  return kExitOk;
}

int cmd_compute_pi(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int terms = c.terms.value_or(25);
  BigFloat pi;
  std::string source;
  if (!c.fixture.empty() || !c.formula_path.empty()) {
    const MachinFormula f = !c.fixture.empty() ? fixture(c.fixture)
                                               : parse_formula(read_text(c.formula_path), c.formula_path);
    const long working = c.precision + guard_digits() + 4;
    BigFloat sum(0, working);
    for (const MachinTerm& t : f.terms) {
      const auto* beta = std::get_if<BigRational>(&t.cotangent);
      if (beta == nullptr) throw DomainError("formula term has no exact cotangent");
      sum += arctan_fast(beta->reciprocal(), terms, working, mode_of(c)) * t.coefficient;
    }
    pi = (sum * BigInt(4)).with_precision(c.precision);
    source = f.id;
  } else {
    const int k = require_k(c);
    if (k > kMaxLadderK) throw UsageError("k must be <= " + std::to_string(kMaxLadderK));
    const BigInt u1 = u1_of_k(k);
    BigRational u2;
    if (!c.u2_path.empty()) {
      u2 = read_fraction_file(c.u2_path);
    } else {
      if (k > kDeskScaleMaxK && !c.allow_huge)
        throw UsageError("k=" + std::to_string(k) + " needs --u2 FILE or --allow-huge");
      u2 = u2_of(BigRational(u1), k);
    }
    pi = pi_two_term(k, BigRational(u1), u2, terms, c.precision, mode_of(c));
    source = "two-term-k" + std::to_string(k);
  }
  const long agreement = coinciding_digits(reference_pi(c.precision + guard_digits()), pi);
  const std::string digits = pi.to_fixed(c.precision) + "\n";
  json summary;
  summary["source"] = source;
  summary["terms"] = terms;
  summary["precision"] = c.precision;
  summary["coinciding_digits"] = agreement;
  if (c.out_path.empty()) {
    out << digits;
    err << summary.dump() << '\n';
  } else {
    write_text(c.out_path, digits);
    out << summary.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_measure(const RunConfig& c, std::ostream& out) {
  MachinFormula f;
  if (!c.fixture.empty()) f = fixture(c.fixture);
  else if (!c.formula_path.empty()) f = parse_formula(read_text(c.formula_path), c.formula_path);
  else throw UsageError("measure needs --fixture NAME or --formula PATH");
  out << lehmer_measure(f).to_json() << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const int k = require_k(c);
  if (k > kDeskScaleMaxK && !c.allow_huge) throw UsageError("verify beyond k=20 needs --allow-huge");
  const BigRational u1(u1_of_k(k));
  const TrigCheckResult r = trig_check(u1, k, c.precision);

  bool every_step_on_circle = true;
  iterate_states(u1, k, [&](const ComplexRationalState& s) {
    if (!on_unit_circle(s)) every_step_on_circle = false;
  });
  const bool shared_denominator = u2_shared_denominator(u1.numerator(), k) == r.u2_iterative;
  std::optional<bool> oracle;
  if (k <= kDirectOracleMaxK) oracle = u2_direct_oracle(u1, k) == r.u2_iterative;

  const long needed = c.precision - k - 10;
  json checks;
  checks["trig_agreement"] = r.agreement_digits >= needed;
  checks["sin_cos_match"] = r.sin_cos_digits >= needed;
  checks["assembly"] = r.assembly_digits >= c.precision - 10;
  checks["unit_circle_every_step"] = every_step_on_circle;
  checks["signs_match"] = r.signs_match;
  checks["shared_denominator"] = shared_denominator;
  if (oracle) checks["direct_oracle"] = *oracle;
  bool pass = true;
  for (const auto& [name, value] : checks.items()) pass = pass && value.get<bool>();

  json j = json::parse(r.to_json());
  j["required_digits"] = needed;
  j["checks"] = checks;
  j["status"] = pass ? "pass" : "fail";
  out << j.dump(2) << '\n';
  if (!pass) throw VerificationError("verification failed for k=" + std::to_string(k));
  return kExitOk;
}

int cmd_error_curve(const RunConfig& c, std::ostream& out) {
  if (c.series != "fast" && c.series != "euler") throw UsageError("--series must be fast or euler");
  if (c.samples < 3) throw UsageError("--samples must be >= 3");
  const std::vector<ErrorCurvePoint> points =
      error_curve(c.series, c.terms.value_or(10), c.x_min, c.x_max, c.samples, c.precision);
  std::ostringstream csv;
  csv << "x,error\n";
  for (const ErrorCurvePoint& p : points)
    csv << BigFloat::from_rational(p.x, 30).to_scientific(6) << ',' << p.error.to_scientific(6) << '\n';
  if (c.out_path.empty()) out << csv.str();
  else write_text(c.out_path, csv.str());
  return kExitOk;
}

int cmd_measure_sweep(const RunConfig& c, std::ostream& out) {
  if (c.k_max < 2 || c.k_max > kMaxLadderK)
    throw UsageError("--k-max must lie in [2, " + std::to_string(kMaxLadderK) + "]");
  if (c.exact_max > kDeskScaleMaxK && !c.allow_huge) throw UsageError("--exact-max above 20 needs --allow-huge");
  std::ostringstream csv;
  csv << "k,u1,e,path\n";
  char buf[32];
  for (const SweepRow& row : measure_sweep(c.k_max, c.exact_max)) {
    std::snprintf(buf, sizeof buf, "%.6f", row.e);
    csv << row.k << ',' << row.u1 << ',' << buf << ',' << row.path << '\n';
  }
  if (c.out_path.empty()) out << csv.str();
  else write_text(c.out_path, csv.str());
  return kExitOk;
}

}  // namespace

std::vector<SweepRow> measure_sweep(int k_max, int exact_max) {
  std::vector<SweepRow> rows;
  for (int k = 2; k <= k_max; ++k) {
    const BigInt u1 = u1_of_k(k);
    MachinFormula f;
    f.id = "two-term-k" + std::to_string(k);
    f.terms.push_back({pow(BigInt(2), static_cast<unsigned long>(k - 1)), BigRational(u1)});
    std::string path;
    if (k <= exact_max) {
      f.terms.push_back({BigInt(1), u2_of(BigRational(u1), k)});
      path = "exact";
    } else {
      const BigFloat u2 = u2_trig(BigRational(u1), k, 40);
      f.terms.push_back({BigInt(1), CotangentMagnitude::from_scientific(u2.to_scientific(35))});
      path = "trig";
    }
    rows.push_back({k, u1.to_string(), lehmer_measure(f).value(), path});
  }
  return rows;
}

std::vector<ErrorCurvePoint> error_curve(const std::string& series, int terms, const std::string& x_min,
                                         const std::string& x_max, int samples, long precision) {
  if (samples < 3) throw DomainError("error curve needs at least 3 samples");
  const BigRational lo = BigRational::parse_decimal(x_min);
  const BigRational hi = BigRational::parse_decimal(x_max);
  if (hi < lo) throw DomainError("x_max below x_min");
  const BigRational step = (hi - lo) / BigRational(samples - 1);
  std::vector<ErrorCurvePoint> points;
  for (int i = 0; i < samples; ++i) {
    const BigRational x = lo + step * BigRational(i);
    if (x.is_zero()) {
      points.push_back({x, BigFloat(0, precision)});
      continue;
    }
    // The truncation error scales like x^(2 terms) relative to arctan(x).
    const long small = std::max(0L, -BigFloat::from_rational(x, 20).decimal_exponent());
    const long w = precision + 2L * terms * small;
    const BigFloat truth = arctan_maclaurin(x, w);
    const BigFloat approx = series == "euler" ? arctan_euler(x, terms, w) : arctan_fast(x, terms, w);
    points.push_back({x, (truth - approx).abs()});
  }
  return points;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Two-term Machin-like formulas for pi", "machinlike"};
  app.add_option("command", c.command, "generate|compute-pi|measure|verify|error-curve|measure-sweep")
      ->required()
      ->check(CLI::IsMember({"generate", "compute-pi", "measure", "verify", "error-curve", "measure-sweep"}));
  app.add_option("--k", c.k, "ladder index k");
  app.add_option("--terms", c.terms, "series truncation order M");
  app.add_option("--precision", c.precision, "decimal digits");
  app.add_option("--out", c.out_path, "output path");
  app.add_option("--formula", c.formula_path, "formula file");
  app.add_option("--fixture", c.fixture, "named formula");
  app.add_option("--u2", c.u2_path, "u2 fraction file");
  app.add_option("--series", c.series, "fast|euler");
  app.add_flag("--allow-huge", c.allow_huge, "permit k above the desk-scale cap");
  app.add_flag("--exact-coeffs", c.exact_coeffs, "exact rational series coefficients");
  app.add_option("--x-min", c.x_min, "error-curve lower bound");
  app.add_option("--x-max", c.x_max, "error-curve upper bound");
  app.add_option("--samples", c.samples, "error-curve sample count");
  app.add_option("--k-max", c.k_max, "measure-sweep upper k");
  app.add_option("--exact-max", c.exact_max, "measure-sweep largest k with exact u2");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (!c.fixture.empty() && !c.formula_path.empty()) throw UsageError("--formula and --fixture are exclusive");
  if (c.terms && *c.terms < 1) throw UsageError("--terms must be >= 1");
  if (c.precision < 1) throw UsageError("--precision must be >= 1");
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_common(config);
    if (config.command == "generate") return cmd_generate(config, out);
    if (config.command == "compute-pi") return cmd_compute_pi(config, out, err);
    if (config.command == "measure") return cmd_measure(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    if (config.command == "error-curve") return cmd_error_curve(config, out);
    if (config.command == "measure-sweep") return cmd_measure_sweep(config, out);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace machinlike::cli
