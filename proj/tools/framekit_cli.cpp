// framekit command line: construct | verify | scale | diagnose | random | canon.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 precondition violation, 3 I/O or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "framekit/framekit.hpp"

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitParse = 3;

double default_tolerance() {
  if (const char* env = std::getenv("FRAMEKIT_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && *end == '\0' && value > 0.0) return value;
    std::cerr << "warning: ignoring invalid FRAMEKIT_TOL='" << env << "'\n";
  }
  return framekit::kDefaultTol;
}

std::optional<framekit::FrameFileFormat> format_from_flag(const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  if (flag == "structured") return framekit::FrameFileFormat::Structured;
  if (flag == "dsv") return framekit::FrameFileFormat::Dsv;
  throw framekit::ParseError("unknown format '" + flag + "' (use structured or dsv)");
}

std::vector<double> parse_seed_entries(const std::string& text) {
  std::vector<double> entries;
  std::string token;
  const auto flush = [&]() {
    if (token.empty()) return;
    entries.push_back(framekit::detail::parse_real(token));
    token.clear();
  };
  for (const char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return entries;
}

void emit_frame(const framekit::FrameFile& file, const std::string& out_path,
                std::optional<framekit::FrameFileFormat> format) {
  if (out_path.empty()) {
    std::cout << framekit::serialize_frame_file(
        file, format.value_or(framekit::FrameFileFormat::Structured));
  } else {
    framekit::write_frame_file(out_path, file, format);
  }
}

// Human-readable summaries go to stderr when the frame itself occupies stdout.
std::ostream& summary_stream(const std::string& out_path) {
  return out_path.empty() ? std::cerr : std::cout;
}

int cmd_construct(const std::string& seed_text, const std::string& out_path,
                  const std::string& format_flag, double /*tol*/) {
  const auto entries = parse_seed_entries(seed_text);
  if (entries.size() < 2) {
    std::cerr << "error: seed must have at least 2 entries\n";
    return kExitParse;
  }
  const framekit::SeedVector seed(entries);
  const framekit::TriangularParsevalFrame result = framekit::construct(seed);

  if (seed.norm() <= framekit::kZeroColumnTol) {
    std::cerr << "warning: degenerate seed (zero vector); the frame contains a zero column\n";
  }

  std::ostream& out = summary_stream(out_path);
  const Eigen::VectorXd diag = result.diagonal();
  out << "diagonal:";
  for (int j = 0; j < diag.size(); ++j) out << ' ' << diag[j];
  out << "\ndet(v_1..v_n): " << diag.prod()
      << " (expected sqrt(1-||w||^2) = " << std::sqrt(1.0 - seed.norm() * seed.norm()) << ")\n";
  const int n = result.frame.dim();
  const double residual = (framekit::frame_operator(result.frame) -
                           Eigen::MatrixXd::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff();
  out << "verification residual ||S - I||_max: " << residual << "\n";

  emit_frame(framekit::FrameFile::from_frame(result.frame), out_path,
             format_from_flag(format_flag));
  return 0;
}

int cmd_verify(const std::string& path, const std::string& format_flag, double tol) {
  const framekit::FrameMatrix frame =
      framekit::read_frame_file(path, format_from_flag(format_flag)).to_frame();
  const framekit::TightnessReport report = framekit::verify(frame, tol);
  std::cout << "A: " << report.lower_bound << "\nB: " << report.upper_bound
            << "\nis_tight: " << (report.is_tight ? "true" : "false")
            << "\nis_parseval: " << (report.is_parseval ? "true" : "false")
            << "\nframe operator residual ||S - A*I||_F: " << report.residual
            << "\ntrace check |sum ||v_j||^2 - n*A|: " << report.trace_residual << "\n";
  return report.is_parseval ? 0 : kExitNegative;
}

int cmd_scale(const std::string& path, const std::string& out_path,
              const std::string& format_flag, double tol, bool run_oracle) {
  const auto format = format_from_flag(format_flag);
  framekit::FrameMatrix frame = framekit::read_frame_file(path, format).to_frame();

  const Eigen::VectorXd norms = frame.column_norms();
  const double unit_dev = (norms - Eigen::VectorXd::Ones(norms.size())).cwiseAbs().maxCoeff();
  if (unit_dev > 1e-6) {
    std::cerr << "error: columns deviate from unit norm by " << unit_dev
              << " (limit 1e-6)\n";
    return kExitPrecondition;
  }
  if (unit_dev > 1e-10) {
    std::cerr << "warning: normalizing columns (max deviation " << unit_dev << ")\n";
    frame = framekit::normalize_columns(frame).first;
  }

  const framekit::ScalabilityVerdict verdict = framekit::decide_scalability(frame, tol);
  std::cout << "scalable: " << (verdict.scalable ? "true" : "false") << "\n";
  if (verdict.weights) {
    std::cout << "weights:";
    for (int j = 0; j < verdict.weights->count(); ++j) {
      std::cout << ' ' << (*verdict.weights)[j];
    }
    std::cout << "\n";
  }
  std::cout << "max identity residual: " << verdict.max_identity_residual
            << "\nratio spread: " << verdict.ratio_spread << "\n";
  if (!verdict.scalable) {
    std::cout << "reason: " << framekit::to_string(verdict.reason) << "\n";
  }

  if (run_oracle) {
    const auto oracle = framekit::oracle_scale(frame);
    std::cout << "oracle scalable: " << (oracle ? "true" : "false") << "\n";
    if (oracle && verdict.weights) {
      const double diff =
          (oracle->values() - verdict.weights->values()).cwiseAbs().maxCoeff();
      std::cout << "oracle max weight difference: " << diff << "\n";
    }
    std::cout << "oracle agreement: "
              << (oracle.has_value() == verdict.scalable ? "yes" : "NO") << "\n";
  }

  if (verdict.scalable && !out_path.empty()) {
    const framekit::FrameMatrix scaled =
        framekit::scale_columns(frame, verdict.weights->values());
    framekit::write_frame_file(out_path, framekit::FrameFile::from_frame(scaled), format);
  }
  return verdict.scalable ? 0 : kExitNegative;
}

int cmd_diagnose(const std::string& path, const std::string& format_flag, double tol) {
  const framekit::FrameMatrix frame =
      framekit::read_frame_file(path, format_from_flag(format_flag)).to_frame();
  const framekit::DiagnosticsReport report = framekit::audit(frame, tol);
  std::printf("n=%d N=%d A=%.12g B=%.12g tight=%s parseval=%s\n", report.n, report.N,
              report.tightness.lower_bound, report.tightness.upper_bound,
              report.tightness.is_tight ? "true" : "false",
              report.tightness.is_parseval ? "true" : "false");
  std::printf("%-26s %-14s %s\n", "check", "residual", "status");
  for (const auto& check : report.checks) {
    const char* status = check.status == framekit::CheckStatus::Passed  ? "pass"
                         : check.status == framekit::CheckStatus::Failed ? "FAIL"
                                                                         : "skip";
    if (check.status == framekit::CheckStatus::Skipped) {
      std::printf("%-26s %-14s %s (%s)\n", check.name.c_str(), "-", status,
                  check.note.c_str());
    } else {
      std::printf("%-26s %-14.6g %s\n", check.name.c_str(), check.max_residual, status);
    }
  }
  return report.all_passed() ? 0 : kExitNegative;
}

int cmd_random(int n, int N, std::uint64_t seed, const std::string& out_path,
               const std::string& format_flag) {
  const framekit::FrameMatrix frame = framekit::random_parseval(n, N, seed);
  framekit::FrameFile file = framekit::FrameFile::from_frame(frame);
  file.seed = seed;
  emit_frame(file, out_path, format_from_flag(format_flag));
  return 0;
}

int cmd_canon(const std::string& path, const std::string& out_path,
              const std::string& format_flag, double tol) {
  const auto format = format_from_flag(format_flag);
  const framekit::FrameMatrix frame = framekit::read_frame_file(path, format).to_frame();
  const framekit::CanonicalForm canonical = framekit::canonicalize(frame);

  std::ostream& out = summary_stream(out_path);
  const int n = canonical.frame.dim();
  out << "triangular diagonal:";
  for (int j = 0; j < n; ++j) out << ' ' << canonical.frame.columns()(j, j);
  const double rotation_dev =
      (canonical.rotation - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  out << "\nalready canonical: " << (rotation_dev <= tol ? "true" : "false") << "\n";

  emit_frame(framekit::FrameFile::from_frame(canonical.frame), out_path, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.precision(12);
  std::cerr.precision(12);

  CLI::App app{"Parseval (n+1)-frame toolkit: triangular construction, "
               "verification, scaling, and identity diagnostics"};
  app.require_subcommand(1);

  const double tol_default = default_tolerance();

  std::string seed_text, file_path, out_path, format_flag;
  double tol = tol_default;
  bool run_oracle = false;
  int rand_n = 2, rand_N = 3;
  std::uint64_t rand_seed = 0;

  auto* construct = app.add_subcommand("construct", "complete a seed vector to the "
                                       "unique triangular Parseval (n+1)-frame");
  construct->add_option("--seed", seed_text, "comma-separated seed entries")->required();
  construct->add_option("--out", out_path, "output frame file (stdout if omitted)");
  construct->add_option("--format", format_flag, "structured|dsv");
  construct->add_option("--tol", tol, "tolerance");

  auto* verify = app.add_subcommand("verify", "report frame bounds and the "
                                    "tight/Parseval verdicts");
  verify->add_option("file", file_path, "frame file")->required();
  verify->add_option("--format", format_flag, "structured|dsv");
  verify->add_option("--tol", tol, "tolerance");

  auto* scale = app.add_subcommand("scale", "decide scalability of a unit-norm "
                                   "(n+1)-frame and print the weights");
  scale->add_option("file", file_path, "frame file")->required();
  scale->add_option("--out", out_path, "write the scaled (Parseval) frame here");
  scale->add_option("--format", format_flag, "structured|dsv");
  scale->add_option("--tol", tol, "tolerance");
  scale->add_flag("--oracle", run_oracle, "also run the least-squares oracle");

  auto* diagnose = app.add_subcommand("diagnose", "run every applicable identity check");
  diagnose->add_option("file", file_path, "frame file")->required();
  diagnose->add_option("--format", format_flag, "structured|dsv");
  diagnose->add_option("--tol", tol, "tolerance");

  auto* random = app.add_subcommand("random", "generate a random Parseval frame");
  random->add_option("--n", rand_n, "ambient dimension")->required();
  random->add_option("--N", rand_N, "vector count")->required();
  random->add_option("--seed", rand_seed, "RNG seed");
  random->add_option("--out", out_path, "output frame file (stdout if omitted)");
  random->add_option("--format", format_flag, "structured|dsv");

  auto* canon = app.add_subcommand("canon", "rotate a frame to its canonical "
                                   "triangular form");
  canon->add_option("file", file_path, "frame file")->required();
  canon->add_option("--out", out_path, "output frame file (stdout if omitted)");
  canon->add_option("--format", format_flag, "structured|dsv");
  canon->add_option("--tol", tol, "tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (construct->parsed()) return cmd_construct(seed_text, out_path, format_flag, tol);
    if (verify->parsed()) return cmd_verify(file_path, format_flag, tol);
    if (scale->parsed()) return cmd_scale(file_path, out_path, format_flag, tol, run_oracle);
    if (diagnose->parsed()) return cmd_diagnose(file_path, format_flag, tol);
    if (random->parsed()) return cmd_random(rand_n, rand_N, rand_seed, out_path, format_flag);
    if (canon->parsed()) return cmd_canon(file_path, out_path, format_flag, tol);
  } catch (const framekit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const framekit::FrameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitParse;
}
