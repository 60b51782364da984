// Command-line front end.
//
// Exit codes: 0 success / all verdicts pass, 1 runtime or verdict failure,
// 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mopuc/mopuc.hpp"

namespace {

using mopuc::Complex;
using mopuc::ComplexMatrix;
using mopuc::Json;

struct OutputSink {
  std::string path;  // empty = stdout

  void write_text(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }

  void write_json(const Json& j) const { write_text(j.dump(2)); }
};

std::string csv_of_matrices(const std::vector<ComplexMatrix>& ms) {
  std::ostringstream os;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) os << "\n";
    mopuc::write_csv(os, ms[i]);
  }
  return os.str();
}

Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  Json j;
  f >> j;
  return j;
}

int cmd_sample(const std::string& kind, Eigen::Index dim, Eigen::Index p,
               Eigen::Index count, std::uint64_t seed, const std::string& format,
               const OutputSink& out) {
  std::vector<ComplexMatrix> samples;
  samples.reserve(static_cast<size_t>(count));
  for (Eigen::Index t = 0; t < count; ++t) {
    mopuc::RngStream rng(seed, static_cast<std::uint64_t>(t));
    if (kind == "haar")
      samples.push_back(mopuc::sample_haar(dim, rng));
    else if (kind == "ginibre")
      samples.push_back(mopuc::sample_ginibre(dim, dim, rng));
    else if (kind == "corner")
      samples.push_back(mopuc::sample_corner(dim, p, rng));
    else
      throw CLI::ValidationError("--kind", "unknown kind: " + kind);
  }
  if (format == "csv") {
    out.write_text(csv_of_matrices(samples));
    return 0;
  }
  Json js = Json::array();
  for (const auto& m : samples) js.push_back(mopuc::to_json(m));
  out.write_json(Json{{"kind", kind},
                      {"dim", dim},
                      {"p", p},
                      {"count", count},
                      {"seed", seed},
                      {"samples", std::move(js)}});
  return 0;
}

int cmd_measure(Eigen::Index dim, Eigen::Index p, Eigen::Index count,
                std::uint64_t seed, const OutputSink& out) {
  Json js = Json::array();
  for (Eigen::Index t = 0; t < count; ++t) {
    mopuc::RngStream rng(seed, static_cast<std::uint64_t>(t));
    const ComplexMatrix u = mopuc::sample_haar(dim, rng);
    js.push_back(mopuc::to_json(mopuc::spectral_measure(u, p)));
  }
  if (count == 1)
    out.write_json(js.front());
  else
    out.write_json(Json{{"count", count}, {"measures", std::move(js)}});
  return 0;
}

int cmd_verblunsky(const std::string& method, const std::string& in,
                   Eigen::Index dim, Eigen::Index p, Eigen::Index count,
                   std::uint64_t seed, const OutputSink& out) {
  mopuc::VerblunskySeq seq;
  if (!in.empty()) {
    if (method != "moments")
      throw CLI::ValidationError(
          "--in", "measure input requires --method moments (deflation needs the unitary)");
    const mopuc::AtomicMatrixMeasure mu = mopuc::atomic_measure_from_json(load_json_file(in));
    std::vector<ComplexMatrix> moms;
    for (Eigen::Index l = 0; l <= count; ++l) moms.push_back(mopuc::moment(mu, l));
    moms[0] = ComplexMatrix::Identity(mu.p, mu.p);
    seq = mopuc::verblunsky_from_moments(moms, count);
  } else {
    mopuc::RngStream rng(seed);
    const ComplexMatrix u = mopuc::sample_haar(dim, rng);
    if (method == "deflation") {
      seq = mopuc::verblunsky_by_deflation(u, p, count);
    } else if (method == "moments") {
      const mopuc::AtomicMatrixMeasure mu = mopuc::spectral_measure(u, p);
      std::vector<ComplexMatrix> moms;
      for (Eigen::Index l = 0; l <= count; ++l) moms.push_back(mopuc::moment(mu, l));
      moms[0] = ComplexMatrix::Identity(p, p);
      seq = mopuc::verblunsky_from_moments(moms, count);
    } else {
      throw CLI::ValidationError("--method", "unknown method: " + method);
    }
  }
  Json j = mopuc::to_json(seq);
  j["method"] = method;
  out.write_json(j);
  return 0;
}

int cmd_ggt(const std::string& in, Eigen::Index p, Eigen::Index count,
            Eigen::Index blocks, double norm_bound, std::uint64_t seed,
            const std::string& format, const OutputSink& out) {
  mopuc::VerblunskySeq seq;
  if (!in.empty()) {
    seq = mopuc::verblunsky_from_json(load_json_file(in));
  } else {
    mopuc::RngStream rng(seed);
    std::vector<ComplexMatrix> coeffs;
    for (Eigen::Index j = 0; j < count; ++j)
      coeffs.push_back(mopuc::sample_ball_contraction(p, rng, norm_bound));
    seq = mopuc::VerblunskySeq::from_coefficients(p, std::move(coeffs));
  }
  if (blocks == 0) blocks = seq.size() + 1;
  const ComplexMatrix g = mopuc::ggt(seq, blocks);
  if (format == "csv") {
    out.write_text(csv_of_matrices({g}));
    return 0;
  }
  out.write_json(Json{{"p", seq.p},
                      {"blocks", blocks},
                      {"coeffs", mopuc::to_json(seq)["coeffs"]},
                      {"matrix", mopuc::to_json(g)}});
  return 0;
}

int cmd_rate(const std::string& kind, const std::string& in, double value,
             Eigen::Index p, Eigen::Index count, double norm_bound,
             std::uint64_t seed, const OutputSink& out) {
  mopuc::RateValue r;
  Json input_echo;
  if (kind == "ball") {
    ComplexMatrix v;
    if (!in.empty()) {
      v = mopuc::matrix_from_json(load_json_file(in));
    } else {
      v = ComplexMatrix::Constant(1, 1, Complex(value, 0.0));
    }
    r = mopuc::rate_ball(v);
    input_echo = mopuc::to_json(v);
  } else if (kind == "seq") {
    mopuc::VerblunskySeq seq;
    if (!in.empty()) {
      seq = mopuc::verblunsky_from_json(load_json_file(in));
    } else {
      mopuc::RngStream rng(seed);
      std::vector<ComplexMatrix> coeffs;
      for (Eigen::Index j = 0; j < count; ++j)
        coeffs.push_back(mopuc::sample_ball_contraction(p, rng, norm_bound));
      seq = mopuc::VerblunskySeq::from_coefficients(p, std::move(coeffs));
    }
    r = mopuc::rate_seq(seq);
    input_echo = mopuc::to_json(seq);
  } else if (kind == "ac") {
    if (in.empty())
      throw CLI::ValidationError("--in", "rate --kind ac requires a grid measure file");
    const mopuc::GridDensityMeasure mu =
        mopuc::grid_measure_from_json(load_json_file(in));
    r = mopuc::rate_ac_measure(mu);
    input_echo = Json{{"grid_size", mu.grid_size()}, {"p", mu.p}};
  } else {
    throw CLI::ValidationError("--kind", "unknown kind: " + kind);
  }
  Json j = mopuc::to_json(r);
  j["kind"] = kind;
  j["input"] = std::move(input_echo);
  out.write_json(j);
  return 0;
}

int cmd_verify(const std::string& experiment, const std::string& config_path,
               std::uint64_t seed, Eigen::Index samples, Eigen::Index dim,
               Eigen::Index p, Eigen::Index trials, bool quiet,
               const OutputSink& out) {
  std::vector<std::string> names;
  if (experiment == "all")
    names = mopuc::experiment_names();
  else
    names.push_back(experiment);

  Json reports = Json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    mopuc::ExperimentConfig cfg;
    if (!config_path.empty())
      cfg = mopuc::experiment_config_from_json(load_json_file(config_path));
    cfg.experiment = name;
    if (seed != 0) cfg.seed = seed;
    if (samples != 0) cfg.samples = samples;
    if (dim != 0) cfg.dim = dim;
    if (p != 0) cfg.p = p;
    if (trials != 0) cfg.trials = trials;
    const mopuc::ExperimentReport rep = mopuc::run_experiment(cfg);
    all_pass = all_pass && rep.pass;
    if (!quiet)
      std::cerr << (rep.pass ? "[pass] " : "[FAIL] ") << name << " ("
                << rep.tests.size() << " tests, " << rep.wall_ms << " ms)\n";
    reports.push_back(rep.to_json(true));
  }
  if (reports.size() == 1)
    out.write_json(reports.front());
  else
    out.write_json(Json{{"reports", std::move(reports)}, {"pass", all_pass}});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Matrix orthogonal polynomials on the unit circle: sampling, spectral "
      "measures, coefficient extraction, rate functions, and Monte Carlo "
      "verification."};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", seed, "RNG seed (default 1)")->capture_default_str();
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  // sample
  auto* sample = app.add_subcommand("sample", "draw random matrices");
  std::string sample_kind = "haar";
  Eigen::Index sample_dim = 8, sample_p = 1, sample_count = 1;
  sample->add_option("--kind", sample_kind, "haar | ginibre | corner")
      ->check(CLI::IsMember({"haar", "ginibre", "corner"}));
  sample->add_option("--dim", sample_dim, "matrix dimension")->check(CLI::PositiveNumber);
  sample->add_option("-p,--p", sample_p, "corner size (corner kind)")
      ->check(CLI::PositiveNumber);
  sample->add_option("--count", sample_count, "number of samples")
      ->check(CLI::PositiveNumber);

  // measure
  auto* measure = app.add_subcommand(
      "measure", "spectral measure of a sampled Haar unitary");
  Eigen::Index measure_dim = 8, measure_p = 1, measure_count = 1;
  measure->add_option("--dim", measure_dim, "unitary dimension")->check(CLI::PositiveNumber);
  measure->add_option("-p,--p", measure_p, "measure dimension")->check(CLI::PositiveNumber);
  measure->add_option("--count", measure_count, "number of measures")
      ->check(CLI::PositiveNumber);

  // verblunsky
  auto* verb = app.add_subcommand(
      "verblunsky", "extract Verblunsky coefficients (moments or deflation route)");
  std::string verb_method = "deflation";
  std::string verb_in;
  Eigen::Index verb_dim = 16, verb_p = 2, verb_count = 4;
  verb->add_option("--method", verb_method, "moments | deflation")
      ->check(CLI::IsMember({"moments", "deflation"}));
  verb->add_option("--in", verb_in, "atomic measure JSON file (moments route)");
  verb->add_option("--dim", verb_dim, "unitary dimension")->check(CLI::PositiveNumber);
  verb->add_option("-p,--p", verb_p, "block size")->check(CLI::PositiveNumber);
  verb->add_option("--count", verb_count, "number of coefficients")
      ->check(CLI::PositiveNumber);

  // ggt
  auto* ggt_cmd = app.add_subcommand("ggt", "GGT matrix section of a coefficient sequence");
  std::string ggt_in;
  Eigen::Index ggt_p = 2, ggt_count = 3, ggt_blocks = 0;
  double ggt_norm = 0.7;
  ggt_cmd->add_option("--in", ggt_in, "coefficient sequence JSON file");
  ggt_cmd->add_option("-p,--p", ggt_p, "block size (random sequence)")
      ->check(CLI::PositiveNumber);
  ggt_cmd->add_option("--count", ggt_count, "number of random coefficients")
      ->check(CLI::PositiveNumber);
  ggt_cmd->add_option("--blocks", ggt_blocks, "section size in blocks (default count+1)");
  ggt_cmd->add_option("--norm-bound", ggt_norm, "norm bound for random coefficients");

  // rate
  auto* rate = app.add_subcommand("rate", "large-deviation rate functions");
  std::string rate_kind = "ball";
  std::string rate_in;
  double rate_value = 0.5;
  Eigen::Index rate_p = 2, rate_count = 3;
  double rate_norm = 0.7;
  rate->add_option("--kind", rate_kind, "ball | seq | ac")
      ->check(CLI::IsMember({"ball", "seq", "ac"}));
  rate->add_option("--in", rate_in, "input JSON file (matrix, sequence, or grid measure)");
  rate->add_option("--value", rate_value, "scalar ball point (ball kind, no --in)");
  rate->add_option("-p,--p", rate_p, "block size (random sequence)")
      ->check(CLI::PositiveNumber);
  rate->add_option("--count", rate_count, "number of random coefficients")
      ->check(CLI::PositiveNumber);
  rate->add_option("--norm-bound", rate_norm, "norm bound for random coefficients");

  // verify
  auto* verify = app.add_subcommand("verify", "run a Monte Carlo verification experiment");
  std::string verify_experiment;
  std::string verify_config;
  Eigen::Index verify_samples = 0, verify_dim = 0, verify_p = 0, verify_trials = 0;
  bool verify_quiet = false;
  std::vector<std::string> allowed = mopuc::experiment_names();
  allowed.push_back("all");
  verify->add_option("experiment", verify_experiment, "experiment name or 'all'")
      ->required()
      ->check(CLI::IsMember(allowed));
  verify->add_option("--config", verify_config, "experiment config JSON file");
  verify->add_option("--samples", verify_samples, "Monte Carlo sample count");
  verify->add_option("--dim", verify_dim, "unitary dimension");
  verify->add_option("-p,--p", verify_p, "block size");
  verify->add_option("--trials", verify_trials, "trial count");
  verify->add_flag("--quiet", verify_quiet, "suppress per-experiment progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const OutputSink out{out_path};
  try {
    if (sample->parsed())
      return cmd_sample(sample_kind, sample_dim, sample_p, sample_count, seed,
                        format, out);
    if (measure->parsed())
      return cmd_measure(measure_dim, measure_p, measure_count, seed, out);
    if (verb->parsed())
      return cmd_verblunsky(verb_method, verb_in, verb_dim, verb_p, verb_count,
                            seed, out);
    if (ggt_cmd->parsed())
      return cmd_ggt(ggt_in, ggt_p, ggt_count, ggt_blocks, ggt_norm, seed, format,
                     out);
    if (rate->parsed())
      return cmd_rate(rate_kind, rate_in, rate_value, rate_p, rate_count,
                      rate_norm, seed, out);
    if (verify->parsed())
      return cmd_verify(verify_experiment, verify_config,
                        app.count("--seed") ? seed : 0, verify_samples, verify_dim,
                        verify_p, verify_trials, verify_quiet, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
