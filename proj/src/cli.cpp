// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pinfo/estimation.hpp"
#include "pinfo/imaging.hpp"
#include "pinfo/kac_sampler.hpp"
#include "pinfo/matrix_io.hpp"
#include "pinfo/oracle.hpp"

namespace pinfo {

namespace {

std::vector<double> split_doubles(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(token, &pos);
      while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
      if (pos != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadInput, std::string("cannot parse ") + what + ": " + token);
    }
  }
  if (values.empty()) {
    throw Error(ErrorCode::BadInput, std::string(what) + " list is empty");
  }
  return values;
}

DivergenceKind parse_kind(const std::string& name) {
  if (name == "fidelity") return DivergenceKind::Fidelity;
  if (name == "bures") return DivergenceKind::BuresSq;
  if (name == "chernoff") return DivergenceKind::ChernoffS;
  if (name == "chernoff-distance") return DivergenceKind::ChernoffDistance;
  if (name == "alpha") return DivergenceKind::AlphaDiv;
  if (name == "kl") return DivergenceKind::RelEntropy;
  throw CLI::ValidationError("--kind", "unknown divergence kind: " + name);
}

SweepKind parse_sweep_kind(const std::string& name) {
  if (name == "fidelity") return SweepKind::Fidelity;
  if (name == "chernoff") return SweepKind::Chernoff;
  if (name == "kl") return SweepKind::RelEntropy;
  if (name == "helstrom") return SweepKind::Helstrom;
  throw CLI::ValidationError("--kind", "unknown sweep kind: " + name);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::BadInput, "cannot open output file: " + path);
  }
  file << text;
}

struct SharedTols {
  double herm = Tolerances{}.herm;
  double psd = Tolerances{}.psd;
  double supp = Tolerances{}.supp;
  double s_opt = 1e-9;
};

void add_tol_flags(CLI::App* cmd, SharedTols& tols) {
  cmd->add_option("--tol-herm", tols.herm, "Hermiticity tolerance (relative)");
  cmd->add_option("--tol-psd", tols.psd, "Eigenvalue clipping tolerance (relative)");
  cmd->add_option("--tol-supp", tols.supp, "Support cutoff relative to the top eigenvalue");
  cmd->add_option("--tol-s", tols.s_opt, "Chernoff optimizer interval tolerance");
}

IntensityOperator load_intensity(const std::string& path, const SharedTols& tols) {
  nlohmann::json j = parse_json_file(path);
  if (j.is_object() && j.contains("N")) return read_intensity(j);
  return IntensityOperator(validate_psd(read_matrix(j), tols.herm, tols.psd));
}

int run_validate(const std::string& path, const SharedTols& tols, std::ostream& out) {
  const Matrix m = read_matrix(parse_json_file(path));
  const HermitianMatrix h(m, tols.herm);  // NotHermitian propagates as exit 1
  const SpectralDecomposition sd = spectral_decompose(h);
  const double lam_min = sd.eigenvalues.minCoeff();
  const double lam_max = sd.eigenvalues.maxCoeff();
  const bool psd = lam_min >= -tols.psd * std::max(lam_max, 0.0);
  std::ostringstream text;
  if (psd) {
    text << "{\"psd\":true,\"dim\":" << h.dim()
         << ",\"trace\":" << json_number(h.entries().trace().real()) << "}\n";
  } else {
    text << "{\"psd\":false,\"dim\":" << h.dim()
         << ",\"min_eigenvalue\":" << json_number(lam_min)
         << ",\"lambda_max\":" << json_number(lam_max) << "}\n";
  }
  out << text.str();
  return 0;
}

int run_divergence(const std::string& kind_name, const std::string& a_path,
                   const std::string& b_path, double s, bool classical, const SharedTols& tols,
                   std::ostream& out) {
  const DivergenceKind kind = parse_kind(kind_name);
  DivergenceReport report;
  if (classical) {
    const IntensityVector a = read_intensity_vector(parse_json_file(a_path));
    const IntensityVector b = read_intensity_vector(parse_json_file(b_path));
    report = divergence_report(a, b, kind, s, tols.s_opt);
  } else {
    const IntensityOperator a = load_intensity(a_path, tols);
    const IntensityOperator b = load_intensity(b_path, tols);
    report = divergence_report(a, b, kind, s, tols.s_opt);
  }
  out << emit_report(report) << "\n";
  return 0;
}

int run_helstrom(const std::string& family_path, const std::string& theta_text, double fd_step,
                 double delta_reg, std::ostream& out) {
  const std::vector<double> theta = split_doubles(theta_text, "--theta");
  nlohmann::json j = parse_json_file(family_path);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::BadInput, "family JSON needs a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  double k_value = 0.0;
  if (kind == "imaging") {
    if (theta.size() != 1) {
      throw Error(ErrorCode::BadInput, "the imaging family has a single parameter");
    }
    const double n0 = j.value("N0", 1.0);
    const double gamma_re = j.value("gamma", 0.0);
    const double gamma_im = j.value("gamma_im", 0.0);
    auto [gamma_t, delta_t] = gamma_and_derivative(n0, Complex(gamma_re, gamma_im));
    GramBasisProblem problem(gram_matrix(theta[0]), gamma_t, delta_t, delta_reg);
    k_value = sld_gram(problem).k;
  } else if (kind == "grid") {
    if (theta.size() != 1) {
      throw Error(ErrorCode::BadInput, "grid families are single-parameter");
    }
    if (!j.contains("thetas") || !j.contains("matrices") || !j["thetas"].is_array() ||
        !j["matrices"].is_array() || j["thetas"].size() != j["matrices"].size()) {
      throw Error(ErrorCode::BadInput,
                  "grid family needs parallel \"thetas\" and \"matrices\" arrays");
    }
    const std::size_t n = j["thetas"].size();
    if (n < 3) {
      throw Error(ErrorCode::BadInput, "grid family needs at least three points");
    }
    std::size_t at = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(j["thetas"][i].get<double>() - theta[0]) <=
          1e-12 * (1.0 + std::abs(theta[0]))) {
        at = i;
        break;
      }
    }
    if (at == n || at == 0 || at + 1 == n) {
      throw Error(ErrorCode::BadInput, "--theta must name an interior grid point");
    }
    const double span = j["thetas"][at + 1].get<double>() - j["thetas"][at - 1].get<double>();
    const Matrix dg = (read_matrix(j["matrices"][at + 1]) - read_matrix(j["matrices"][at - 1])) /
                      span;
    const IntensityOperator gamma = IntensityOperator::from_matrix(read_matrix(j["matrices"][at]));
    const HermitianMatrix s_op = sld(gamma, HermitianMatrix(0.5 * (dg + dg.adjoint())));
    k_value = (s_op.entries() * s_op.entries() * gamma.matrix()).trace().real();
  } else {
    throw Error(ErrorCode::BadInput, "unknown family kind \"" + kind + "\"");
  }
  (void)fd_step;
  std::ostringstream text;
  text << "{\"theta\":[" << json_number(theta[0]) << "],\"K\":[[" << json_number(k_value)
       << "]]}\n";
  out << text.str();
  return 0;
}

int run_channel(const std::string& spec_path, const std::string& gamma_path,
                const SharedTols& tols, std::ostream& out) {
  const ChannelSpec spec = read_channel(parse_json_file(spec_path));
  const IntensityOperator gamma = load_intensity(gamma_path, tols);
  const ChannelOutput result = apply(spec, gamma);
  if (const auto* op = std::get_if<IntensityOperator>(&result)) {
    out << emit_matrix(op->matrix()) << "\n";
  } else {
    out << emit_intensity_vector(std::get<IntensityVector>(result)) << "\n";
  }
  return 0;
}

int run_converge(const std::string& kind_name, double n, double nprime,
                 const std::string& tau1_path, const std::string& tau1p_path,
                 const std::string& m_text, double s, const SharedTols& tols, std::ostream& out) {
  const SweepKind kind = parse_sweep_kind(kind_name);
  auto load_tau = [&tols](const std::string& path, double total) {
    Matrix tau = path.empty() ? Matrix::Identity(1, 1) : read_matrix(parse_json_file(path));
    DensityOperator d(validate_psd(tau, tols.herm, tols.psd));
    return intensity_from_density(d, total);
  };
  const IntensityOperator gamma_a = load_tau(tau1_path, n);
  const IntensityOperator gamma_b = load_tau(tau1p_path, nprime);
  std::vector<std::int64_t> m_list;
  for (double v : split_doubles(m_text, "--m-list")) {
    m_list.push_back(static_cast<std::int64_t>(std::llround(v)));
  }
  const std::vector<SweepRow> rows = convergence_sweep(gamma_a, gamma_b, kind, m_list, s);
  std::ostringstream text;
  text << "M,finite_value,limit_value,abs_error\n";
  for (const SweepRow& row : rows) {
    text << row.m << "," << format_double(row.finite_value) << ","
         << format_double(row.limit_value) << "," << format_double(row.abs_error) << "\n";
  }
  out << text.str();
  return 0;
}

int run_sample(const std::string& lambda_spec, std::int64_t trials, std::uint64_t seed,
               const std::string& out_path, std::ostream& out) {
  IntensityVector lambda = [&]() {
    if (std::filesystem::exists(lambda_spec)) {
      return read_intensity_vector(parse_json_file(lambda_spec));
    }
    const std::vector<double> inline_values = split_doubles(lambda_spec, "--lambda");
    RealVector v(inline_values.size());
    for (std::size_t i = 0; i < inline_values.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = inline_values[i];
    }
    return IntensityVector(std::move(v));
  }();
  const SampleBatch batch = sample(lambda, trials, seed);
  std::ostringstream text;
  for (int j = 0; j < lambda.size(); ++j) {
    if (j) text << ",";
    text << "count_" << j;
  }
  text << "\n";
  for (Eigen::Index t = 0; t < batch.counts.rows(); ++t) {
    for (Eigen::Index j = 0; j < batch.counts.cols(); ++j) {
      if (j) text << ",";
      text << batch.counts(t, j);
    }
    text << "\n";
  }
  write_text(out_path, text.str(), out);
  return 0;
}

int run_imaging_sweep(double n0, const std::string& gamma_text, double theta_min, double theta_max,
                      double theta_step, double delta_reg, const std::string& out_path,
                      std::ostream& out) {
  ImagingConfig cfg;
  cfg.n0 = n0;
  cfg.delta_reg = delta_reg;
  if (gamma_text.empty()) {
    cfg.gamma_grid = default_imaging_config().gamma_grid;
  } else {
    for (double g : split_doubles(gamma_text, "--gamma-list")) cfg.gamma_grid.emplace_back(g, 0.0);
  }
  if (!(theta_step > 0.0) || !(theta_max >= theta_min)) {
    throw Error(ErrorCode::BadInput, "theta grid bounds are inconsistent");
  }
  // Integer stepping avoids accumulation drift on long grids.
  const int steps = static_cast<int>(std::floor((theta_max - theta_min) / theta_step + 0.5));
  for (int i = 0; i <= steps; ++i) {
    const double theta = theta_min + theta_step * static_cast<double>(i);
    if (theta > theta_max + 1e-12) break;
    cfg.theta_grid.push_back(theta);
  }
  const std::vector<ImagingSweepPoint> points = helstrom_sweep(cfg);
  std::ostringstream text;
  text << "gamma,theta,K_normalized\n";
  for (const ImagingSweepPoint& p : points) {
    text << format_double(p.gamma.real()) << "," << format_double(p.theta) << ","
         << format_double(p.k_normalized) << "\n";
  }
  write_text(out_path, text.str(), out);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information quantities of Poisson point-process quantum states"};
  app.name("poisson-info");
  app.require_subcommand(1);

  SharedTols tols;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a matrix for Hermitian PSD form");
  std::string validate_matrix;
  validate_cmd->add_option("--matrix", validate_matrix, "Matrix JSON file")->required();
  add_tol_flags(validate_cmd, tols);

  // divergence
  auto* div_cmd = app.add_subcommand("divergence", "Distinguishability measures for a pair");
  std::string div_kind, div_a, div_b;
  double div_s = 0.5;
  bool div_classical = false;
  div_cmd->add_option("--kind", div_kind,
                      "fidelity|bures|chernoff|chernoff-distance|alpha|kl")->required();
  div_cmd->add_option("--a", div_a, "First operator (or vector) JSON file")->required();
  div_cmd->add_option("--b", div_b, "Second operator (or vector) JSON file")->required();
  div_cmd->add_option("--s", div_s, "Exponent for chernoff/alpha (default 0.5)");
  div_cmd->add_flag("--classical", div_classical, "Treat inputs as per-bin intensity vectors");
  add_tol_flags(div_cmd, tols);

  // helstrom
  auto* hel_cmd = app.add_subcommand("helstrom", "Information matrix of a parametric family");
  std::string hel_family, hel_theta;
  double hel_fd_step = 1e-5;
  double hel_delta = 1e-13;
  hel_cmd->add_option("--family", hel_family, "Family JSON file (imaging or grid)")->required();
  hel_cmd->add_option("--theta", hel_theta, "Evaluation point, comma-separated")->required();
  hel_cmd->add_option("--fd-step", hel_fd_step, "Relative central-difference step");
  hel_cmd->add_option("--delta", hel_delta, "Support classification scale for the Gram solve");

  // channel
  auto* chan_cmd = app.add_subcommand("channel", "Apply an intensity map");
  std::string chan_spec, chan_gamma;
  chan_cmd->add_option("--spec", chan_spec, "Channel JSON file")->required();
  chan_cmd->add_option("--gamma", chan_gamma, "Input intensity JSON file")->required();
  add_tol_flags(chan_cmd, tols);

  // converge
  auto* conv_cmd = app.add_subcommand("converge", "Finite-size value vs Poisson limit");
  std::string conv_kind, conv_tau1, conv_tau1p, conv_mlist;
  double conv_n = 0.0, conv_nprime = 0.0, conv_s = 0.5;
  conv_cmd->add_option("--kind", conv_kind, "fidelity|chernoff|kl|helstrom")->required();
  conv_cmd->add_option("--n", conv_n, "Expected count of the first source")->required();
  conv_cmd->add_option("--nprime", conv_nprime, "Expected count of the second source")->required();
  conv_cmd->add_option("--tau1", conv_tau1, "Object state of the first source (default scalar)");
  conv_cmd->add_option("--tau1p", conv_tau1p, "Object state of the second source");
  conv_cmd->add_option("--m-list", conv_mlist, "Mode counts, comma-separated")->required();
  conv_cmd->add_option("--s", conv_s, "Chernoff exponent (default 0.5)");
  add_tol_flags(conv_cmd, tols);

  // sample
  auto* samp_cmd = app.add_subcommand("sample", "Draw Poisson count records");
  std::string samp_lambda, samp_out;
  std::int64_t samp_trials = 0;
  std::uint64_t samp_seed = 0;
  samp_cmd->add_option("--lambda", samp_lambda, "Intensities: JSON file or inline a,b,...")
      ->required();
  samp_cmd->add_option("--trials", samp_trials, "Number of independent trials")->required();
  samp_cmd->add_option("--seed", samp_seed, "Stream seed")->required();
  samp_cmd->add_option("--out", samp_out, "Write CSV here instead of stdout");

  // imaging-sweep
  auto* img_cmd = app.add_subcommand("imaging-sweep", "Two-source separation information grid");
  double img_n0 = 1.0, img_tmin = 0.05, img_tmax = 8.0, img_tstep = 0.05, img_delta = 1e-13;
  std::string img_gammas, img_out;
  img_cmd->add_option("--n0", img_n0, "Per-source expected count");
  img_cmd->add_option("--theta-min", img_tmin, "Smallest separation");
  img_cmd->add_option("--theta-max", img_tmax, "Largest separation");
  img_cmd->add_option("--theta-step", img_tstep, "Separation step");
  img_cmd->add_option("--gamma-list", img_gammas, "Coherence values, comma-separated");
  img_cmd->add_option("--delta", img_delta, "Support classification scale for the Gram solve");
  img_cmd->add_option("--out", img_out, "Write CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(validate_matrix, tols, out);
    if (div_cmd->parsed()) {
      return run_divergence(div_kind, div_a, div_b, div_s, div_classical, tols, out);
    }
    if (hel_cmd->parsed()) {
      return run_helstrom(hel_family, hel_theta, hel_fd_step, hel_delta, out);
    }
    if (chan_cmd->parsed()) return run_channel(chan_spec, chan_gamma, tols, out);
    if (conv_cmd->parsed()) {
      return run_converge(conv_kind, conv_n, conv_nprime, conv_tau1, conv_tau1p, conv_mlist,
                          conv_s, tols, out);
    }
    if (samp_cmd->parsed()) return run_sample(samp_lambda, samp_trials, samp_seed, samp_out, out);
    if (img_cmd->parsed()) {
      return run_imaging_sweep(img_n0, img_gammas, img_tmin, img_tmax, img_tstep, img_delta,
                               img_out, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand selected\n";
  return 2;
}

}  // namespace pinfo
