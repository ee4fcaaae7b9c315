#include "haarmoments/cli.hpp"

#include <functional>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "haarmoments/haar.hpp"
#include "haarmoments/matrix_io.hpp"
#include "haarmoments/verify.hpp"
#include "haarmoments/weyl.hpp"

namespace haarmoments::cli {

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad integer \"" + tok + "\" in list");
    out.push_back(v);
  }
  return out;
}

RationalVector parse_rational_list(const std::string& s) {
  RationalVector out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(rational_from_string(tok));
  return out;
}

json gaussian_to_json(const GaussianRational& v) {
  if (v.is_real()) return rational_to_string(v.re);
  return json::array({rational_to_string(v.re), rational_to_string(v.im)});
}

void emit(const Config& cfg, std::ostream& out, const json& j,
          const std::function<void(std::ostream&)>& text_writer) {
  if (cfg.format == Format::kJson) {
    out << j.dump(2) << "\n";
  } else {
    out << std::setprecision(cfg.float_precision);
    text_writer(out);
  }
}

std::string report_line(const VerifyReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " " << r.identity;
  if (!r.detail.empty()) os << " (" << r.detail << ")";
  if (r.estimate) {
    os << " exact=" << r.exact.value_or("?") << " estimate=" << *r.estimate;
    if (r.stderr_) os << " stderr=" << *r.stderr_;
    if (r.z) os << " z=" << *r.z;
  }
  return os.str();
}

json report_json(const VerifyReport& r) {
  json j{{"identity", r.identity}, {"pass", r.pass}, {"detail", r.detail}};
  if (r.exact) j["exact"] = *r.exact;
  if (r.estimate) j["estimate"] = *r.estimate;
  if (r.stderr_) j["stderr"] = *r.stderr_;
  if (r.z) j["z"] = *r.z;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Config& defaults) {
  Config cfg = defaults;

  CLI::App app{"Exact and numerical Haar-measure moments over the unitary group"};
  app.require_subcommand(1);
  std::string format = cfg.format == Format::kJson ? "json" : "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cap", cfg.dense_cap, "Dense operator size cap (d^k entries per axis)");
  app.add_option("--seed", cfg.seed, "Default RNG seed");
  app.add_option("--precision", cfg.float_precision, "Float digits in text output");

  int exit_code = 0;
  std::function<void()> action;

  // wg K D
  auto* wg_cmd = app.add_subcommand("wg", "Weingarten function as a cycle-type table");
  int wg_k = 0, wg_d = 0;
  wg_cmd->add_option("k", wg_k, "Tensor power")->required();
  wg_cmd->add_option("d", wg_d, "Unitary group dimension")->required();
  wg_cmd->callback([&] {
    action = [&, wg_k, wg_d] {
      const ClassFunction& wg = weingarten_fn(wg_k, wg_d);
      json j = json::object();
      for (const auto& [gamma, value] : wg.values) {
        j["(" + gamma.str() + ")"] = rational_to_string(value);
      }
      emit(cfg, out, j, [&](std::ostream& os) {
        for (const auto& [gamma, value] : wg.values) {
          os << "(" << gamma.str() << ") " << rational_to_string(value) << "\n";
        }
      });
    };
  });

  // moment --rows --cols --rows2 --cols2 -d
  auto* moment_cmd = app.add_subcommand("moment", "Exact monomial Haar integral");
  std::string m_rows, m_cols, m_rows2, m_cols2;
  int m_d = 0;
  moment_cmd->add_option("--rows", m_rows, "Row indices of U factors, e.g. 1,2")->required();
  moment_cmd->add_option("--cols", m_cols, "Column indices of U factors")->required();
  moment_cmd->add_option("--rows2", m_rows2, "Row indices of conj(U) factors")->required();
  moment_cmd->add_option("--cols2", m_cols2, "Column indices of conj(U) factors")->required();
  moment_cmd->add_option("-d", m_d, "Dimension")->required();
  moment_cmd->callback([&] {
    action = [&] {
      Rational v = monomial_integral(parse_int_list(m_rows), parse_int_list(m_cols),
                                     parse_int_list(m_rows2), parse_int_list(m_cols2), m_d);
      std::string s = rational_to_string(v);
      emit(cfg, out, json(s), [&](std::ostream& os) { os << s << "\n"; });
    };
  });

  // twirl --matrix FILE -k K
  auto* twirl_cmd = app.add_subcommand("twirl", "k-fold twirl of a matrix from a JSON file");
  std::string t_file;
  int t_k = 0;
  twirl_cmd->add_option("--matrix", t_file, "Matrix file (JSON rows of [re, im])")->required();
  twirl_cmd->add_option("-k", t_k, "Tensor power")->required();
  twirl_cmd->callback([&] {
    action = [&] {
      ExactMatrix x = load_exact_matrix(t_file);
      if (x.rows() != x.cols()) throw std::invalid_argument("twirl: matrix must be square");
      TwirlResult result = twirl_power(x, t_k, cfg.dense_cap);
      json coeffs = json::object();
      for (const auto& tc : result.coefficients) {
        coeffs["(" + tc.lambda.str() + ")"] = gaussian_to_json(tc.value);
      }
      json j{{"k", t_k},
             {"d", static_cast<int>(x.rows())},
             {"coefficients", coeffs},
             {"operator", exact_matrix_to_json(result.op.mat)}};
      emit(cfg, out, j, [&](std::ostream& os) {
        for (const auto& tc : result.coefficients) {
          os << "(" << tc.lambda.str() << ") " << tc.value.str() << "\n";
        }
      });
    };
  });

  // chartable K
  auto* chartable_cmd = app.add_subcommand("chartable", "Character table of S_k");
  int c_k = 0;
  chartable_cmd->add_option("k", c_k, "Symmetric group degree")->required();
  chartable_cmd->callback([&] {
    action = [&] {
      const CharacterTable& table = character_table(c_k);
      json parts = json::array();
      for (const auto& p : table.partitions) parts.push_back(p.str());
      json rows = json::array();
      for (const auto& row : table.values) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.get_si());
        rows.push_back(std::move(r));
      }
      json j{{"k", c_k}, {"partitions", parts}, {"table", rows}};
      emit(cfg, out, j, [&](std::ostream& os) {
        for (size_t r = 0; r < table.partitions.size(); ++r) {
          os << "(" << table.partitions[r].str() << ")";
          for (const auto& v : table.values[r]) os << " " << v.get_str();
          os << "\n";
        }
      });
    };
  });

  // schur --lambda --x
  auto* schur_cmd = app.add_subcommand("schur", "Schur polynomial at exact rational points");
  std::string s_lambda, s_x;
  schur_cmd->add_option("--lambda", s_lambda, "Partition, e.g. 2,1")->required();
  schur_cmd->add_option("--x", s_x, "Rational point, e.g. 1,1/2,3")->required();
  schur_cmd->callback([&] {
    action = [&] {
      Rational v = schur_poly(Partition::parse(s_lambda), parse_rational_list(s_x));
      std::string s = rational_to_string(v);
      emit(cfg, out, json(s), [&](std::ostream& os) { os << s << "\n"; });
    };
  });

  // kron --lambda --mu --nu
  auto* kron_cmd = app.add_subcommand("kron", "Kronecker coefficient g_{lambda mu nu}");
  std::string kr_lambda, kr_mu, kr_nu;
  kron_cmd->add_option("--lambda", kr_lambda, "Partition")->required();
  kron_cmd->add_option("--mu", kr_mu, "Partition")->required();
  kron_cmd->add_option("--nu", kr_nu, "Partition")->required();
  kron_cmd->callback([&] {
    action = [&] {
      BigInt g = kronecker(Partition::parse(kr_lambda), Partition::parse(kr_mu),
                           Partition::parse(kr_nu));
      emit(cfg, out, json(g.get_str()), [&](std::ostream& os) { os << g.get_str() << "\n"; });
    };
  });

  // sample -d D -n N [--seed S]
  auto* sample_cmd = app.add_subcommand("sample", "Haar-random unitaries");
  int sm_d = 2;
  long sm_n = 1;
  sample_cmd->add_option("-d", sm_d, "Dimension")->required();
  sample_cmd->add_option("-n", sm_n, "Number of samples");
  sample_cmd->callback([&] {
    action = [&] {
      RngStream rng(cfg.seed, 0);
      json mats = json::array();
      double worst = 0;
      std::vector<ComplexMatrix> samples;
      for (long i = 0; i < sm_n; ++i) {
        ComplexMatrix u = haar_sample(sm_d, rng);
        worst = std::max(worst, unitarity_residual(u));
        samples.push_back(u);
        mats.push_back(complex_matrix_to_json(u));
      }
      json j{{"d", sm_d},
             {"n", sm_n},
             {"seed", cfg.seed},
             {"unitaries", mats},
             {"max_unitarity_residual", worst}};
      emit(cfg, out, j, [&](std::ostream& os) {
        for (long i = 0; i < sm_n; ++i) {
          os << "sample " << i << " residual " << unitarity_residual(samples[static_cast<size_t>(i)])
             << "\n";
        }
        os << "max unitarity residual " << worst << "\n";
      });
    };
  });

  // quad --n N --grid G --moment K --power P
  auto* quad_cmd = app.add_subcommand("quad", "Torus quadrature of |Tr U^k|^{2p} over U(n)");
  int q_n = 2, q_grid = 0, q_k = 1, q_p = 1;
  quad_cmd->add_option("--n", q_n, "Torus dimension (unitary group size)")->required();
  quad_cmd->add_option("--grid", q_grid, "Grid points per axis (0 = smallest exact grid)");
  quad_cmd->add_option("--moment", q_k, "Power k inside Tr U^k");
  quad_cmd->add_option("--power", q_p, "Half-exponent p in |Tr U^k|^{2p}");
  quad_cmd->callback([&] {
    action = [&] {
      int grid = q_grid > 0 ? q_grid : min_grid_for_degree(q_p * q_k + q_n - 1);
      double v = weyl_trace_power_moment(q_n, q_k, q_p, grid);
      json j{{"n", q_n}, {"grid", grid}, {"k", q_k}, {"power", q_p}, {"value", v}};
      emit(cfg, out, j, [&](std::ostream& os) { os << v << "\n"; });
    };
  });

  // mcverify IDENTITY
  auto* mc_cmd = app.add_subcommand("mcverify", "Monte Carlo check of a registered identity");
  std::string mc_name;
  VerifyOptions mc_opts;
  int mc_k = 0, mc_d = 0;
  long mc_samples = 0;
  mc_cmd->add_option("identity", mc_name, "Identity name")->required();
  mc_cmd->add_option("--samples", mc_samples, "Sample count");
  mc_cmd->add_option("-k", mc_k, "Power parameter");
  mc_cmd->add_option("-d", mc_d, "Dimension parameter");
  mc_cmd->callback([&] {
    action = [&] {
      mc_opts.seed = cfg.seed;
      mc_opts.mc_samples = mc_samples;
      if (mc_k > 0) mc_opts.k = mc_k;
      if (mc_d > 0) mc_opts.d = mc_d;
      VerifyReport r = exact_vs_mc_report(mc_name, mc_opts);
      emit(cfg, out, report_json(r), [&](std::ostream& os) { os << report_line(r) << "\n"; });
      if (!r.pass) exit_code = 1;
    };
  });

  // verify IDENTITY|all
  auto* verify_cmd = app.add_subcommand("verify", "Run registered verification identities");
  std::string v_name = "all";
  VerifyOptions v_opts;
  int v_k = 0, v_d = 0;
  long v_samples = 0;
  verify_cmd->add_option("identity", v_name, "Identity name or 'all'");
  verify_cmd->add_option("--samples", v_samples, "Monte Carlo sample count");
  verify_cmd->add_option("-k", v_k, "Power parameter override");
  verify_cmd->add_option("-d", v_d, "Dimension parameter override");
  verify_cmd->callback([&] {
    action = [&] {
      v_opts.seed = cfg.seed;
      v_opts.mc_samples = v_samples;
      if (v_k > 0) v_opts.k = v_k;
      if (v_d > 0) v_opts.d = v_d;
      std::vector<VerifyReport> reports;
      if (v_name == "all") {
        reports = run_all(v_opts);
      } else {
        reports.push_back(run_identity(v_name, v_opts));
      }
      json arr = json::array();
      bool all_pass = true;
      for (const auto& r : reports) {
        arr.push_back(report_json(r));
        all_pass = all_pass && r.pass;
      }
      emit(cfg, out, arr, [&](std::ostream& os) {
        for (const auto& r : reports) os << report_line(r) << "\n";
      });
      if (!all_pass) exit_code = 1;
    };
  });

  // Global options (--format etc.) remain usable after a subcommand name.
  for (CLI::App* sub : app.get_subcommands(
           [](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  cfg.format = format == "json" ? Format::kJson : Format::kText;
  if (cfg.dense_cap < kMinDenseCap) {
    err << "--cap must be >= " << kMinDenseCap << "\n";
    return 2;
  }

  try {
    action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace haarmoments::cli
