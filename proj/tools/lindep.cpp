// lindep: command-line front end for the verification suites and the
// certificate / probe / group-ring checks.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error,
// 3 inconclusive records only.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lindep/lindep.hpp"

namespace {

using namespace lindep;

constexpr int kUsageError = 2;

struct Common {
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  std::string text_path;
  std::string jsonl_path;
  bool quiet = false;
};

RunConfig load_config(const Common& c) {
  RunConfig cfg = RunConfig::resolve(c.config_path);
  for (const auto& o : c.overrides) cfg.apply_override(o);
  if (!c.text_path.empty()) cfg.text_output = c.text_path;
  if (!c.jsonl_path.empty()) cfg.jsonl_output = c.jsonl_path;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << body;
}

int emit(const Report& report, const RunConfig& cfg, bool quiet) {
  std::ostringstream text;
  report.write_text(text);
  if (!quiet) std::cout << text.str();
  if (!cfg.text_output.empty()) write_file(cfg.text_output, text.str());
  if (!cfg.jsonl_output.empty()) {
    std::ostringstream jl;
    report.write_jsonl(jl);
    write_file(cfg.jsonl_output, jl.str());
  }
  return report.exit_code();
}

Status from_verdict(Verdict v) {
  switch (v) {
    case Verdict::Independent: return Status::Pass;
    case Verdict::Dependent: return Status::Fail;
    default: return Status::Inconclusive;
  }
}

template <class G, class C>
std::string format_sum(const FormalSum<G, C>& s) {
  std::ostringstream os;
  for (const auto& [g, c] : s.terms()) os << c << " * " << format_element(GroupElement{g}) << '\n';
  return os.str();
}

template <class G>
nlohmann::json sum_lines(const ExactSum<G>& s) {
  nlohmann::json out = nlohmann::json::array();
  std::istringstream in(format_sum(s));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

Record verify_record(const std::string& path) {
  const auto doc = load_certificate(path);
  const auto field = residual_field(doc.certificate);
  const double rel = field.residual_norm() / field.target_norm();
  return {"verify",
          path,
          pass_if(rel <= doc.tolerance),
          Provenance::Direct,
          "relative residual of sum c_k pi(g_k) f",
          {{"relative_residual", rel},
           {"residual_norm", field.residual_norm()},
           {"max_abs_residual", field.max_abs_residual()},
           {"target_norm", field.target_norm()},
           {"tolerance", doc.tolerance},
           {"terms", doc.certificate.terms.size()},
           {"space", doc.spec.space}},
          {}};
}

Record probe_record(const std::string& path) {
  const auto doc = load_probe(path);
  const auto p = probe_independence(doc.space, doc.elements, doc.options);
  std::vector<double> spectrum(p.spectrum.begin(), p.spectrum.end());
  return {"probe",
          path,
          from_verdict(p.verdict),
          Provenance::IndependentOracle,
          "Gram spectrum of the translated system",
          {{"min_eigenvalue", p.min_eigenvalue},
           {"max_eigenvalue", p.max_eigenvalue},
           {"relative", p.relative},
           {"threshold", p.options.threshold},
           {"floor", p.options.floor},
           {"spectrum", spectrum},
           {"verdict", to_string(p.verdict)}},
          "probe only: a numerical spectrum supports but does not prove (in)dependence"};
}

template <class G>
Record gring_probe_record(const std::string& path, std::int64_t radius) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  ExactSum<G> alpha;
  try {
    alpha = parse_exact_sum<G>(in);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  if (alpha.is_zero()) throw parse_error(path + ": alpha is zero");
  const auto rep = zero_divisor_probe(alpha, radius);
  nlohmann::json values{{"alpha", sum_lines(alpha)},
                        {"radius", radius},
                        {"rows", rep.rows},
                        {"cols", rep.cols},
                        {"rank", rep.rank},
                        {"min_singular_value", rep.min_singular_value}};
  if (rep.witness) values["witness"] = sum_lines(*rep.witness);
  return {"gring-probe", path, rep.has_kernel() ? Status::Fail : Status::Pass, Provenance::IndependentOracle,
          "convolution matrix of alpha on the support ball", values, rep.note};
}

LatticePoint parse_lattice_point(const std::string& text) {
  const auto halves = detail::split_top(text, ';');
  if (halves.size() != 2) throw parse_error("lattice point needs 'a1,...;b1,...': '" + text + "'");
  LatticePoint p;
  for (const auto& x : detail::split_top(halves[0], ',')) p.a.push_back(parse_rational(x));
  for (const auto& x : detail::split_top(halves[1], ',')) p.b.push_back(parse_rational(x));
  if (p.a.size() != p.b.size()) throw parse_error("lattice point halves differ in length: '" + text + "'");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-dependence certificates, independence probes and group-ring checks"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-c,--config", common.config_path, "INI run configuration (else $LINDEP_CONFIG)");
  app.add_option("-s,--set", common.overrides, "Override one key: section.key=value");
  app.add_option("--text", common.text_path, "Write the plain-text report here");
  app.add_option("--jsonl", common.jsonl_path, "Write line-delimited JSON records here");
  app.add_flag("-q,--quiet", common.quiet, "Do not echo the text report");

  auto* verify_cmd = app.add_subcommand("verify", "Check dependency certificates");
  std::vector<std::string> cert_files;
  verify_cmd->add_option("files", cert_files, "Certificate files")->required()->check(CLI::ExistingFile);

  auto* probe_cmd = app.add_subcommand("probe", "Gram-spectrum independence probes");
  std::vector<std::string> probe_files;
  probe_cmd->add_option("files", probe_files, "Probe files")->required()->check(CLI::ExistingFile);

  auto* suite_cmd = app.add_subcommand("suite", "Run a canned suite, or 'all'");
  std::string suite_name;
  bool list_suites = false;
  suite_cmd->add_option("name", suite_name, "Suite name");
  suite_cmd->add_flag("--list", list_suites, "List suite names");

  auto* adm_cmd = app.add_subcommand("admissibility", "Calderon constant of a window");
  std::string adm_rep = "pi-affine", adm_u;
  adm_cmd->add_option("--rep", adm_rep, "pi-affine or pi-plus")->check(CLI::IsMember({"pi-affine", "pi-plus"}));
  adm_cmd->add_option("--u", adm_u, "Window function literal, e.g. dgauss")->required();

  auto* coef_cmd = app.add_subcommand("coefficient", "Emit |F(g)| on a parameter grid as CSV");
  std::string coef_rep = "pi-affine", coef_v, coef_u, coef_rule, coef_out;
  std::vector<std::string> coef_axes;
  coef_cmd->add_option("--rep", coef_rep, "pi-affine, pi-plus, schroedinger or pi-shearlet");
  coef_cmd->add_option("--v", coef_v, "Vector v in F(g) = <v, pi(g) u>")->required();
  coef_cmd->add_option("--u", coef_u, "Window u")->required();
  coef_cmd->add_option("--rule", coef_rule, "x-quadrature: 'lo hi panels nodes [breakpoints]'")->required();
  coef_cmd->add_option("--axis", coef_axes, "Parameter axis: 'add|mult lo hi panels nodes [midpoint|gl]'")->required();
  coef_cmd->add_option("-o,--out", coef_out, "CSV file (default stdout)");

  auto* gring_cmd = app.add_subcommand("gring", "Group-ring checks");
  gring_cmd->require_subcommand(1);
  auto* torsion_cmd = gring_cmd->add_subcommand("torsion", "Kernel of 1 + g + ... + g^{m-1} in C[Z/m]");
  std::int64_t torsion_m = 3;
  torsion_cmd->add_option("--m", torsion_m, "Order m")->check(CLI::Range(std::int64_t{2}, std::int64_t{4096}));
  auto* tfree_cmd = gring_cmd->add_subcommand("torsion-free", "The same pattern on Z, finite-support probe");
  std::int64_t tfree_m = 3, tfree_radius = 12;
  tfree_cmd->add_option("--m", tfree_m, "Number of terms")->check(CLI::Range(std::int64_t{2}, std::int64_t{64}));
  tfree_cmd->add_option("--radius", tfree_radius, "Support radius")->check(CLI::NonNegativeNumber);
  auto* gprobe_cmd = gring_cmd->add_subcommand("probe", "Zero-divisor probe of a formal sum file");
  std::string gprobe_file, gprobe_group = "zn";
  std::int64_t gprobe_radius = 4;
  gprobe_cmd->add_option("file", gprobe_file, "Lines 're[, im] * element'")->required()->check(CLI::ExistingFile);
  gprobe_cmd->add_option("--group", gprobe_group, "zn, cyc or heis")->check(CLI::IsMember({"zn", "cyc", "heis"}));
  gprobe_cmd->add_option("--radius", gprobe_radius, "Support radius")->check(CLI::NonNegativeNumber);
  auto* fourier_cmd = gring_cmd->add_subcommand("fourier", "Symbol range of a formal sum over Z^n");
  std::string fourier_file;
  int fourier_res = 1024;
  fourier_cmd->add_option("file", fourier_file, "Formal sum over Z^n")->required()->check(CLI::ExistingFile);
  fourier_cmd->add_option("--resolution", fourier_res, "Torus grid points per axis")->check(CLI::PositiveNumber);
  auto* lattice_cmd = gring_cmd->add_subcommand("lattice", "Heisenberg lattice condition");
  std::int64_t lattice_r = 1;
  std::vector<std::string> lattice_points;
  lattice_cmd->add_option("--r", lattice_r, "Integer r");
  lattice_cmd->add_option("--point", lattice_points, "Point 'a1,...;b1,...' with rational entries")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const RunConfig cfg = load_config(common);
    Report report;

    if (*verify_cmd) {
      for (const auto& f : cert_files) report.add(verify_record(f));
    } else if (*probe_cmd) {
      for (const auto& f : probe_files) report.add(probe_record(f));
    } else if (*suite_cmd) {
      if (list_suites) {
        for (const auto& n : suites::names()) std::cout << n << '\n';
        return 0;
      }
      if (suite_name.empty()) throw parse_error("suite needs a name or --list");
      if (suite_name != "all" && !suites::registry().count(suite_name))
        throw parse_error("unknown suite '" + suite_name + "'");
      report = suites::run(suite_name, cfg);
    } else if (*adm_cmd) {
      const auto rep = parse_representation(adm_rep);
      const auto u = parse_function(adm_u);
      const auto r = adm_rep == "pi-affine" ? admissibility_constant(rep, SampledFunction::sample(cfg.grid(), u), cfg.admissibility)
                                         : admissibility_constant(rep, u, cfg.admissibility);
      report.add(Record{"admissibility",
                        adm_u,
                        r.convergent ? Status::Pass : Status::Inconclusive,
                        Provenance::Direct,
                        "int |u^|^2 / |xi| over the truncation box",
                        {{"constant", r.constant},
                         {"convergent", r.convergent},
                         {"inner_tail", r.inner_tail},
                         {"outer_tail", r.outer_tail},
                         {"box", r.truncation_box()}},
                        r.convergent ? "" : "an end panel carries more than the tail tolerance"});
    } else if (*coef_cmd) {
      std::vector<ParameterAxis> axes;
      for (const auto& a : coef_axes) axes.push_back(parse_axis(a));
      const MatrixCoefficient F(parse_representation(coef_rep), parse_function(coef_v), parse_function(coef_u),
                                parse_rule(coef_rule));
      const ParameterGrid grid(axes);
      if (coef_out.empty()) {
        write_coefficient_csv(std::cout, F, grid);
      } else {
        std::ofstream out(coef_out);
        if (!out) throw config_error("cannot write '" + coef_out + "'");
        write_coefficient_csv(out, F, grid);
      }
      return 0;
    } else if (*gring_cmd) {
      if (*torsion_cmd) {
        const auto alpha = suites::geometric_sum(CyclicElement(1, torsion_m), static_cast<int>(torsion_m));
        const auto rep = zero_divisor_probe(alpha, 0);
        nlohmann::json values{{"m", torsion_m}, {"rank", rep.rank}, {"cols", rep.cols},
                              {"min_singular_value", rep.min_singular_value}};
        if (rep.witness) {
          values["witness"] = sum_lines(*rep.witness);
          values["alpha_times_witness_zero"] = convolve(alpha, *rep.witness).is_zero();
        }
        report.add(Record{"gring-torsion", "m=" + std::to_string(torsion_m), pass_if(rep.has_kernel()),
                          Provenance::PublishedIdentity, "1 + g + ... + g^{m-1} is a zero divisor in C[Z/m]", values,
                          rep.note});
      } else if (*tfree_cmd) {
        const auto alpha = suites::geometric_sum(ZnElement{{1}}, static_cast<int>(tfree_m));
        const auto rep = zero_divisor_probe(alpha, tfree_radius);
        report.add(Record{"gring-torsion-free", "m=" + std::to_string(tfree_m), pass_if(!rep.has_kernel()),
                          Provenance::IndependentOracle, "1 + g + ... + g^{m-1} on Z has no finitely supported kernel",
                          {{"radius", tfree_radius}, {"rank", rep.rank}, {"cols", rep.cols},
                           {"min_singular_value", rep.min_singular_value}},
                          rep.note});
      } else if (*gprobe_cmd) {
        if (gprobe_group == "zn") report.add(gring_probe_record<ZnElement>(gprobe_file, gprobe_radius));
        else if (gprobe_group == "cyc") report.add(gring_probe_record<CyclicElement>(gprobe_file, gprobe_radius));
        else report.add(gring_probe_record<HeisenbergLatticeElement>(gprobe_file, gprobe_radius));
      } else if (*fourier_cmd) {
        std::ifstream in(fourier_file);
        const auto alpha = parse_exact_sum<ZnElement>(in);
        const auto sym = zn_fourier_criterion(alpha, fourier_res);
        report.add(Record{"gring-fourier", fourier_file, Status::Pass, Provenance::Direct,
                          "range of |alpha^(theta)| on the torus grid",
                          {{"min_abs", sym.min_abs}, {"max_abs", sym.max_abs}, {"resolution", fourier_res}},
                          "a small minimum flags near-kernel frequencies"});
      } else if (*lattice_cmd) {
        std::vector<LatticePoint> pts;
        for (const auto& p : lattice_points) pts.push_back(parse_lattice_point(p));
        const auto chk = heisenberg_lattice_check(pts, lattice_r);
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& row : chk.basis) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& q : row) r.push_back(to_string(q));
          basis.push_back(r);
        }
        report.add(Record{"gring-lattice", "r=" + std::to_string(lattice_r), pass_if(chk.ok()), Provenance::Direct,
                          "r a_h . b_k integral and discrete generated subgroup",
                          {{"products_integral", chk.products_integral}, {"discrete", chk.discrete},
                           {"rank", chk.rank}, {"basis", basis}},
                          {}});
      }
    }
    report.sort();
    return emit(report, cfg, common.quiet);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
