#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "andovar/andovar.hpp"
#include "io.hpp"

namespace andovar::cli {

namespace {

struct Config {
  std::optional<double> tol_commute;
  double tol_contract = 1e-10;
  double tol_pure = 1e-8;
  double rank_tol = 1e-10;
  double tol_trunc = 1e-10;
  std::string truncation = "auto";
  int theta_samples = 720;
  int torus_grid = 512;
  std::uint64_t seed = 42;
  std::string output;
  std::string format;
  bool strict = false;

  std::string pair_file;
  std::string poly_file;
  std::string kind;
  std::string demo;
  int dim = 3;
  int m = 2;
  bool dump_matrices = false;

  Tolerances tolerances() const {
    Tolerances t;
    t.commute = tol_commute;
    t.contract = tol_contract;
    t.pure = tol_pure;
    t.rank = rank_tol;
    t.trunc = tol_trunc;
    return strict ? t.strict() : t;
  }

  int truncation_degree() const {
    if (truncation == "auto") return 0;
    try {
      std::size_t used = 0;
      const int n = std::stoi(truncation, &used);
      if (used == truncation.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw InputError("--truncation must be 'auto' or a positive integer");
  }
};

// Writes to --output when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit_json(const Config& cfg, std::ostream& out, const io::Json& j) {
  Sink sink(cfg.output, out);
  sink.stream() << j.dump(2) << '\n';
}

ContractionPair load_pair(const Config& cfg) {
  const io::PairInput in = io::read_pair_file(cfg.pair_file);
  return ContractionPair::make(in.t1, in.t2, cfg.tolerances());
}

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  const io::PairInput in = io::read_pair_file(cfg.pair_file);
  const Tolerances tols = cfg.tolerances();
  const PairReport rep = analyze_pair(in.t1, in.t2, tols);
  emit_json(cfg, out, io::to_json(rep));
  if (rep.valid()) return kExitOk;
  try {
    validate_pair(in.t1, in.t2, tols);
  } catch (const ValidationError& e) {
    err << "andovar: " << e.what() << '\n';
  }
  return kExitValidation;
}

int cmd_colligation(const Config& cfg, std::ostream& out) {
  const ContractionPair pair = load_pair(cfg);
  emit_json(cfg, out, io::to_json(build_colligation(pair)));
  return kExitOk;
}

int cmd_dilate(const Config& cfg, std::ostream& out, std::ostream& err) {
  const ContractionPair pair = load_pair(cfg);
  pair.require_t1_pure("the dilation");
  const Colligation coll = build_colligation(pair);
  const TruncatedDilation dil = build_dilation(pair, coll, cfg.truncation_degree());
  for (const std::string& w : dil.warnings) err << "andovar: warning: " << w << '\n';
  const IntertwiningResiduals tw = intertwining_residuals(dil, pair);
  const CompressionResiduals cr = compression_residuals(dil, pair);
  const MultiplierIsometry mi = mpsi_isometry_residual(dil);
  io::Json j{
      {"degree", dil.degree},
      {"fiber_dim", dil.fiber_dim},
      {"size", dil.size()},
      {"tail_bound", dil.tail_bound},
      {"intertwining",
       {{"res_z", tw.res_z},
        {"res_psi", tw.res_psi},
        {"bound_z", tw.bound_z},
        {"bound_psi", tw.bound_psi},
        {"bound_psi_loose", tw.bound_psi_loose}}},
      {"compression",
       {{"shift", cr.shift},
        {"multiplier", cr.multiplier},
        {"bound_shift", cr.bound_shift},
        {"bound_multiplier", cr.bound_multiplier}}},
      {"pi_isometry_residual", pi_isometry_residual(dil)},
      {"shift_multiplier_commutator", shift_multiplier_commutator(dil)},
      {"minimality_defect", minimality_defect(dil)},
      {"mpsi_isometry",
       {{"raw", mi.raw},
        {"restricted", mi.restricted},
        {"restricted_blocks", mi.restricted_blocks},
        {"effective_symbol_count", mi.effective_symbol_count},
        {"symbol_tail", mi.symbol_tail}}},
      {"warnings", dil.warnings},
      {"pair_digest", pair_digest(pair.t1(), pair.t2())},
  };
  if (cfg.dump_matrices) {
    j["matrices"] = {{"Pi", io::to_json(dil.pi)}, {"Mz", io::to_json(dil.mz)}, {"MPsi", io::to_json(dil.mpsi)}};
  }
  emit_json(cfg, out, j);
  return kExitOk;
}

io::Json variety_summary(const VarietySample& s) {
  return io::Json{{"v0_count", s.v0_count},
                  {"v1_count", s.v1_count},
                  {"max_residual", s.max_residual},
                  {"skipped_thetas", s.skipped_thetas.size()},
                  {"n_theta", s.theta_grid.size()}};
}

std::string summary_line(const VarietySample& s) {
  std::ostringstream os;
  os << "v0=" << s.v0_count << " v1=" << s.v1_count << " max_residual=" << io::format_double(s.max_residual)
     << " skipped=" << s.skipped_thetas.size() << " n_theta=" << s.theta_grid.size();
  return os.str();
}

int cmd_variety(const Config& cfg, std::ostream& out, std::ostream& err) {
  const ContractionPair pair = load_pair(cfg);
  pair.require_t1_pure("the variety");
  const VarietyModel model = VarietyModel::from_colligation(build_colligation(pair), pair.tolerances().pure);
  const VarietySample sample = boundary_samples(model, cfg.theta_samples);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  Sink sink(cfg.output, out);
  if (format == "csv") {
    io::write_variety_csv(sink.stream(), sample);
  } else if (format == "svg") {
    io::write_variety_svg(sink.stream(), sample);
  } else {
    io::Json points = io::Json::array();
    for (const VarietyPoint& p : sample.points) {
      points.push_back({{"theta", p.theta},
                        {"z1", io::to_json(p.z1)},
                        {"z2", io::to_json(p.z2)},
                        {"kind", to_string(p.kind)},
                        {"residual", p.residual}});
    }
    io::Json j = variety_summary(sample);
    j["points"] = std::move(points);
    sink.stream() << j.dump(2) << '\n';
  }
  err << "variety: " << summary_line(sample) << '\n';
  return kExitOk;
}

VNOptions vn_options(const Config& cfg) {
  VNOptions o;
  o.n_theta = cfg.theta_samples;
  o.torus_grid = cfg.torus_grid;
  return o;
}

int cmd_vn(const Config& cfg, std::ostream& out) {
  const ContractionPair pair = load_pair(cfg);
  const BivariatePolynomial p = io::read_polynomial_file(cfg.poly_file);
  emit_json(cfg, out, io::to_json(vn_report(pair, p, vn_options(cfg))));
  return kExitOk;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  if (cfg.dim < 1) throw InputError("--dim must be positive");
  const GeneratedPair g = generate_pair(parse_pair_kind(cfg.kind), cfg.dim, cfg.seed);
  emit_json(cfg, out, io::pair_to_json(g.t1, g.t2));
  return kExitOk;
}

// T1 = T2 = 0 on C^m: U = [[0, W], [I, 0]] with W = I and Psi(z) = z W^*.
int demo_shift(const Config& cfg, std::ostream& out) {
  if (cfg.m < 1) throw InputError("--m must be positive");
  const ComplexMatrix zero = ComplexMatrix::Zero(cfg.m, cfg.m);
  const ContractionPair pair = ContractionPair::make(zero, zero, cfg.tolerances());
  const Colligation coll = build_colligation(pair);
  const Realization psi = realization_of(coll, Direction::Adjoint);
  const bool shift_form = linalg::operator_norm(psi.a) <= 1e-12 && linalg::operator_norm(psi.d) <= 1e-12;
  const VarietyModel model = VarietyModel::from_colligation(coll, pair.tolerances().pure);
  const VarietySample sample = boundary_samples(model, cfg.theta_samples);
  double diag_gap = 0.0;
  for (const VarietyPoint& p : sample.points) diag_gap = std::max(diag_gap, std::abs(p.z2 - p.z1));
  io::Json j{
      {"demo", "shift"},
      {"m", cfg.m},
      {"colligation", io::to_json(coll)},
      {"psi_symbol", shift_form ? "z*W^*" : "general"},
      {"W_star", io::to_json(psi.b * psi.c)},
      {"variety", {{"description", "{(z,z)}"}, {"max_abs_z2_minus_z1", diag_gap}}},
  };
  j["variety"].update(variety_summary(sample));
  emit_json(cfg, out, j);
  return kExitOk;
}

// T1 = T2 = [[0, 1/2], [0, 0]], p = z1 - z2: p vanishes on the variety.
int demo_sharpness(const Config& cfg, std::ostream& out) {
  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  t(0, 1) = 0.5;
  const ContractionPair pair = ContractionPair::make(t, t, cfg.tolerances());
  const BivariatePolynomial p = BivariatePolynomial::z1() - BivariatePolynomial::z2();
  const VNReport rep = vn_report(pair, p, vn_options(cfg));
  io::Json j{{"demo", "sharpness"},
             {"pair", io::pair_to_json(t, t)},
             {"polynomial", io::to_json(p)},
             {"report", io::to_json(rep)},
             {"ratio_variety_over_bidisc", rep.sup_variety / rep.sup_bidisc}};
  emit_json(cfg, out, j);
  return kExitOk;
}

int cmd_demo(const Config& cfg, std::ostream& out) {
  if (cfg.demo == "shift") return demo_shift(cfg, out);
  if (cfg.demo == "sharpness") return demo_sharpness(cfg, out);
  throw InputError("unknown demo '" + cfg.demo + "' (expected shift or sharpness)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Commuting contraction pairs: colligations, dilations, distinguished varieties", "andovar"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--tol-commute", cfg.tol_commute, "commutator tolerance (default 1e-10 * dim)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol-contract", cfg.tol_contract, "contraction tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-pure", cfg.tol_pure, "purity margin on the spectral radius")->check(CLI::NonNegativeNumber);
  app.add_option("--rank-tol", cfg.rank_tol, "defect rank threshold")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-trunc", cfg.tol_trunc, "truncation tail threshold")->check(CLI::NonNegativeNumber);
  app.add_option("--truncation", cfg.truncation, "dilation degree: auto or N");
  app.add_option("--theta-samples", cfg.theta_samples, "boundary samples per circle")->check(CLI::PositiveNumber);
  app.add_option("--torus-grid", cfg.torus_grid, "torus grid per axis")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--output,-o", cfg.output, "output file (default stdout)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_flag("--strict", cfg.strict, "halve every tolerance");

  auto* check = app.add_subcommand("check", "validate a pair and print its report");
  check->add_option("pair", cfg.pair_file, "pair JSON file")->required();
  auto* coll = app.add_subcommand("colligation", "print the unitary colligation");
  coll->add_option("pair", cfg.pair_file, "pair JSON file")->required();
  auto* dilate = app.add_subcommand("dilate", "build the truncated dilation and print its residuals");
  dilate->add_option("pair", cfg.pair_file, "pair JSON file")->required();
  dilate->add_flag("--dump-matrices", cfg.dump_matrices, "include Pi, Mz and MPsi");
  auto* variety = app.add_subcommand("variety", "sample the variety over the unit circle");
  variety->add_option("pair", cfg.pair_file, "pair JSON file")->required();
  auto* vn = app.add_subcommand("vn", "certify the sharpened von Neumann inequality");
  vn->add_option("pair", cfg.pair_file, "pair JSON file")->required();
  vn->add_option("poly", cfg.poly_file, "polynomial JSON file")->required();
  auto* gen = app.add_subcommand("gen", "generate a commuting pair");
  gen->add_option("kind", cfg.kind, "diag | jordan-poly | triangular-commuting")
      ->required()
      ->check(CLI::IsMember({"diag", "jordan-poly", "triangular-commuting"}));
  gen->add_option("--dim", cfg.dim, "matrix size")->check(CLI::PositiveNumber);
  auto* demo = app.add_subcommand("demo", "canned examples");
  demo->add_option("name", cfg.demo, "shift | sharpness")->required()->check(CLI::IsMember({"shift", "sharpness"}));
  demo->add_option("--m", cfg.m, "size for the shift demo")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "andovar: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (coll->parsed()) return cmd_colligation(cfg, out);
    if (dilate->parsed()) return cmd_dilate(cfg, out, err);
    if (variety->parsed()) return cmd_variety(cfg, out, err);
    if (vn->parsed()) return cmd_vn(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (demo->parsed()) return cmd_demo(cfg, out);
  } catch (const InputError& e) {
    err << "andovar: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "andovar: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "andovar: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace andovar::cli
