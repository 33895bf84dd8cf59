#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tps/detrep.hpp"
#include "tps/field.hpp"
#include "tps/oracle.hpp"
#include "tps/surface.hpp"
#include "tps/syzygy.hpp"
#include "tps/thresholds.hpp"

using nlohmann::ordered_json;

namespace {

struct Options {
  std::string surface_path;
  std::string field = "rational";
  uint64_t prime = tps::Fp::default_modulus;
  bool prime_set = false;
  int mu = -1, nu = -1;
  uint64_t seed = 0;
  std::string source = "default";
  std::string output = "text";
  bool transpose = false;
  bool no_verify = false;
  std::string form;
  int trials = 3;
  int sample_trials = 100;
  int sat_cap = 4;
};

template <class K>
std::string x_block_name(int block, int xdeg) {
  if (xdeg == 1) return "x" + std::to_string(block);
  auto [i, j] = tps::quad_pairs()[block];
  return "x" + std::to_string(i) + "*x" + std::to_string(j);
}

template <class K>
std::string moving_form_string(const tps::MovingForm<K>& f) {
  auto blocks = tps::moving_form_blocks(f);
  std::string out;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + tps::render(blocks[b]) + ")*" + x_block_name<K>(static_cast<int>(b), f.xdeg);
  }
  return out.empty() ? "0" : out;
}

template <class K>
ordered_json moving_form_json(const tps::MovingForm<K>& f) {
  auto blocks = tps::moving_form_blocks(f);
  ordered_json j = ordered_json::object();
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].is_zero()) continue;
    j[x_block_name<K>(static_cast<int>(b), f.xdeg)] = tps::render(blocks[b]);
  }
  return j;
}

tps::QuadricSource parse_source(const std::string& s) {
  if (s == "default") return tps::QuadricSource::Default;
  if (s == "saturated") return tps::QuadricSource::Saturated;
  throw tps::input_error("unknown quadric source: " + s);
}

void emit(const Options& o, const ordered_json& j,
          const std::vector<std::string>& text_lines) {
  if (o.output == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : text_lines) std::cout << l << "\n";
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s.empty() ? "-" : s;
}

// Compares a symbolic determinant against the interpolated implicit
// equation: the determinant must be a power of it, the exponent fixed by
// degree count.
template <class K>
ordered_json oracle_verdict(const tps::SurfaceParam<K>& P,
                            const tps::XForm<K>& value, uint64_t seed,
                            bool& pass) {
  int r = tps::base_degree_r(P);
  auto impl = tps::implicit_equation<K>(P, seed, r);
  pass = false;
  int power = 0;
  if (impl.degree > 0 && value.deg % impl.degree == 0) {
    power = value.deg / impl.degree;
    pass = tps::power_check(value, impl.form, power);
  }
  ordered_json j;
  j["implicit_degree"] = impl.degree;
  j["map_degree"] =
      impl.map_degree ? ordered_json(*impl.map_degree) : ordered_json(nullptr);
  j["power"] = power;
  j["match"] = pass;
  j["implicit_form"] = tps::render(impl.form);
  return j;
}

template <class K>
int cmd_analyze(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  auto R = tps::analyze<K>(P, o.trials, o.seed);
  ordered_json j = tps::report_json(R);
  j["field"] = tps::field_name<K>();
  std::vector<std::string> lines;
  lines.push_back("bidegree: (" + std::to_string(R.m) + "," +
                  std::to_string(R.n) + ")");
  lines.push_back("r: " + std::to_string(R.r));
  lines.push_back("deg(F)*deg(phi): " + std::to_string(R.implied_product));
  lines.push_back("generator degrees (s): " + join_ints(R.degrees_s));
  lines.push_back("generator degrees (t): " + join_ints(R.degrees_t));
  lines.push_back("mu0: " + std::to_string(R.mu0) +
                  "  nu0: " + std::to_string(R.nu0));
  lines.push_back("eta0: " + std::to_string(R.eta0.value) +
                  " (draws: " + join_ints(R.eta0.draws) + ")");
  lines.push_back("zeta0: " + std::to_string(R.zeta0.value) +
                  " (draws: " + join_ints(R.zeta0.draws) + ")");
  for (const auto& row : R.lq_table)
    lines.push_back("mu=" + std::to_string(row.mu) + ": planes " +
                    std::to_string(row.l) + ", quadrics " +
                    std::to_string(row.q));
  lines.push_back("window: " + join_ints(R.window));
  lines.push_back("window (transposed): " + join_ints(R.window_t));
  for (const auto& w : R.warnings) lines.push_back("warning: " + w);
  for (const auto& v : R.violations) lines.push_back("VIOLATION: " + v);
  emit(o, j, lines);
  return R.ok() ? 0 : 2;
}

template <class K>
int cmd_planes(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  auto V = tps::moving_planes(P, o.mu, o.nu);
  if (!V.verify(P))
    throw tps::internal_error("plane basis fails the substitution check");
  ordered_json j;
  j["field"] = tps::field_name<K>();
  j["mu"] = o.mu;
  j["nu"] = o.nu;
  j["dim"] = V.dim();
  ordered_json els = ordered_json::array();
  std::vector<std::string> lines;
  lines.push_back("moving planes at (" + std::to_string(o.mu) + "," +
                  std::to_string(o.nu) + "): dim " + std::to_string(V.dim()));
  for (int i = 0; i < V.dim(); ++i) {
    auto e = V.element(i);
    els.push_back(moving_form_json(e));
    lines.push_back("  [" + std::to_string(i) + "] " + moving_form_string(e));
  }
  j["elements"] = els;
  emit(o, j, lines);
  return 0;
}

template <class K>
int cmd_quadrics(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  auto src = parse_source(o.source);
  auto W = tps::quadratic_relations(P, o.mu, o.nu);
  auto Vp = tps::plane_generated_quadrics(P, o.mu, o.nu);
  auto Q = tps::quadric_columns(P, o.mu, o.nu, src, o.sat_cap);
  if (!Q.verify(P))
    throw tps::internal_error("quadric basis fails the substitution check");
  ordered_json j;
  j["field"] = tps::field_name<K>();
  j["mu"] = o.mu;
  j["nu"] = o.nu;
  j["source"] = o.source;
  j["full_dim"] = W.dim();
  j["plane_generated_dim"] = Vp.dim();
  j["dim"] = Q.dim();
  if (src == tps::QuadricSource::Saturated) {
    auto sat = tps::saturated_quadrics(P, o.mu, o.nu, o.sat_cap);
    j["saturation_exponent"] = sat.exponent;
    j["saturation_stable"] = sat.stable;
  }
  ordered_json els = ordered_json::array();
  std::vector<std::string> lines;
  lines.push_back("quadrics at (" + std::to_string(o.mu) + "," +
                  std::to_string(o.nu) + "): full " + std::to_string(W.dim()) +
                  ", plane-generated " + std::to_string(Vp.dim()) +
                  ", extra " + std::to_string(Q.dim()));
  for (int i = 0; i < Q.dim(); ++i) {
    auto e = Q.element(i);
    els.push_back(moving_form_json(e));
    lines.push_back("  [" + std::to_string(i) + "] " + moving_form_string(e));
  }
  j["elements"] = els;
  emit(o, j, lines);
  return 0;
}

template <class K>
int cmd_matrix(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  int mu = o.mu > 0 ? o.mu : tps::mu0(P);
  auto M = tps::assemble_mpq(P, mu - 1, P.n - 1, parse_source(o.source),
                             o.sat_cap);
  ordered_json j;
  j["field"] = tps::field_name<K>();
  j["mu"] = mu;
  j["coefficient_bidegree"] = {mu - 1, P.n - 1};
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  j["planes"] = M.nplanes;
  j["quadrics"] = M.nquadrics;
  j["square"] = M.square();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < M.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int jj = 0; jj < M.cols(); ++jj)
      row.push_back(tps::render(M.entry(i, jj)));
    rows.push_back(row);
  }
  j["row_monomials"] = [&] {
    ordered_json a = ordered_json::array();
    for (auto ij : M.row_monomials)
      a.push_back(tps::render_monomial(M.mu, M.nu, ij));
    return a;
  }();
  j["entries"] = rows;
  std::vector<std::string> lines;
  lines.push_back("matrix at mu=" + std::to_string(mu) + ": " +
                  std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                  " (" + std::to_string(M.nplanes) + " planes, " +
                  std::to_string(M.nquadrics) + " quadrics)");
  int rc = 0;
  if (M.square()) {
    auto D = tps::det_forms(M);
    auto Dn = D.normalized();
    j["determinant_raw"] = tps::render(D);
    j["determinant"] = tps::render(Dn);
    lines.push_back("determinant: " + tps::render(Dn));
    if (!o.no_verify) {
      bool pass = false;
      j["oracle"] = oracle_verdict<K>(P, Dn, o.seed, pass);
      lines.push_back(std::string("oracle check: ") +
                      (pass ? "PASS" : "FAIL"));
      if (!pass) rc = 2;
    }
  } else {
    for (int i = 0; i < M.rows(); ++i) {
      std::string line = "  [";
      for (int jj = 0; jj < M.cols(); ++jj) {
        if (jj) line += ", ";
        line += tps::render(M.entry(i, jj));
      }
      lines.push_back(line + "]");
    }
  }
  emit(o, j, lines);
  return rc;
}

template <class K>
int cmd_complex(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  int mu = o.mu > 0 ? o.mu : tps::mu0(P);
  auto C = tps::build_complex(P, mu - 1, P.n - 1, parse_source(o.source));
  auto D = tps::complex_determinant(C, o.seed);
  ordered_json j;
  j["field"] = tps::field_name<K>();
  j["mu"] = mu;
  j["rows"] = C.d1.rows();
  j["cols"] = C.d1.cols();
  j["rho"] = C.rho();
  j["planes"] = C.d1.nplanes;
  j["quadrics"] = C.d1.nquadrics;
  j["subset"] = D.subset;
  j["determinant"] = tps::render(D.value);
  std::vector<std::string> lines;
  lines.push_back("complex at mu=" + std::to_string(mu) + ": " +
                  std::to_string(C.d1.rows()) + " <- " +
                  std::to_string(C.d1.cols()) + " <- " +
                  std::to_string(C.rho()));
  lines.push_back("factored columns: " + join_ints(D.subset));
  lines.push_back("determinant: " + tps::render(D.value));
  int rc = 0;
  if (!o.no_verify) {
    bool pass = false;
    j["oracle"] = oracle_verdict<K>(P, D.value, o.seed, pass);
    lines.push_back(std::string("oracle check: ") + (pass ? "PASS" : "FAIL"));
    if (!pass) rc = 2;
  }
  emit(o, j, lines);
  return rc;
}

template <class K>
int cmd_implicitize(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  int r = tps::base_degree_r(P);
  auto impl = tps::implicit_equation<K>(P, o.seed, r);
  ordered_json j;
  j["field"] = tps::field_name<K>();
  j["r"] = r;
  j["degree"] = impl.degree;
  j["map_degree"] =
      impl.map_degree ? ordered_json(*impl.map_degree) : ordered_json(nullptr);
  j["samples_used"] = impl.samples_used;
  j["form"] = tps::render(impl.form);
  std::vector<std::string> lines;
  lines.push_back("implicit degree: " + std::to_string(impl.degree));
  lines.push_back("map degree: " +
                  (impl.map_degree ? std::to_string(*impl.map_degree) : "?"));
  lines.push_back("form: " + tps::render(impl.form));
  emit(o, j, lines);
  return 0;
}

template <class K>
int cmd_verify(const Options& o) {
  auto P = tps::load_surface<K>(o.surface_path);
  if (o.transpose) P = tps::transpose_params(P);
  ordered_json j;
  j["field"] = tps::field_name<K>();
  std::vector<std::string> lines;
  bool pass = false;
  if (!o.form.empty()) {
    auto F = tps::parse_xform<K>(o.form);
    auto samples = tps::sample_surface(P, o.sample_trials, o.seed);
    pass = true;
    int failures = 0;
    for (const auto& x : samples)
      if (!tps::kis_zero(F.eval(x))) ++failures;
    pass = failures == 0;
    j["mode"] = "form";
    j["samples"] = static_cast<int>(samples.size());
    j["failures"] = failures;
    lines.push_back("form vanishes on " +
                    std::to_string(static_cast<int>(samples.size()) - failures) +
                    "/" + std::to_string(samples.size()) + " samples");
  } else {
    int mu = o.mu > 0 ? o.mu : tps::mu0(P);
    auto M = tps::assemble_mpq(P, mu - 1, P.n - 1, parse_source(o.source),
                               o.sat_cap);
    if (!M.square())
      throw tps::input_error(
          "matrix at mu=" + std::to_string(mu) + " is " +
          std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
          "; pick mu inside the window or use the complex command");
    auto Dn = tps::det_forms(M).normalized();
    j["mode"] = "matrix";
    j["mu"] = mu;
    j["determinant"] = tps::render(Dn);
    j["oracle"] = oracle_verdict<K>(P, Dn, o.seed, pass);
    lines.push_back("determinant at mu=" + std::to_string(mu) + ": " +
                    tps::render(Dn));
  }
  j["verdict"] = pass;
  lines.push_back(std::string("verdict: ") + (pass ? "PASS" : "FAIL"));
  emit(o, j, lines);
  return pass ? 0 : 2;
}

template <class K>
int run(const std::string& cmd, const Options& o) {
  if (cmd == "analyze") return cmd_analyze<K>(o);
  if (cmd == "planes") return cmd_planes<K>(o);
  if (cmd == "quadrics") return cmd_quadrics<K>(o);
  if (cmd == "matrix") return cmd_matrix<K>(o);
  if (cmd == "complex") return cmd_complex<K>(o);
  if (cmd == "implicitize") return cmd_implicitize<K>(o);
  if (cmd == "verify") return cmd_verify<K>(o);
  throw tps::internal_error("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tps: exact implicitization of tensor-product surfaces via moving "
      "planes and quadrics"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_munu, bool munu_required) {
    sub->add_option("surface", o.surface_path,
                    "surface description (JSON with m, n, f[4])")
        ->required();
    sub->add_option("--field", o.field, "coefficient field")
        ->check(CLI::IsMember({"rational", "fp"}))
        ->capture_default_str();
    sub->add_option("--prime", o.prime,
                    "modulus for --field fp (prime below 2^62)")
        ->each([&](const std::string&) { o.prime_set = true; });
    sub->add_option("--seed", o.seed, "seed for randomized steps")
        ->capture_default_str();
    sub->add_option("--output", o.output, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_flag("--transpose", o.transpose,
                  "swap the roles of the two parameters first");
    if (needs_munu) {
      auto* mo = sub->add_option("--mu", o.mu, "s-degree");
      auto* no = sub->add_option("--nu", o.nu, "t-degree");
      if (munu_required) {
        mo->required();
        no->required();
      }
    }
    return sub;
  };

  auto* analyze = add_common(app.add_subcommand("analyze",
                                                "degree thresholds, dimension "
                                                "counts and bound checks"),
                             false, false);
  analyze->add_option("--trials", o.trials,
                      "random draws for the combination thresholds")
      ->capture_default_str();

  add_common(app.add_subcommand("planes", "basis of moving planes at (mu,nu)"),
             true, true);

  auto* quadrics = add_common(
      app.add_subcommand("quadrics",
                         "extra moving quadrics at (mu,nu) beyond the "
                         "plane-generated ones"),
      true, true);

  auto* matrix = app.add_subcommand(
      "matrix", "plane/quadric matrix with mu*n rows; determinant if square");
  add_common(matrix, false, false);
  matrix->add_option("--mu", o.mu, "matrix index (coefficient s-degree mu-1)");
  matrix->add_flag("--no-verify", o.no_verify,
                   "skip the interpolation cross-check");

  auto* complex_cmd = app.add_subcommand(
      "complex", "two-step presentation and its determinant");
  add_common(complex_cmd, false, false);
  complex_cmd->add_option("--mu", o.mu,
                          "matrix index (coefficient s-degree mu-1)");
  complex_cmd->add_flag("--no-verify", o.no_verify,
                        "skip the interpolation cross-check");

  add_common(app.add_subcommand(
                 "implicitize",
                 "implicit equation by exact interpolation on samples"),
             false, false);

  auto* verify = app.add_subcommand(
      "verify", "check a form, or the matrix determinant, against samples");
  add_common(verify, false, false);
  verify->add_option("--mu", o.mu, "matrix index (coefficient s-degree mu-1)");
  verify->add_option("--form", o.form, "homogeneous form in x0..x3 to test");
  verify->add_option("--trials", o.sample_trials,
                     "sample count for --form checks")
      ->capture_default_str();

  for (auto* sub : {quadrics, matrix, complex_cmd, verify}) {
    sub->add_option("--quadric-source", o.source,
                    "where extra quadric columns come from")
        ->check(CLI::IsMember({"default", "saturated"}))
        ->capture_default_str();
    sub->add_option("--sat-cap", o.sat_cap,
                    "largest shift exponent tried for saturation")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (o.prime_set && o.field != "fp")
      throw tps::input_error("--prime requires --field fp");
    std::string cmd = app.get_subcommands().front()->get_name();
    if (o.field == "fp") {
      tps::Fp::set_modulus(o.prime);
      return run<tps::Fp>(cmd, o);
    }
    return run<tps::Rat>(cmd, o);
  } catch (const tps::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tps::verification_error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
