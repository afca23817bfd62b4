#include "reports.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccq/cayley.hpp"
#include "ccq/cubic_conics.hpp"
#include "ccq/detmethod.hpp"
#include "ccq/exact_arith.hpp"
#include "ccq/heights.hpp"
#include "ccq/hilbert_samuel.hpp"
#include "ccq/pointcount.hpp"

namespace ccq::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json tagged(json value, const char* provenance) { return json{{"value", std::move(value)}, {"provenance", provenance}}; }
json exact(json v) { return tagged(std::move(v), "exact"); }
json fitted(json v) { return tagged(std::move(v), "fitted"); }
json overlay(json v) { return tagged(std::move(v), "paper-overlay"); }

json big(const Integer& z) { return z.fits_slong_p() ? json(z.get_si()) : json(to_string(z)); }

struct InputForms {
  std::vector<MultiPoly> forms;
  bool affine = false;  // x-variables
  int nvars = 0;
};

// One form per line, '#' comments; an optional "# nvars N" line fixes the variable count.
InputForms read_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<std::string> lines;
  int nvars = 0;
  bool uses_x = false, uses_t = false;
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream c(line.substr(hash + 1));
      std::string key;
      if (c >> key && key == "nvars") c >> nvars;
      line.resize(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.find('x') != std::string::npos) uses_x = true;
    if (line.find('T') != std::string::npos) uses_t = true;
    lines.push_back(line);
  }
  if (lines.empty()) throw ConfigError(path + " holds no polynomial");
  if (uses_x && uses_t) throw ConfigError(path + " mixes x<i> and T<i> variables");
  InputForms r;
  r.affine = uses_x;
  int n = nvars;
  for (const auto& l : lines) n = std::max(n, parse_poly_auto(l).nvars());
  r.nvars = n;
  for (const auto& l : lines) r.forms.push_back(parse_poly(l, n, default_names(n, uses_x ? "x" : "T")));
  return r;
}

std::vector<std::string> names_for(const InputForms& in) { return default_names(in.nvars, in.affine ? "x" : "T"); }

const std::string& input_path(const Config& cfg) {
  if (!cfg.surface.empty()) return cfg.surface;
  if (!cfg.curve.empty()) return cfg.curve;
  throw ConfigError(cfg.command + " needs --surface or --curve");
}

const std::string& surface_path(const Config& cfg) {
  if (cfg.surface.empty()) throw ConfigError(cfg.command + " needs --surface");
  return cfg.surface;
}

void require_B(const Config& cfg) {
  if (cfg.B.empty()) throw ConfigError(cfg.command + " needs --B");
  for (long b : cfg.B)
    if (b < 0) throw ConfigError("--B entries must be nonnegative");
}

std::optional<ExternalConstants> load_constants(const Config& cfg) {
  if (cfg.constants.empty()) return std::nullopt;
  return ExternalConstants::load(cfg.constants);
}

json constants_echo(const std::optional<ExternalConstants>& k) {
  if (!k) return nullptr;
  json j{{"label", k->label()}};
  for (const auto& [key, v] : k->values()) j["values"][key] = v;
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json fit_json(const ExponentFit& fit) {
  return {{"exponent", fitted(fit.exponent)},
          {"intercept", fitted(fit.intercept)},
          {"residuals", fitted(fit.residuals)},
          {"points_used", exact(fit.points_used)}};
}

json line_json(const RationalLine& l) {
  const auto names = default_names(4, "T");
  json p = json::array();
  for (const auto& x : l.line.plucker) p.push_back(big(x));
  return {{"l1", to_text(l.l1, names)}, {"l2", to_text(l.l2, names)}, {"plucker", exact(p)}};
}

CountOptions count_options(const Config& cfg) {
  CountOptions o;
  o.threads = cfg.threads;
  o.budget = cfg.budget;
  return o;
}

// Which variety an input file describes.
DetVariety variety_of(const InputForms& in) {
  if (in.affine) {
    if (in.forms.size() != 1) throw ConfigError("affine input must hold one polynomial");
    return DetVariety::affine(in.forms[0]);
  }
  if (in.forms.size() == 1 && in.nvars == 3) return DetVariety::plane_curve(in.forms[0]);
  if (in.forms.size() == 1 && in.nvars == 4) return DetVariety::surface(in.forms[0]);
  if (in.forms.size() == 2 && in.nvars == 4) {
    const bool first_linear = in.forms[0].total_degree() == 1;
    return DetVariety::curve_in_plane(in.forms[first_linear ? 1 : 0], in.forms[first_linear ? 0 : 1]);
  }
  throw ConfigError("expected a plane curve (3 variables), a surface (4 variables) or a plane and a form (4 variables)");
}

json cmd_cayley(const Config& cfg) {
  const auto in = read_forms(input_path(cfg));
  const auto X = variety_of(in);
  json r;
  MultiPoly psi;
  std::vector<std::string> names;
  int n = 0, d = 0;
  switch (X.kind) {
    case DetVariety::Kind::curve_in_plane:
      psi = cayley_plane_curve(X.form, X.plane);
      names = plucker_names();
      n = 3, d = 1;
      r["construction"] = "plane section pullback";
      r["agrees_with_direct"] = exact(psi == cayley_plane_curve_direct(X.form, X.plane));
      break;
    case DetVariety::Kind::plane_curve:
    case DetVariety::Kind::surface:
      psi = cayley_hypersurface(X.form);
      names = default_names(X.nvars(), "w");
      n = X.nvars() - 1, d = n - 1;
      r["construction"] = "hypersurface";
      break;
    case DetVariety::Kind::affine_hypersurface: throw ConfigError("cayley needs projective forms");
  }
  r["form"] = to_text(psi, names);
  r["degree"] = exact(psi.total_degree());
  r["terms"] = exact(psi.size());
  r["h_psi"] = exact(poly_height(psi).h);
  if (X.kind == DetVariety::Kind::curve_in_plane) {
    const auto audit = height_comparison_audit(psi, n, d, X.degree());
    r["height_comparison"] = {{"lower_offset", exact(audit.lower_offset)},
                              {"upper_offset", exact(audit.upper_offset)},
                              {"h_psi_nonnegative", exact(audit.h_psi_nonnegative)}};
  }
  return r;
}

json cmd_pencil(const Config& cfg, std::vector<std::string>& viol) {
  const auto in = read_forms(surface_path(cfg));
  if (in.affine || in.nvars != 4 || in.forms.size() != 1) throw ConfigError("pencil needs one cubic form in T0..T3");
  const MultiPoly& f = in.forms[0];
  const auto lines = find_lines(f, cfg.line_bound, cfg.budget);
  if (lines.empty()) throw PreconditionError("no rational line of height <= " + std::to_string(cfg.line_bound));
  const ConicPencil pen = conic_family(f, lines[0]);
  json r;
  r["line"] = line_json(lines[0]);
  r["b_degree_min"] = exact(pen.checks.min_b_degree);
  r["b_degree_max"] = exact(pen.checks.max_b_degree);
  r["all_degree_two"] = exact(pen.checks.all_degree_two);
  r["gcd_one"] = exact(pen.checks.gcd_one);
  r["content_degree"] = exact(pen.checks.content_degree);
  if (!pen.checks.all_degree_two) viol.push_back("b-family entries are not all of degree 2");
  if (!pen.checks.gcd_one) viol.push_back("b-family has a common factor");

  const auto fam = b_family(pen);
  std::size_t zeros = 0;
  for (const auto& [t1, t2] : sample_parameters(cfg.nonvanishing, 1000, cfg.seed)) {
    bool all_zero = true;
    for (const auto& v : evaluate_family(fam, t1, t2))
      if (v != 0) all_zero = false;
    zeros += all_zero;
  }
  r["nonvanishing"] = {{"samples", exact(cfg.nonvanishing)}, {"all_zero", exact(zeros)}};
  if (zeros) viol.push_back("b-family vanishes at a sampled parameter");

  const auto lf = leading_family(pen);
  r["leading"] = {{"rank", exact(lf.rank)},
                  {"rank_in_range", exact(lf.rank_in_range)},
                  {"no_rational_common_zero", exact(lf.no_rational_common_zero)},
                  {"top_part", to_string(lf.top_part_irreducible)}};
  if (lf.rank_in_range) {
    std::vector<MultiPoly> a(lf.a.begin(), lf.a.end());
    const auto img = family_image(a);
    r["leading"]["image"] = {{"form_degree", exact(img.form_degree)},
                             {"fiber_size", exact(img.fiber_size)},
                             {"image_degree", exact(img.image_degree)},
                             {"double_cover", exact(img.double_cover)}};
  } else {
    viol.push_back("a-family rank " + std::to_string(lf.rank) + " is not 2 or 3");
  }

  const auto hp = height_pairing_check(pen, sample_parameters(cfg.samples, 100000, cfg.seed + 1));
  r["height_pairing"] = {{"samples", exact(hp.samples)},
                         {"max_residual", exact(hp.max_residual)},
                         {"slope", fitted(hp.slope)},
                         {"intercept", fitted(hp.intercept)},
                         {"fitted_degree", fitted(hp.fitted_degree)},
                         {"expected_degree", overlay(2)}};
  if (std::abs(hp.slope) > 0.1) viol.push_back("height pairing slope outside [-0.1, 0.1]");
  return r;
}

json cmd_census(const Config& cfg) {
  require_B(cfg);
  const auto in = read_forms(surface_path(cfg));
  if (in.affine || in.nvars != 4 || in.forms.size() != 1) throw ConfigError("census needs one cubic form in T0..T3");
  const auto lines = find_lines(in.forms[0], cfg.line_bound, cfg.budget);
  if (lines.empty()) throw PreconditionError("no rational line of height <= " + std::to_string(cfg.line_bound));
  const auto pen = conic_family(in.forms[0], lines[0]);
  json r;
  r["line"] = line_json(lines[0]);
  std::vector<double> N;
  for (long B : cfg.B) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = conic_census(pen, Integer(B));
    json row{{"B", B},
             {"count", exact(c.count)},
             {"complete", exact(c.complete)},
             {"cutoff_certified", exact(c.cutoff.certified)},
             {"t_max", exact(big(c.cutoff.t_max))}};
    if (cfg.timing) row["seconds"] = seconds_since(t0);
    r["rows"].push_back(row);
    N.push_back(static_cast<double>(c.count));
  }
  r["fit"] = fit_json(fit_exponent(cfg.B, N));
  r["overlay_exponent"] = overlay(1.0);
  return r;
}

json cmd_count(const Config& cfg) {
  require_B(cfg);
  const auto in = read_forms(input_path(cfg));
  const auto X = variety_of(in);
  const auto opt = count_options(cfg);
  json r;
  std::vector<double> N;
  for (long B : cfg.B) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = variety_points(X, B, opt).size();
    json row{{"B", B}, {"count", exact(n)}};
    if (cfg.timing) row["seconds"] = seconds_since(t0);
    r["rows"].push_back(row);
    N.push_back(static_cast<double>(n));
  }
  r["mode"] = in.affine ? "affine max-norm" : "projective height";
  if (cfg.B.size() >= 2) r["fit"] = fit_json(fit_exponent(cfg.B, N));
  return r;
}

json cmd_aux(const Config& cfg) {
  require_B(cfg);
  const auto in = read_forms(input_path(cfg));
  const auto X = variety_of(in);
  OmegaOptions opt;
  opt.count = count_options(cfg);
  opt.constants = load_constants(cfg);
  json r;
  std::vector<double> om;
  double shape = 0;
  std::string formula;
  for (long B : cfg.B) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = minimal_omega(X, B, opt);
    json row{{"B", B},
             {"points", exact(rep.points)},
             {"omega", exact(rep.omega)},
             {"form", to_text(rep.aux.form, names_for(in))}};
    if (rep.bound_value) row["bound"] = overlay(*rep.bound_value);
    if (rep.within_bound) row["within_bound"] = exact(*rep.within_bound);
    if (cfg.timing) row["seconds"] = seconds_since(t0);
    r["rows"].push_back(row);
    om.push_back(rep.omega);
    shape = rep.bound_exponent;
    formula = rep.bound_formula;
  }
  r["note"] = "omega is an empirical witness degree, a lower-bound companion to the upper bound";
  r["bound_formula"] = formula;
  r["overlay_exponent"] = overlay(shape);
  if (cfg.B.size() >= 2) r["fit"] = fit_json(fit_exponent(cfg.B, om));
  r["constants"] = constants_echo(opt.constants);
  return r;
}

json cmd_hs(const Config& cfg, std::vector<std::string>& viol) {
  const auto q = q_lower_bound_check(cfg.d, cfg.mu, cfg.m_max);
  json r;
  r["q_bound"] = {{"d", cfg.d},
                  {"mu", cfg.mu},
                  {"m_max", cfg.m_max},
                  {"violations", exact(q.violations)},
                  {"min_slack", exact(q.min_slack)},
                  {"argmin_m", exact(q.argmin_m)}};
  if (q.violations) viol.push_back("local Hilbert-Samuel lower bound fails");
  long checked = 0, failed = 0;
  for (int delta = 2; delta <= cfg.delta_max; ++delta)
    for (long D = delta; D <= cfg.D_max; ++D) {
      ++checked;
      if (!geometric_hs_window(cfg.d, delta, D).holds) ++failed;
    }
  r["geometric_window"] = {{"d", cfg.d},
                           {"delta_max", cfg.delta_max},
                           {"D_max", cfg.D_max},
                           {"checked", exact(checked)},
                           {"violations", exact(failed)}};
  if (failed) viol.push_back("geometric Hilbert-Samuel window fails");
  return r;
}

json cmd_primes(const Config& cfg, std::vector<std::string>& viol) {
  if (cfg.x < 2) throw ConfigError("--x must be at least 2");
  const auto s = theta_psi_phi(cfg.x);
  const auto m = mertens_check(cfg.x, std::max(1.0, cfg.x / 1000));
  json r;
  r["x"] = cfg.x;
  r["theta"] = exact(s.theta);
  r["psi"] = exact(s.psi);
  r["phi"] = exact(s.phi);
  r["mertens"] = {{"sup_exact", exact(m.sup_exact)}, {"sup_sampled", exact(m.sup_sampled)}, {"epsilon2", fitted(m.epsilon2)}};
  r["bertrand_prime"] = exact(big(bertrand_prime(Integer(static_cast<long>(cfg.x)))));
  long bad = 0;
  for (long a = 2; a <= cfg.a_max; ++a)
    if (!prime_sum_over_divisors(Integer(a)).within_bound) ++bad;
  r["divisor_prime_sum"] = {{"a_max", cfg.a_max}, {"violations", exact(bad)}};
  if (bad) viol.push_back("prime sum over divisors exceeds log log a + 2");
  return r;
}

json cmd_verify(const Config& cfg, std::vector<std::string>& viol) {
  require_B(cfg);
  const auto in = read_forms(surface_path(cfg));
  if (in.forms.size() != 1) throw ConfigError("verify needs one cubic");
  const auto constants = load_constants(cfg);
  const auto opt = count_options(cfg);
  const ExperimentReport rep = in.affine ? integral_conics_experiment(in.forms[0], cfg.B, cfg.line_bound, opt)
                                         : points_on_conics_experiment(in.forms[0], cfg.B, cfg.line_bound, opt);
  const BoundKind kind = in.affine ? BoundKind::ConicsIntegral : BoundKind::ConicsRational;
  json r;
  r["kind"] = rep.kind;
  r["lines_used"] = exact(rep.lines_used);
  r["proxy"] = rep.proxy_note;
  for (const auto& row : rep.rows) {
    json j{{"B", row.B}, {"total", exact(row.total)}, {"off_lines", exact(row.off_lines)}};
    if (constants) {
      BoundParams prm;
      prm.n = 3;
      prm.delta = 3;
      prm.B = static_cast<double>(row.B);
      const auto bv = bound_evaluator(kind, prm, *constants);
      j["bound"] = overlay(bv.value);
      const bool ok = static_cast<double>(row.off_lines) <= bv.value;
      j["within_bound"] = exact(ok);
      if (!ok) viol.push_back("off-line count exceeds the bound at B=" + std::to_string(row.B));
    }
    if (cfg.timing) j["seconds"] = row.seconds;
    r["rows"].push_back(j);
  }
  r["fit"] = fit_json(rep.fit);
  r["overlay_exponent"] = overlay(rep.overlay_exponent);
  r["constants"] = constants_echo(constants);
  return r;
}

json cmd_classify(const Config& cfg) {
  const auto in = read_forms(surface_path(cfg));
  if (in.affine || in.nvars != 4 || in.forms.size() != 1) throw ConfigError("classify needs one cubic form in T0..T3");
  const MultiPoly& f = in.forms[0];
  const auto c = classify_cubic(f);
  json r;
  r["essential_vars"] = exact(c.essential_vars);
  r["essential_vars_affine"] = exact(c.essential_vars_affine);
  r["cone"] = exact(c.cone);
  r["cylinder"] = exact(c.cylinder);
  for (std::size_t i = 0; i < c.primes.size(); ++i)
    r["smooth_mod_p"].push_back({{"p", c.primes[i]}, {"smooth", exact(static_cast<bool>(c.smooth_mod_p[i]))}});
  r["singular_line"] = c.singular_line.has_value();
  r["non_ruled"] = exact(c.non_ruled);
  r["non_ruled_confidence"] = to_string(c.non_ruled_confidence);
  for (std::uint64_t p : default_smoothness_primes()) {
    const auto ir = absolutely_irreducible_cubic_mod_p(f, p, cfg.budget);
    r["irreducibility"].push_back({{"p", p},
                                   {"verdict", to_string(ir.verdict)},
                                   {"extension_degree", ir.extension_degree},
                                   {"factor", ir.factor}});
  }
  for (const auto& l : find_lines(f, cfg.line_bound, cfg.budget)) r["lines"].push_back(line_json(l));
  if (!r.contains("lines")) r["lines"] = json::array();
  return r;
}

json config_echo(const Config& cfg) {
  json j{{"B", cfg.B},       {"budget", cfg.budget},         {"threads", cfg.threads},
         {"seed", cfg.seed}, {"line_bound", cfg.line_bound}, {"samples", cfg.samples},
         {"nonvanishing_samples", cfg.nonvanishing}};
  if (!cfg.surface.empty()) j["surface"] = cfg.surface;
  if (!cfg.curve.empty()) j["curve"] = cfg.curve;
  if (!cfg.constants.empty()) j["constants"] = cfg.constants;
  if (cfg.command == "hs") j.update({{"d", cfg.d}, {"mu", cfg.mu}, {"m_max", cfg.m_max}, {"delta_max", cfg.delta_max}, {"D_max", cfg.D_max}});
  if (cfg.command == "primes") j.update({{"x", cfg.x}, {"a_max", cfg.a_max}});
  return j;
}

json forms_echo(const Config& cfg) {
  const std::string& path = !cfg.surface.empty() ? cfg.surface : cfg.curve;
  if (path.empty()) return nullptr;
  const auto in = read_forms(path);
  json j = json::array();
  for (const auto& f : in.forms) j.push_back(to_text(f, names_for(in)));
  return j;
}

}  // namespace

json run_command(const Config& cfg) {
  std::vector<std::string> viol;
  json results;
  const std::string& c = cfg.command;
  if (c == "cayley") results = cmd_cayley(cfg);
  else if (c == "pencil") results = cmd_pencil(cfg, viol);
  else if (c == "census") results = cmd_census(cfg);
  else if (c == "count") results = cmd_count(cfg);
  else if (c == "aux") results = cmd_aux(cfg);
  else if (c == "hs") results = cmd_hs(cfg, viol);
  else if (c == "primes") results = cmd_primes(cfg, viol);
  else if (c == "verify") results = cmd_verify(cfg, viol);
  else if (c == "classify") results = cmd_classify(cfg);
  else throw ConfigError("unknown command " + c);
  json report{{"schema_version", kSchemaVersion},
              {"command", c},
              {"config", config_echo(cfg)},
              {"inputs", forms_echo(cfg)},
              {"results", std::move(results)},
              {"violations", viol}};
  return report;
}

namespace {

std::string cell(const json& v) {
  if (v.is_object() && v.contains("value")) return cell(v["value"]);
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::ostringstream& out) {
  if (v.is_object() && !(v.contains("value") && v.contains("provenance"))) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out << prefix << "," << cell(v) << "\n";
}

}  // namespace

std::string to_csv(const json& report) {
  std::ostringstream out;
  const json& res = report.at("results");
  if (res.contains("rows") && res["rows"].is_array() && !res["rows"].empty()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : res["rows"][0].items()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& row : res["rows"]) {
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << (row.contains(keys[i]) ? cell(row[keys[i]]) : "");
      out << "\n";
    }
    return out.str();
  }
  flatten(res, "", out);
  return out.str();
}

std::vector<std::string> violations(const json& report) {
  return report.value("violations", std::vector<std::string>{});
}

}  // namespace ccq::cli
