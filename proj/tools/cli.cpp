#include "cli.hpp"

#include "zpe/casimir.hpp"
#include "zpe/emsum.hpp"
#include "zpe/errors.hpp"
#include "zpe/lamb.hpp"
#include "zpe/regseries.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace zpe::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using Config = std::map<std::string, std::string>;

struct FlagSpec {
  std::string flag;
  std::string key;
  std::string help;
};

struct Command {
  std::string name;
  std::string description;
  std::vector<FlagSpec> flags;
  /// Keys echoed into the output header, with their defaults.
  std::vector<std::pair<std::string, std::string>> defaults;
  std::function<int(const Config&, std::ostream&, std::ostream&)> body;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

const std::string& get(const Config& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) throw UsageError("missing setting '" + key + "'");
  return it->second;
}

std::optional<int> parse_order(const std::string& text) {
  if (text == "optimal") return std::nullopt;
  std::size_t used = 0;
  int r = 0;
  try {
    r = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw UsageError("order must be 'optimal' or a positive integer, got '" + text + "'");
  }
  if (used != text.size() || r < 1) {
    throw UsageError("order must be 'optimal' or a positive integer, got '" + text + "'");
  }
  return r;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": expected an integer, got '" + text + "'");
  }
  if (used != text.size()) throw UsageError(what + ": expected an integer, got '" + text + "'");
  return v;
}

void echo_config(const Config& cfg, const std::vector<std::pair<std::string, std::string>>& keys,
                 std::ostream& out) {
  for (const auto& [key, unused] : keys) {
    (void)unused;
    out << "# " << key << " = " << cfg.at(key) << '\n';
  }
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

// ---- gfunc ---------------------------------------------------------------

int cmd_gfunc(const Config& cfg, std::ostream& out, std::ostream&) {
  const std::string& s_spec = get(cfg, "s_grid");
  if (s_spec.empty()) throw UsageError("--s is required");
  const std::vector<double> s_grid = parse_grid(s_spec);
  std::vector<std::string> eps_tokens;
  std::vector<double> eps;
  {
    std::stringstream ss(get(cfg, "eps"));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      const double e = parse_number(tok);
      if (!(e > 0.0)) throw UsageError("every eps must be positive");
      eps_tokens.push_back(tok);
      eps.push_back(e);
    }
  }
  if (eps.empty()) throw UsageError("--eps needs at least one value");
  const double eps_min = *std::min_element(eps.begin(), eps.end());
  std::vector<regseries::RegularizationParams> params;
  for (double e : eps) params.push_back(regseries::RegularizationParams::for_epsilon(e));
  const auto min_params = regseries::RegularizationParams::for_epsilon(eps_min);

  std::vector<std::string> header{"s", "g_closed"};
  for (const auto& tok : eps_tokens) header.push_back("g_regularized_eps=" + tok);
  header.push_back("remainder_R1_eps=" + format_number(eps_min));
  out << csv_row(header);
  for (double s : s_grid) {
    std::vector<std::string> row{format_number(s), format_number(regseries::g_closed(s))};
    for (const auto& p : params) row.push_back(format_number(regseries::g_regularized(s, p)));
    row.push_back(format_number(regseries::remainder_r1(s, eps_min, min_params)));
    out << csv_row(row);
  }
  return kExitOk;
}

// ---- casimir -------------------------------------------------------------

std::vector<casimir::ProfileFamily> parse_profiles(const std::string& text) {
  if (text == "all") {
    return {casimir::ProfileFamily::gaussian, casimir::ProfileFamily::quartic,
            casimir::ProfileFamily::sech};
  }
  try {
    return {casimir::parse_profile(text)};
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_casimir(const Config& cfg, std::ostream& out, std::ostream& err) {
  const casimir::PlateGeometry geom(parse_number(get(cfg, "plate_size"), true),
                                    parse_number(get(cfg, "separation"), true));
  const double kratio = parse_number(get(cfg, "kratio"));
  const double tol = parse_number(get(cfg, "tolerance"));
  if (!(kratio > 0.0)) throw UsageError("kratio must be positive");
  if (kratio < 10.0) err << "warning: kappa_phi/kappa_d = " << kratio << " is below 10; regulator effects are large\n";
  if (geom.aspect_warning()) err << "warning: d/L exceeds 0.1; plates are not wide compared with their gap\n";

  const double closed = casimir::casimir_energy(
      geom, casimir::CutoffProfile(casimir::ProfileFamily::gaussian, 1.0), casimir::EnergyRoute::closed_form);
  out << csv_row({"profile", "route", "energy_per_nm", "energy_eV", "relative_deviation"});
  double spread = 0.0;
  auto emit = [&](std::string_view profile, casimir::EnergyRoute route, double value) {
    const double rel = (value - closed) / std::abs(closed);
    spread = std::max(spread, std::abs(rel));
    out << csv_row({std::string(profile), std::string(casimir::to_string(route)), format_number(value),
                    format_number(value * lamb::kHbarCEvNm), format_number(rel)});
  };
  emit("none", casimir::EnergyRoute::closed_form, closed);
  emit("none", casimir::EnergyRoute::expansion,
       casimir::casimir_energy(geom, casimir::CutoffProfile(casimir::ProfileFamily::gaussian, 1.0),
                               casimir::EnergyRoute::expansion));
  for (auto family : parse_profiles(get(cfg, "profile"))) {
    const casimir::CutoffProfile profile(family, kratio * geom.kappa_d());
    emit(casimir::to_string(family), casimir::EnergyRoute::quadrature,
         casimir::casimir_energy(geom, profile, casimir::EnergyRoute::quadrature));
  }
  out << "# max_relative_deviation = " << format_number(spread) << '\n';
  if (spread > tol) {
    err << "casimir: routes disagree by " << format_number(spread) << " > tolerance " << format_number(tol) << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---- hcasimir ------------------------------------------------------------

int cmd_hcasimir(const Config& cfg, std::ostream& out, std::ostream& err) {
  const casimir::PlateGeometry geom(parse_number(get(cfg, "plate_size"), true),
                                    parse_number(get(cfg, "separation"), true));
  casimir::SpectralWeight w;
  w.amplitude = parse_number(get(cfg, "amplitude"));
  w.beta = parse_number(get(cfg, "beta"));
  w.gamma = parse_int(get(cfg, "gamma"), "gamma");
  w.xi = parse_number(get(cfg, "xi"));
  w.eta = parse_number(get(cfg, "eta_star"));
  const double kratio = parse_number(get(cfg, "kratio"));
  if (!(kratio > 0.0)) throw UsageError("kratio must be positive");
  if (kratio < 10.0) err << "warning: kappa_phi/kappa_d = " << kratio << " is below 10; regulator effects are large\n";
  const auto order = parse_order(get(cfg, "order"));
  const auto family = casimir::parse_profile(get(cfg, "profile"));

  const auto expansion = casimir::h_casimir_expansion(w, geom, order);
  const auto regulated =
      casimir::h_casimir_quadrature(w, geom, casimir::CutoffProfile(family, kratio * geom.kappa_d()));
  casimir::LimitOptions limit_options;
  limit_options.family = family;
  const auto limit = casimir::h_casimir_quadrature_limit(w, geom, limit_options);

  out << csv_row({"route", "value", "error_bound", "terms"});
  out << csv_row({"expansion", format_number(expansion.value), format_number(expansion.remainder_bound),
                  std::to_string(expansion.series.truncation_index)});
  out << csv_row({"quadrature_regulated", format_number(regulated.value),
                  format_number(regulated.error_estimate), std::to_string(regulated.panels_used)});
  out << csv_row({"quadrature_limit", format_number(limit.value), format_number(limit.error_estimate),
                  std::to_string(limit.panels_used)});
  return kExitOk;
}

// ---- lamb ----------------------------------------------------------------

int cmd_lamb(const Config& cfg, std::ostream& out, std::ostream&) {
  const double eta = parse_number(get(cfg, "eta_star"));
  const double log_ratio = parse_number(get(cfg, "log_ratio"));
  const auto order = parse_order(get(cfg, "order"));
  const auto ctx = lamb::LambContext::from_ratios(eta, log_ratio);
  const auto bethe = lamb::bethe_relative_shift(ctx, order);
  const auto welton = lamb::welton_relative_shift(ctx, order);
  const int rows = std::max(bethe.series.truncation_index, welton.series.truncation_index);

  out << csv_row({"n", "bethe_term", "welton_term", "bethe_partial", "welton_partial", "bethe_bound",
                  "welton_bound"});
  double bp = 0.0;
  double wp = 0.0;
  const double inv_log = 1.0 / ctx.log_factor();
  for (int n = 1; n <= rows; ++n) {
    const double bt = lamb::bethe_term(n, eta) * inv_log;
    const double wt = lamb::welton_term(n, eta) * inv_log;
    bp += bt;
    wp += wt;
    auto bound = [&](double (*term)(int, double)) {
      return n < lamb::kMaxOrder ? std::abs(term(n + 1, eta)) * inv_log : std::abs(term(n, eta)) * inv_log;
    };
    out << csv_row({std::to_string(n), format_number(bt), format_number(wt), format_number(bp),
                    format_number(wp), format_number(bound(&lamb::bethe_term)),
                    format_number(bound(&lamb::welton_term))});
  }
  out << "# leading = " << format_number(lamb::leading_relative_shift(ctx)) << '\n';
  out << "# bethe = " << format_number(bethe.value) << " bound " << format_number(bethe.remainder_bound)
      << " terms " << bethe.series.truncation_index << '\n';
  out << "# welton = " << format_number(welton.value) << " bound " << format_number(welton.remainder_bound)
      << " terms " << welton.series.truncation_index << '\n';
  return kExitOk;
}

// ---- qd-sweep ------------------------------------------------------------

lamb::Material material_from(const Config& cfg) {
  lamb::Material m;
  try {
    m = lamb::builtin_material(get(cfg, "material"));
  } catch (const DomainError&) {
    m.name = get(cfg, "material");
  }
  if (!get(cfg, "electron_mass_ratio").empty()) m.electron_mass_ratio = parse_number(get(cfg, "electron_mass_ratio"));
  if (!get(cfg, "hole_mass_ratio").empty()) m.hole_mass_ratio = parse_number(get(cfg, "hole_mass_ratio"));
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string(e.what()) + " (unknown material needs electron_mass_ratio and hole_mass_ratio)");
  }
  return m;
}

int cmd_qd_sweep(const Config& cfg, std::ostream& out, std::ostream&) {
  const bool has_r = !get(cfg, "r_grid").empty();
  const bool has_d = !get(cfg, "d_grid").empty();
  if (has_r == has_d) throw UsageError("give exactly one of --R-grid and --d-grid");
  const lamb::Material material = material_from(cfg);
  lamb::Carrier carrier;
  try {
    carrier = lamb::parse_carrier(get(cfg, "carrier"));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::vector<lamb::SweepRow> rows;
  try {
    if (has_r) {
      rows = lamb::sweep_radius(material, carrier, parse_number(get(cfg, "separation"), true),
                                parse_grid(get(cfg, "r_grid"), true));
    } else {
      rows = lamb::sweep_distance(material, carrier, parse_number(get(cfg, "radius"), true),
                                  parse_grid(get(cfg, "d_grid"), true));
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  out << csv_row({"R_nm", "d_nm", "carrier", "eta_star", "validity_ratio", "valid", "shift_leading",
                  "shift_order2"});
  for (const auto& r : rows) {
    out << csv_row({format_number(r.R), format_number(r.d), std::string(lamb::to_string(r.carrier)),
                    format_number(r.eta_star), format_number(r.validity_ratio), r.valid ? "true" : "false",
                    format_number(r.shift_leading), format_number(r.shift_order2)});
  }
  return kExitOk;
}

// ---- em-check ------------------------------------------------------------

int cmd_em_check(const Config&, std::ostream& out, std::ostream&) {
  out << csv_row({"check", "value", "reference", "abs_error", "allowed", "pass"});
  bool all = true;
  auto emit = [&](const std::string& name, double value, double reference, double allowed) {
    const double e = std::abs(value - reference);
    const bool pass = e <= allowed;
    all = all && pass;
    out << csv_row({name, format_number(value), format_number(reference), format_number(e),
                    format_number(allowed), pass ? "true" : "false"});
  };

  for (int r = 1; r <= 3; ++r) {
    const int degree = 2 * r - 1;
    auto f = emsum::SmoothFunction::analytic(
        [degree](double t) { return std::pow(t, degree); },
        [degree](int m, double t) {
          if (m > degree) return 0.0;
          double c = 1.0;
          for (int k = 0; k < m; ++k) c *= degree - k;
          return c * std::pow(t, degree - m);
        });
    double direct = 0.0;
    for (int p = 0; p <= 10; ++p) direct += std::pow(p, degree);
    emit("polynomial_degree_" + std::to_string(degree) + "_r" + std::to_string(r),
         emsum::em_sum(f, 10, r).estimate, direct, 1e-12 * direct);
  }

  auto gauss = emsum::SmoothFunction::analytic(
      [](double t) { return std::exp(-t * t); },
      [](int m, double t) {
        // f^(m) = (-1)^m H_m(t) e^{-t^2}, physicists' Hermite recurrence.
        double h0 = 1.0;
        double h1 = 2.0 * t;
        if (m == 0) return std::exp(-t * t);
        for (int k = 1; k < m; ++k) {
          const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
          h0 = h1;
          h1 = h2;
        }
        return ((m % 2) ? -h1 : h1) * std::exp(-t * t);
      });
  double gauss_direct = 0.0;
  for (int p = 0; p <= 20; ++p) gauss_direct += std::exp(-double(p) * p);
  for (int r = 1; r <= 3; ++r) {
    const auto res = emsum::em_sum(gauss, 20, r);
    emit("gaussian_sum_r" + std::to_string(r), res.estimate, gauss_direct, res.remainder_bound);
  }

  const double z = 10.0;
  const auto stirling = emsum::asymptotic_eval([z](int n) { return emsum::stirling_term(n, z); }, 8, 8);
  const double reference = std::lgamma(z) - (z - 0.5) * std::log(z) + z - 0.5 * std::log(2.0 * kPi);
  emit("stirling_z10_r8", stirling.partial_sum, reference, stirling.remainder_bound + 1e-15);

  emit("bethe_inner_sum_1e4", emsum::bethe_inner_sum(10000), 1.0 / std::sqrt(2.0), 0.012);
  return all ? kExitOk : kExitCheckFailed;
}

// ---- registry ------------------------------------------------------------

std::vector<Command> commands() {
  const std::vector<std::pair<std::string, std::string>> material_defaults{
      {"material", "InAs"}, {"electron_mass_ratio", ""}, {"hole_mass_ratio", ""}, {"carrier", "electron"}};
  std::vector<Command> list;
  list.push_back({"gfunc",
                  "tabulate g, its regularized series and the comb remainder",
                  {{"--s", "s_grid", "s grid a:b:step or list"}, {"--eps", "eps", "comma-separated epsilons"}},
                  {{"s_grid", ""}, {"eps", "1e-3"}},
                  cmd_gfunc});
  list.push_back({"casimir",
                  "Casimir energy by closed form, expansion and quadrature",
                  {{"--L", "plate_size", "plate size, nm (um suffix allowed)"},
                   {"--d", "separation", "plate separation, nm"},
                   {"--profile", "profile", "gaussian, quartic, sech or all"},
                   {"--kratio", "kratio", "kappa_phi / kappa_d"},
                   {"--tol", "tolerance", "allowed relative deviation"}},
                  {{"plate_size", "1"}, {"separation", "1"}, {"profile", "gaussian"}, {"kratio", "1000"},
                   {"tolerance", "1e-3"}},
                  cmd_casimir});
  list.push_back({"hcasimir",
                  "plate functional for an arbitrary spectral weight",
                  {{"--L", "plate_size", "plate size, nm"},
                   {"--d", "separation", "plate separation, nm"},
                   {"--A", "amplitude", "amplitude A"},
                   {"--beta", "beta", "exponent beta >= 0"},
                   {"--gamma", "gamma", "integer exponent gamma"},
                   {"--xi", "xi", "shift xi"},
                   {"--eta", "eta_star", "shift eta"},
                   {"--profile", "profile", "gaussian, quartic or sech"},
                   {"--kratio", "kratio", "kappa_phi / kappa_d for the regulated quadrature"},
                   {"--r", "order", "'optimal' or a fixed order"}},
                  {{"plate_size", "1"}, {"separation", "1"}, {"amplitude", "1"}, {"beta", "0"}, {"gamma", "-2"},
                   {"xi", "0"}, {"eta_star", "10"}, {"profile", "gaussian"}, {"kratio", "1000"},
                   {"order", "optimal"}},
                  cmd_hcasimir});
  list.push_back({"lamb",
                  "Bethe and Welton relative shift series",
                  {{"--eta", "eta_star", "kappa_star / kappa_d"},
                   {"--logratio", "log_ratio", "ln(m_star / kappa_star)"},
                   {"--r", "order", "'optimal' or a fixed order"}},
                  {{"eta_star", "10"}, {"log_ratio", "1"}, {"order", "optimal"}},
                  cmd_lamb});
  {
    Command qd{"qd-sweep",
               "quantum-dot relative shift over a radius or separation grid",
               {{"--material", "material", "built-in material or a label for inline masses"},
                {"--me", "electron_mass_ratio", "electron mass ratio override"},
                {"--mh", "hole_mass_ratio", "hole mass ratio override"},
                {"--carrier", "carrier", "electron, hole or exciton"},
                {"--d", "separation", "plate separation for a radius sweep, nm"},
                {"--R", "radius", "dot radius for a separation sweep, nm"},
                {"--R-grid", "r_grid", "radius grid a:b:step, nm"},
                {"--d-grid", "d_grid", "separation grid a:b:step, nm"}},
               material_defaults,
               cmd_qd_sweep};
    qd.defaults.push_back({"separation", "100"});
    qd.defaults.push_back({"radius", "1.5"});
    qd.defaults.push_back({"r_grid", ""});
    qd.defaults.push_back({"d_grid", ""});
    list.push_back(std::move(qd));
  }
  list.push_back({"em-check", "Euler-Maclaurin and asymptotic-series self-test", {}, {}, cmd_em_check});
  for (auto& c : list) {
    c.flags.push_back({"--output", "output", "write to this file instead of stdout"});
    c.defaults.push_back({"output", "-"});
  }
  return list;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& c : commands()) {
      for (const auto& [key, unused] : c.defaults) {
        (void)unused;
        if (std::find(k.begin(), k.end(), key) == k.end()) k.push_back(key);
      }
    }
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

double parse_number(std::string_view text, bool length) {
  std::string t = trim(text);
  double scale = 1.0;
  if (length) {
    if (t.size() > 2 && t.compare(t.size() - 2, 2, "um") == 0) {
      scale = 1000.0;
      t.resize(t.size() - 2);
    } else if (t.size() > 2 && t.compare(t.size() - 2, 2, "nm") == 0) {
      t.resize(t.size() - 2);
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw UsageError("not a number: '" + std::string(text) + "'");
  return v * scale;
}

std::vector<double> parse_grid(std::string_view spec, bool lengths) {
  const std::string s = trim(spec);
  if (s.empty()) throw UsageError("empty grid");
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("grid '" + s + "' must look like a:b:step");
    const double a = parse_number(parts[0], lengths);
    const double b = parse_number(parts[1], lengths);
    const double step = parse_number(parts[2], lengths);
    if (!(step > 0.0) || b < a) throw UsageError("grid '" + s + "' needs step > 0 and b >= a");
    const double count = std::floor((b - a) / step + 1e-9);
    if (count > 1e7) throw UsageError("grid '" + s + "' has too many points");
    std::vector<double> out;
    for (long i = 0; i <= static_cast<long>(count); ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_number(tok, lengths));
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::vector<Command> cmds = commands();
  CLI::App app{"zero-point energy between plates: series, quadrature and Lamb-shift sweeps", "zpe"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value settings file; flags take precedence");

  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Bound> bound(cmds.size());
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    bound[i].app = app.add_subcommand(cmds[i].name, cmds[i].description);
    bound[i].app->add_option("--config", config_path, "flat key = value settings file");
    for (const auto& f : cmds[i].flags) {
      bound[i].options[f.key] = bound[i].app->add_option(f.flag, bound[i].values[f.key], f.help);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (!bound[i].app->parsed()) continue;
    const Command& cmd = cmds[i];
    try {
      Config cfg;
      for (const auto& [key, value] : cmd.defaults) cfg[key] = value;
      if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw UsageError("cannot read config file '" + config_path + "'");
        std::stringstream text;
        text << file.rdbuf();
        for (const auto& [key, value] : parse_config_text(text.str())) {
          if (cfg.count(key)) cfg[key] = value;
        }
      }
      for (const auto& [key, option] : bound[i].options) {
        if (option->count() > 0) cfg[key] = bound[i].values[key];
      }

      std::ostringstream buffer;
      echo_config(cfg, cmd.defaults, buffer);
      const int code = cmd.body(cfg, buffer, err);
      const std::string& target = cfg.at("output");
      if (target == "-") {
        out << buffer.str();
      } else {
        std::ofstream file(target, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + target + "'");
        file << buffer.str();
      }
      return code;
    } catch (const UsageError& e) {
      err << cmd.name << ": " << e.what() << '\n';
      return kExitUsage;
    } catch (const DomainError& e) {
      err << cmd.name << ": " << e.what() << '\n';
      return kExitUsage;
    } catch (const RegimeViolation& e) {
      err << cmd.name << ": " << e.what() << '\n';
      return kExitRegime;
    } catch (const NonConvergence& e) {
      err << cmd.name << ": " << e.what() << " (partial value " << format_number(e.partial_value()) << ")\n";
      return kExitNonConvergence;
    }
  }
  return kExitUsage;
}

}  // namespace zpe::cli
