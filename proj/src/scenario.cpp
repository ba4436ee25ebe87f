#include "stqrf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "stqrf/relational.hpp"
#include "stqrf/tradeoff.hpp"

namespace stqrf {

namespace {

constexpr const char* kVersion = "stqrf 1.0.0";

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double get_d(const Scenario& sc, const std::string& key, double dflt) {
  auto it = sc.kv.find(key);
  if (it == sc.kv.end()) return dflt;
  std::size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (pos != it->second.size())
    throw ConfigInvalid("scenario key '" + key + "': bad number '" + it->second + "'");
  return v;
}

int get_i(const Scenario& sc, const std::string& key, int dflt) {
  const double v = get_d(sc, key, dflt);
  if (v != std::floor(v)) throw ConfigInvalid("scenario key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string get_s(const Scenario& sc, const std::string& key, const std::string& dflt) {
  auto it = sc.kv.find(key);
  return it == sc.kv.end() ? dflt : it->second;
}

void check_keys(const Scenario& sc, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : sc.kv)
    if (k != "scenario" && !allowed.count(k))
      throw ConfigInvalid("scenario '" + sc.name + "': unknown key '" + k + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void add_provenance(ResultTable& t, const Scenario& sc) {
  t.provenance.push_back(std::string("version=") + kVersion);
  t.provenance.push_back("scenario=" + sc.name);
  std::string blob;
  for (const auto& [k, v] : sc.kv) {
    t.provenance.push_back(k + "=" + v);
    blob += k + "=" + v + ";";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(blob)));
  t.provenance.push_back(std::string("config_hash=") + buf);
}

HamiltonianOrder parse_order(const std::string& s) {
  if (s == "exact") return HamiltonianOrder::exact;
  if (s == "first") return HamiltonianOrder::first_order;
  if (s == "second") return HamiltonianOrder::second_order;
  if (s == "nonrelativistic") return HamiltonianOrder::nonrelativistic;
  throw ConfigInvalid("unknown expansion order '" + s + "'");
}

// ---------------------------------------------------------------------------
// Bundled scenarios
// ---------------------------------------------------------------------------

ResultTable run_salecker_wigner(const Scenario& sc) {
  check_keys(sc, {"c", "gap", "sigma", "n_points", "t_start", "t_stop", "n_times"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  const double gap = get_d(sc, "gap", 0.2 * pp.rest_energy());
  const double sigma = get_d(sc, "sigma", 1.0);
  const int n_points = get_i(sc, "n_points", 1024);
  const double t0 = get_d(sc, "t_start", 0.2);
  const double t1 = get_d(sc, "t_stop", 2.5);
  const int nt = get_i(sc, "n_times", 12);
  if (nt < 2) throw ConfigInvalid("salecker-wigner: n_times must be >= 2");

  const DiscreteClockSpec clock = make_qubit_clock(gap);
  const MomentumGrid grid = make_grid(0.0, 0.525 * pp.hbar / sigma, n_points);
  const CompositeState st = make_gaussian_phase_space(pp, grid, clock, sigma, 0.0, 0.0);
  const ClockMoments cm = clock_moments(st);

  ResultTable t;
  t.columns = {"t_time", "var_x_oracle_len2", "bound_free_len2", "bound_composite_len2"};
  for (int i = 0; i < nt; ++i) {
    const double ti = t0 + (t1 - t0) * i / (nt - 1);
    const MomentReport mr = compute_moments(st, ti);
    t.rows.push_back({ti, mr.var_x, pp.hbar * std::abs(ti) / pp.m,
                      pp.hbar * std::abs(ti) * cm.inv_mass});
  }
  return t;
}

ResultTable run_mus_vs_gaussian(const Scenario& sc) {
  check_keys(sc, {"c", "t", "n_lambda", "lambda_min", "lambda_max", "n_points"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  const double t = get_d(sc, "t", 1.0);
  const int nl = get_i(sc, "n_lambda", 8);
  const double l0 = get_d(sc, "lambda_min", 0.01);
  const double l1 = get_d(sc, "lambda_max", 0.1);
  const int n_points = get_i(sc, "n_points", 1024);

  ResultTable tab;
  tab.columns = {"lambda_dimless", "gaussian_coeff_dimless", "mus_coeff_dimless"};
  double sxyG = 0.0, sxyM = 0.0, sxx = 0.0;
  for (int i = 0; i < nl; ++i) {
    const double lam = l0 * std::pow(l1 / l0, nl > 1 ? double(i) / (nl - 1) : 0.0);
    const DiscreteClockSpec clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
    const ClockMoments cm = clock_moments(clock, pp);

    const double sg = gaussian_family_optimal_sigma(pp, clock, t);
    const MomentumGrid gg = make_grid(0.0, 0.525 * pp.hbar / sg, n_points);
    const CompositeState stg = make_gaussian_phase_space(pp, gg, clock, sg, 0.0, 0.0);
    const double varG = compute_moments(stg, t).var_x;

    const double Om = mus_family_optimal_omega(t);
    const double spm = std::sqrt(0.5 * pp.m * pp.hbar * Om);
    const MomentumGrid gm = make_grid(0.0, 1.1 * spm, n_points);
    const CompositeState stm = make_mus_configuration_space(pp, gm, clock, Om, 0.0, 0.0);
    const double varM = compute_moments(stm, t).var_x;

    const double base = pp.m / cm.mbar;
    const double exG = varG * pp.m / (pp.hbar * t) - base;
    const double exM = varM * pp.m / (pp.hbar * t) - base;
    tab.rows.push_back({lam, exG / (lam * lam), exM / (lam * lam)});
    sxyG += lam * lam * exG;
    sxyM += lam * lam * exM;
    sxx += lam * lam * lam * lam;
  }
  // Summary row (lambda = 0): least-squares fit of excess = a * lambda^2.
  tab.rows.push_back({0.0, sxyG / sxx, sxyM / sxx});
  return tab;
}

ResultTable run_qsl_sweep(const Scenario& sc) {
  check_keys(sc, {"c", "gap", "sigma", "family", "n_points", "delta_min", "delta_max",
                  "n_delta"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  const double gap = get_d(sc, "gap", 0.1 * pp.rest_energy());
  const double sigma = get_d(sc, "sigma", 1.0);
  const std::string family = get_s(sc, "family", "gaussian");
  const int n_points = get_i(sc, "n_points", 1024);
  const double d0 = get_d(sc, "delta_min", 0.05);
  const double d1 = get_d(sc, "delta_max", 0.9);
  const int nd = get_i(sc, "n_delta", 8);

  const DiscreteClockSpec clock = make_qubit_clock(gap);
  CompositeState st = [&] {
    if (family == "mus") {
      const double Om = pp.hbar / (2.0 * pp.m * sigma * sigma);
      const double spm = std::sqrt(0.5 * pp.m * pp.hbar * Om);
      return make_mus_configuration_space(pp, make_grid(0.0, 1.1 * spm, n_points), clock, Om,
                                          0.0, 0.0);
    }
    if (family != "gaussian") throw ConfigInvalid("qsl-sweep: family must be gaussian or mus");
    return make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar / sigma, n_points),
                                     clock, sigma, 0.0, 0.0);
  }();

  ResultTable tab;
  tab.columns = {"delta_dimless", "static_bound_time", "dynamical_bound_time", "oracle_time"};
  for (int i = 0; i < nd; ++i) {
    const double delta = d0 + (d1 - d0) * (nd > 1 ? double(i) / (nd - 1) : 0.0);
    const QslResult s = static_qsl(st, delta, false);
    const QslResult dyn = dynamical_qsl(st, delta, true);
    tab.rows.push_back({delta, s.bound_time, dyn.bound_time, dyn.oracle_time});
  }
  return tab;
}

ResultTable run_contractive_window(const Scenario& sc) {
  check_keys(sc, {"c", "gap", "sigma", "gamma", "n_points", "t_start", "t_stop", "n_times"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  const double gap = get_d(sc, "gap", 0.1 * pp.rest_energy());
  const double sigma = get_d(sc, "sigma", 1.0);
  const double gamma = get_d(sc, "gamma", 2.0);
  const int n_points = get_i(sc, "n_points", 2048);
  const double t0 = get_d(sc, "t_start", 0.0);
  const int nt = get_i(sc, "n_times", 12);

  const DiscreteClockSpec clock = make_qubit_clock(gap);
  const double sp = 0.5 * pp.hbar / sigma * std::sqrt(1.0 + 4.0 * gamma * gamma);
  const CompositeState st =
      make_contractive(pp, make_grid(0.0, 0.525 * sp / 0.5, n_points), clock, sigma, gamma);
  const ContractiveDiagnostics cd = contractive_diagnostics(st);
  const double t1 = get_d(sc, "t_stop", 2.0 * cd.window_tau_c);
  const double var0 = compute_moments(st).var_x;

  ResultTable tab;
  tab.columns = {"t_time", "var_x_oracle_len2", "two_time_product_len4",
                 "two_time_bound_len4"};
  for (int i = 0; i < nt; ++i) {
    const double ti = t0 + (t1 - t0) * (nt > 1 ? double(i) / (nt - 1) : 0.0);
    const MomentReport mr = compute_moments(st, ti);
    const double bound = cd.two_time_coeff * std::abs(ti);
    tab.rows.push_back({ti, mr.var_x, mr.var_x * var0, bound * bound});
  }
  return tab;
}

ResultTable run_relational_chain(const Scenario& sc) {
  check_keys(sc, {"c", "sigma_H", "n_eps", "n_p", "n_s", "m_s", "sigma_r", "sigma_s",
                  "tau0_start", "tau0_stop", "n_tau0"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  const double sigma_H = get_d(sc, "sigma_H", 0.02 * pp.rest_energy());
  const int n_eps = get_i(sc, "n_eps", 64);
  const int n_p = get_i(sc, "n_p", 512);
  const int n_s = get_i(sc, "n_s", 96);
  const double m_s = get_d(sc, "m_s", 1.0);
  const double sigma_r = get_d(sc, "sigma_r", 1.0);
  const double sigma_s = get_d(sc, "sigma_s", 1.0);
  const double tau0_a = get_d(sc, "tau0_start", 2.0);
  const double tau0_b = get_d(sc, "tau0_stop", 10.0);
  const int ntau = get_i(sc, "n_tau0", 5);

  const IdealClockSpec clock = make_ideal_clock(0.0, sigma_H, n_eps);
  IdealComParams fp;
  fp.sigma = sigma_r;
  const CompositeState rod = make_ideal_clock_state(
      pp, make_grid(0.0, 0.525 * pp.hbar / sigma_r, n_p), clock, "gaussian", fp);
  const SystemSpec sys = make_system_gaussian(
      m_s, make_grid(0.0, 0.525 * pp.hbar / sigma_s, n_s), sigma_s, 0.0, 0.0, pp.hbar);

  ResultTable tab;
  tab.columns = {"tau0_time", "total_len2", "closed_nonrel_len2", "bound_rod_len2",
                 "bound_energy_len2", "bound_compton_len2"};
  for (int i = 0; i < ntau; ++i) {
    const double tau0 = tau0_a + (tau0_b - tau0_a) * (ntau > 1 ? double(i) / (ntau - 1) : 0.0);
    const RelationalVarianceReport rv =
        relational_variance(rod, sys, 0.0, tau0, HamiltonianOrder::first_order);
    tab.rows.push_back({tau0, rv.total, rv.closed_form_total, rv.bound_rel_rod,
                        rv.bound_energy_spread, rv.bound_compton});
  }
  return tab;
}

ResultTable run_povm_refinement(const Scenario& sc) {
  check_keys(sc, {"c", "order", "n_eps_start", "n_levels", "n_p", "p_frac", "eps_frac",
                  "window_modes"});
  PhysicalParams pp;
  pp.c = get_d(sc, "c", 10.0);
  PovmSpec spec;
  spec.order = parse_order(get_s(sc, "order", "first"));
  spec.window_modes = get_i(sc, "window_modes", 8);
  const int n0 = get_i(sc, "n_eps_start", 32);
  const int n_levels = get_i(sc, "n_levels", 4);
  const int n_p = get_i(sc, "n_p", 9);
  const double p_frac = get_d(sc, "p_frac", 0.35);
  const double eps_frac = get_d(sc, "eps_frac", 0.05);
  // Audit only n_p momentum slices (the p-blocks are independent).
  spec.p_grid = MomentumGrid{-p_frac * pp.m * pp.c, p_frac * pp.m * pp.c, std::max(2, n_p)};
  spec.eps_min = -eps_frac * pp.rest_energy();
  spec.eps_max = eps_frac * pp.rest_energy();

  ResultTable tab;
  tab.columns = {"n_eps_dimless", "deviation_dimless", "defect_dimless"};
  for (int lvl = 0; lvl < n_levels; ++lvl) {
    spec.n_eps = n0 << lvl;
    const double dev = povm_normalization_audit(spec, pp);
    const double defect = povm_unweighted_defect(spec, pp);
    tab.rows.push_back({static_cast<double>(spec.n_eps), dev, defect});
  }
  return tab;
}

struct BundledEntry {
  const char* name;
  const char* text;
  ResultTable (*fn)(const Scenario&);
};

const BundledEntry kBundled[] = {
    {"salecker-wigner",
     "# Free spreading of a Gaussian qubit-clock composite vs the free-particle\n"
     "# and composite lower bounds.\n"
     "scenario = salecker-wigner\nc = 10\ngap = 20\nsigma = 1\nn_points = 1024\n"
     "t_start = 0.2\nt_stop = 2.5\nn_times = 12\n",
     run_salecker_wigner},
    {"mus-vs-gaussian",
     "# Family-optimal spreading minima: excess over hbar t/mbar in units of\n"
     "# lambda^2 (expected coefficients: 3/2 for Gaussian, 1 for MUS).\n"
     "scenario = mus-vs-gaussian\nc = 10\nt = 1\nn_lambda = 8\nlambda_min = 0.01\n"
     "lambda_max = 0.1\nn_points = 1024\n",
     run_mus_vs_gaussian},
    {"qsl-sweep",
     "# Static and dynamical distance-threshold bounds vs the oracle crossing\n"
     "# time as a function of delta.\n"
     "scenario = qsl-sweep\nc = 10\ngap = 10\nsigma = 1\nfamily = gaussian\n"
     "n_points = 1024\ndelta_min = 0.05\ndelta_max = 0.9\nn_delta = 8\n",
     run_qsl_sweep},
    {"contractive-window",
     "# Transient variance contraction of a correlated Gaussian and the\n"
     "# two-time product bound.\n"
     "scenario = contractive-window\nc = 10\ngap = 10\nsigma = 1\ngamma = 2\n"
     "n_points = 2048\nt_start = 0\nn_times = 12\n",
     run_contractive_window},
    {"relational-chain",
     "# Relational-position variance vs its closed form and lower-bound chain\n"
     "# as a function of the clock readout tau0.\n"
     "scenario = relational-chain\nc = 10\nn_eps = 64\nn_p = 512\nn_s = 96\nm_s = 1\n"
     "sigma_r = 1\nsigma_s = 1\ntau0_start = 2\ntau0_stop = 10\nn_tau0 = 5\n",
     run_relational_chain},
    {"povm-refinement",
     "# Covariant-POVM normalization deviation under energy-grid refinement.\n"
     "scenario = povm-refinement\nc = 10\norder = first\nn_eps_start = 32\n"
     "n_levels = 4\nn_p = 9\np_frac = 0.35\neps_frac = 0.05\nwindow_modes = 8\n",
     run_povm_refinement},
};

}  // namespace

std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> out;
  for (const auto& e : kBundled) out.push_back(e.name);
  return out;
}

std::optional<std::string> bundled_scenario_text(const std::string& name) {
  for (const auto& e : kBundled)
    if (name == e.name) return std::string(e.text);
  return std::nullopt;
}

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("scenario config line " + std::to_string(lineno) +
                          ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigInvalid("scenario config line " + std::to_string(lineno) +
                          ": empty key or value");
    if (sc.kv.count(key))
      throw ConfigInvalid("scenario config: duplicate key '" + key + "'");
    sc.kv[key] = val;
  }
  auto it = sc.kv.find("scenario");
  if (it == sc.kv.end()) throw ConfigInvalid("scenario config: missing 'scenario' key");
  sc.name = it->second;
  return sc;
}

Scenario load_scenario(const std::string& path_or_name) {
  if (auto text = bundled_scenario_text(path_or_name)) return parse_scenario_text(*text);
  std::ifstream f(path_or_name);
  if (!f) throw ConfigInvalid("cannot open scenario config '" + path_or_name + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario_text(ss.str());
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigInvalid("cannot write '" + path + "'");
  for (const auto& p : table.provenance) f << "# " << p << "\r\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    f << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\r\n");
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      f << fmt(row[c]) << (c + 1 < row.size() ? "," : "\r\n");
}

void write_svg_lines(const ResultTable& table, const std::string& path, int x_column) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigInvalid("cannot write '" + path + "'");
  const int W = 720, H = 480, ML = 70, MR = 180, MT = 30, MB = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[x_column]);
    xmax = std::max(xmax, row[x_column]);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (static_cast<int>(c) == x_column) continue;
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto X = [&](double x) { return ML + (W - ML - MR) * (x - xmin) / (xmax - xmin); };
  auto Y = [&](double y) { return H - MB - (H - MT - MB) * (y - ymin) / (ymax - ymin); };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
    << H - MB << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
    << "\" stroke=\"black\"/>\n";
  f << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
    << "\" font-size=\"13\" text-anchor=\"middle\">" << table.columns[x_column]
    << "</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", xmin);
  f << "<text x=\"" << ML << "\" y=\"" << H - MB + 18 << "\" font-size=\"11\">" << buf
    << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.6g", xmax);
  f << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 18
    << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.6g", ymin);
  f << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB << "\" font-size=\"11\" "
    << "text-anchor=\"end\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.6g", ymax);
  f << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4 << "\" font-size=\"11\" "
    << "text-anchor=\"end\">" << buf << "</text>\n";

  int series = 0;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (static_cast<int>(c) == x_column) continue;
    const char* col = colors[series % 7];
    f << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(row[x_column]), Y(row[c]));
      f << buf;
    }
    f << "\"/>\n";
    f << "<text x=\"" << W - MR + 10 << "\" y=\"" << MT + 16 + 18 * series
      << "\" font-size=\"12\" fill=\"" << col << "\">" << table.columns[c] << "</text>\n";
    ++series;
  }
  f << "</svg>\n";
}

int run_scenario(const std::string& path_or_name, const std::string& out_dir,
                 std::ostream& log) {
  Scenario sc;
  ResultTable table;
  try {
    sc = load_scenario(path_or_name);
    const BundledEntry* entry = nullptr;
    for (const auto& e : kBundled)
      if (sc.name == e.name) entry = &e;
    if (!entry) throw ConfigInvalid("unknown scenario '" + sc.name + "'");
    table = entry->fn(sc);
    add_provenance(table, sc);
  } catch (const RegimeViolation& e) {
    log << "regime violation: " << e.what() << "\n";
    return 3;
  } catch (const NegativeDilation& e) {
    log << "regime violation: " << e.what() << "\n";
    return 3;
  } catch (const DilationNonPositive& e) {
    log << "regime violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    log << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    log << "validation failure: " << e.what() << "\n";
    return 2;
  }
  const std::string base = out_dir.empty() ? sc.name : out_dir + "/" + sc.name;
  try {
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    write_csv(table, base + ".csv");
    write_svg_lines(table, base + ".svg");
  } catch (const std::exception& e) {
    log << "output failure: " << e.what() << "\n";
    return 2;
  }
  log << "wrote " << base << ".csv and " << base << ".svg (" << table.rows.size()
      << " rows)\n";
  return 0;
}

}  // namespace stqrf
