// Command-line front end: dark-state construction, frequency tuning,
// shift scans, the benchmark table, and matrix dumps. Console output is
// printed with 6 significant digits; CSV and JSON files keep 17.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superdark/superdark.hpp"

namespace sd = superdark;
using nlohmann::json;

namespace {

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string fmt_full(double x) { return fmt(x, 17); }

std::string join(const std::vector<double>& xs, int digits = 6) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i], digits);
  }
  return out + ")";
}

sd::Polarization parse_polarization(const std::string& s) {
  if (s == "par" || s == "parallel") return sd::Polarization::parallel;
  if (s == "perp" || s == "perpendicular")
    return sd::Polarization::perpendicular;
  if (s == "vec" || s == "vector" || s == "vector3d")
    return sd::Polarization::vector3d;
  throw sd::usage_error("unknown polarization '" + s +
                        "' (expected par, perp, or vec)");
}

const char* pol_label(sd::Polarization p) {
  switch (p) {
    case sd::Polarization::parallel:
      return "par";
    case sd::Polarization::perpendicular:
      return "perp";
    default:
      return "vec";
  }
}

std::vector<sd::Vec3> read_positions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sd::usage_error("cannot open positions file '" + path + "'");
  std::vector<sd::Vec3> out;
  std::string line;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    sd::Vec3 p;
    if (ls >> p.x >> p.y >> p.z) out.push_back(p);
  }
  if (out.empty())
    throw sd::usage_error("positions file '" + path + "' has no rows");
  return out;
}

// Shared geometry options; exactly one geometry source must be given.
struct GeometryOptions {
  int chain_n = 0;
  double ka = 0.0;
  double ka2 = 0.0;
  std::string positions_file;
  std::string pol = "perp";

  void attach(CLI::App* cmd) {
    cmd->add_option("--chain", chain_n, "Chain of N equally spaced atoms");
    cmd->add_option("--ka", ka, "Dimensionless chain spacing k*a");
    cmd->add_option("--ka2", ka2, "Chain spacing given as (k*a)^2");
    cmd->add_option("--positions", positions_file,
                    "File of dimensionless positions (x y z per line)");
    cmd->add_option("--pol", pol, "Polarization: par, perp, or vec")
        ->capture_default_str();
  }

  sd::Polarization polarization() const { return parse_polarization(pol); }

  sd::AtomArray build() const {
    const bool have_chain = chain_n != 0;
    const bool have_file = !positions_file.empty();
    if (have_chain == have_file)
      throw sd::usage_error(
          "give exactly one geometry source: --chain N or --positions FILE");
    const sd::Polarization p = polarization();
    if (have_file) {
      if (p != sd::Polarization::vector3d)
        return sd::AtomArray(read_positions_file(positions_file), p);
      return sd::make_array(read_positions_file(positions_file));
    }
    if ((ka > 0.0) == (ka2 > 0.0))
      throw sd::usage_error("chains need exactly one of --ka or --ka2");
    const double spacing = ka > 0.0 ? ka : std::sqrt(ka2);
    if (p == sd::Polarization::vector3d) {
      std::vector<sd::Vec3> pos(chain_n);
      for (int j = 0; j < chain_n; ++j) pos[j] = {0.0, 0.0, j * spacing};
      return sd::make_array(std::move(pos));
    }
    return sd::make_chain({chain_n, spacing}, p);
  }
};

sd::DecayMatrix decay_matrix_for(const sd::AtomArray& array) {
  return array.scalar_mode() ? sd::decay_matrix_chain(array)
                             : sd::decay_matrix_tensor(array);
}

sd::CouplingMatrix coupling_for(const sd::AtomArray& array) {
  return array.scalar_mode() ? sd::coupling_chain(array)
                             : sd::coupling_tensor(array);
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw sd::usage_error("cannot write to '" + path + "'");
  out << body;
}

json minimum_report_json(const sd::MinimumReport& rep) {
  return json{{"n", rep.n_atoms},
              {"polarization", pol_label(rep.polarization)},
              {"ka", rep.ka},
              {"omega_min_over_u", rep.omega_min_over_u},
              {"gamma_min_over_gamma", rep.gamma_min},
              {"asymptotic_prediction", rep.asymptotic_prediction},
              {"mismatch", rep.mismatch},
              {"fall_factor", rep.fall_factor},
              {"evaluations", rep.evaluations},
              {"converged", rep.converged}};
}

// ---------------------------------------------------------------------------

struct DarkstateCmd {
  GeometryOptions geo;
  std::string json_path;

  void run() const {
    const sd::AtomArray array = geo.build();
    const sd::DecayMatrix w = decay_matrix_for(array);
    json out;
    out["n"] = array.n_atoms();
    out["polarization"] = pol_label(array.polarization());

    auto report_state = [&](const char* label, const sd::ExcitonVector& c) {
      const double rate = sd::decay_rate(w, c);
      std::printf("%-22s C = %s\n", label, join(c.coefficients).c_str());
      std::printf("%-22s Gamma/Gamma_single = %s\n", "",
                  fmt(rate).c_str());
      out[label] = {{"coefficients", c.coefficients}, {"rate", rate}};
    };

    if (array.scalar_mode()) {
      try {
        const double a = sd::chain_spacing(array);
        const int n = static_cast<int>(array.n_atoms());
        report_state("binomial",
                     sd::binomial_dark_state(n, array.polarization()));
        const double asym = sd::asymptotic_rate(n, a, array.polarization());
        std::printf("%-22s Gamma/Gamma_single = %s\n",
                    "leading-order rate", fmt(asym).c_str());
        out["leading_order_rate"] = asym;
      } catch (const sd::usage_error&) {
        // Not an equally spaced chain: no closed-form profile.
      }
      report_state("moment-constraint", sd::moment_dark_state(array));
    }
    const sd::DarkestResult dk = sd::darkest_eigenvector(w);
    report_state("w-eigenvector", dk.state);

    if (!json_path.empty()) write_text_file(json_path, out.dump(2) + "\n");
  }
};

struct TuneCmd {
  GeometryOptions geo;
  std::string json_path;

  void run() const {
    const sd::AtomArray array = geo.build();
    if (!array.scalar_mode())
      throw sd::usage_error("tune: scalar polarization modes only");

    const sd::CouplingMatrix u = sd::coupling_chain(array);
    sd::ExcitonVector target = [&] {
      try {
        return sd::binomial_dark_state(static_cast<int>(array.n_atoms()),
                                       array.polarization());
      } catch (const sd::usage_error&) {
        return sd::moment_dark_state(array);
      }
    }();
    if (!equally_spaced(array)) target = sd::moment_dark_state(array);

    const sd::TuningResult tuned = sd::tune_frequencies(u, target);
    const sd::TunedHamiltonian h = sd::build_hamiltonian(u, tuned.shifts);
    const double residual = sd::verify_eigenstate(h, target);

    std::printf("target C            = %s\n",
                join(target.coefficients).c_str());
    std::printf("shifts (zero-sum)   = %s\n", join(tuned.shifts).c_str());
    std::printf("shifts (edge gauge) = %s\n",
                join(tuned.edge_referenced()).c_str());
    std::printf("eigenenergy E       = %s\n", fmt(tuned.eigenenergy).c_str());

    json out{{"n", array.n_atoms()},
             {"polarization", pol_label(array.polarization())},
             {"target", target.coefficients},
             {"shifts_zero_sum", tuned.shifts},
             {"shifts_edge", tuned.edge_referenced()},
             {"eigenenergy", tuned.eigenenergy},
             {"eigen_residual", residual}};

    if (equally_spaced(array) && array.n_atoms() >= 3) {
      const auto pred = sd::tuned_shift_prediction(array);
      std::printf("Omega/U             = %s\n", join(pred).c_str());
      out["omega_over_u"] = pred;
    } else if (array.n_atoms() == 2) {
      std::printf("Omega/U             = 0\n");
      out["omega_over_u"] = std::vector<double>{0.0};
    }
    std::printf("eigen-residual      = %s\n", fmt(residual).c_str());

    if (!json_path.empty()) write_text_file(json_path, out.dump(2) + "\n");
  }

  static bool equally_spaced(const sd::AtomArray& array) {
    try {
      sd::chain_spacing(array);
      return true;
    } catch (const sd::usage_error&) {
      return false;
    }
  }
};

struct ScanCmd {
  GeometryOptions geo;
  std::vector<double> bracket;
  int grid_points = 2001;
  int threads = 0;
  std::string csv_path;
  std::string summary_path;

  void run() const {
    const sd::AtomArray array = geo.build();
    if (!array.scalar_mode())
      throw sd::usage_error("scan: scalar polarization modes only");
    const std::size_t n = array.n_atoms();
    const sd::DecayMatrix w = sd::decay_matrix_chain(array);

    if (n >= 5) {
      run_multi(array, w);
      return;
    }
    if (n != 3 && n != 4)
      throw sd::usage_error("scan: needs a chain of N >= 3 atoms");
    if (grid_points < 1) throw sd::usage_error("scan: grid size must be >= 1");

    const double pred = sd::tuned_shift_prediction(array).front();
    double lo = pred - 0.2, hi = pred + 0.2;
    if (!bracket.empty()) {
      if (bracket.size() != 2 || !(bracket[0] < bracket[1]))
        throw sd::usage_error("scan: --bracket needs LO HI with LO < HI");
      lo = bracket[0];
      hi = bracket[1];
    }

    const auto grid =
        sd::detail::linspace(lo, hi, static_cast<std::size_t>(grid_points));
    const auto points = sd::scan_omega(array, grid, w, threads);

    std::string csv = "omega_over_u,gamma_tilde_over_gamma,eigenenergy\n";
    for (const auto& p : points)
      csv += fmt_full(p.omega_over_u.front()) + "," +
             fmt_full(p.gamma_tilde) + "," + fmt_full(p.eigenenergy) + "\n";
    if (!csv_path.empty())
      write_text_file(csv_path, csv);
    else
      std::fputs(csv.c_str(), stdout);

    const sd::MinimumReport rep = sd::find_minimum(array, w, {lo, hi});
    const json summary = minimum_report_json(rep);
    if (!summary_path.empty())
      write_text_file(summary_path, summary.dump(2) + "\n");
    std::fprintf(stderr,
                 "minimum: Omega/U = %s, Gamma/Gamma = %s (prediction %s, "
                 "mismatch %s, fall factor %s)\n",
                 fmt(rep.omega_min_over_u.front()).c_str(),
                 fmt(rep.gamma_min).c_str(),
                 fmt(rep.asymptotic_prediction.front()).c_str(),
                 fmt(rep.mismatch).c_str(), fmt(rep.fall_factor).c_str());
  }

  void run_multi(const sd::AtomArray& array, const sd::DecayMatrix& w) const {
    const auto seed = sd::tuned_shift_prediction(array);
    std::fprintf(stderr, "N >= 5: multi-parameter refinement from seed %s\n",
                 join(seed).c_str());
    const sd::MinimumReport rep = sd::scan_multi(array, w, seed);
    std::printf("seed  Omega/U = %s\n", join(seed).c_str());
    std::printf("found Omega/U = %s\n", join(rep.omega_min_over_u).c_str());
    std::printf("Gamma_min/Gamma = %s (fall factor %s)\n",
                fmt(rep.gamma_min).c_str(), fmt(rep.fall_factor).c_str());
    if (!summary_path.empty())
      write_text_file(summary_path, minimum_report_json(rep).dump(2) + "\n");
  }
};

struct Table1Cmd {
  std::vector<double> ka2_values = {0.01, 0.10, 1.00};
  std::vector<int> n_values = {3, 4};
  std::string pol = "both";
  bool compare = false;
  std::string csv_path;

  void run() const {
    std::vector<sd::Polarization> pols;
    if (pol == "both") {
      pols = {sd::Polarization::parallel, sd::Polarization::perpendicular};
    } else {
      const sd::Polarization p = parse_polarization(pol);
      if (p == sd::Polarization::vector3d)
        throw sd::usage_error("table1: scalar polarizations only");
      pols = {p};
    }

    const auto rows = sd::table1(ka2_values, n_values, pols);

    std::string csv = "n,polarization,ka2,gamma_min,gamma_noshift";
    if (compare) csv += ",gamma_min_ref,gamma_min_reldev,gamma_noshift_ref,gamma_noshift_reldev";
    csv += "\n";

    std::printf("%3s %-6s %6s %14s %14s", "n", "pol", "ka2", "gamma_min",
                "gamma_noshift");
    if (compare) std::printf(" %11s %11s", "min_reldev", "nosh_reldev");
    std::printf("\n");

    for (const auto& row : rows) {
      csv += std::to_string(row.n) + "," + pol_label(row.polarization) + "," +
             fmt_full(row.ka2) + "," + fmt_full(row.gamma_min) + "," +
             fmt_full(row.gamma_noshift);
      std::printf("%3d %-6s %6s %14s %14s", row.n,
                  pol_label(row.polarization), fmt(row.ka2).c_str(),
                  fmt(row.gamma_min).c_str(), fmt(row.gamma_noshift).c_str());
      if (compare) {
        const auto* ref = find_reference(row);
        if (ref) {
          const double dmin = row.gamma_min / ref->gamma_min - 1.0;
          const double dnosh = row.gamma_noshift / ref->gamma_noshift - 1.0;
          csv += "," + fmt_full(ref->gamma_min) + "," + fmt_full(dmin) + "," +
                 fmt_full(ref->gamma_noshift) + "," + fmt_full(dnosh);
          std::printf(" %11s %11s", fmt(dmin, 3).c_str(),
                      fmt(dnosh, 3).c_str());
        } else {
          csv += ",,,,";
          std::printf(" %11s %11s", "-", "-");
        }
      }
      csv += "\n";
      std::printf("\n");
    }
    if (!csv_path.empty()) write_text_file(csv_path, csv);
  }

  static const sd::ReferenceRate* find_reference(const sd::Table1Row& row) {
    for (const auto& ref : sd::reference_rates)
      if (ref.n == row.n && ref.polarization == row.polarization &&
          std::fabs(ref.ka2 - row.ka2) < 1e-12)
        return &ref;
    return nullptr;
  }
};

struct WmatrixCmd {
  GeometryOptions geo;
  std::string prefix = "matrices";
  bool to_stdout = false;

  void run() const {
    const sd::AtomArray array = geo.build();
    const sd::CouplingMatrix u = coupling_for(array);
    const sd::DecayMatrix w = decay_matrix_for(array);

    const auto dump = [](const sd::SymMatrix& m) {
      std::string out;
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
          if (j) out += ",";
          out += fmt_full(m(i, j));
        }
        out += "\n";
      }
      return out;
    };

    if (to_stdout) {
      std::printf("# coupling matrix U (units d^2 k^3)\n%s",
                  dump(u.matrix).c_str());
      std::printf("# decay matrix W (units Gamma)\n%s",
                  dump(w.matrix).c_str());
      return;
    }
    write_text_file(prefix + "_u.csv", dump(u.matrix));
    write_text_file(prefix + "_w.csv", dump(w.matrix));
    std::printf("wrote %s_u.csv and %s_w.csv (dim %zu)\n", prefix.c_str(),
                prefix.c_str(), w.matrix.dim());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "superdark: engineered subradiance in small atomic arrays.\n"
      "Lengths are dimensionless (k*R), couplings in units of d^2 k^3, decay "
      "rates in units of the single-atom rate."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  DarkstateCmd darkstate;
  auto* cmd_dark = app.add_subcommand(
      "darkstate", "Optimal subradiant state and its decay rate");
  darkstate.geo.attach(cmd_dark);
  cmd_dark->add_option("--json", darkstate.json_path, "Write a JSON report");

  TuneCmd tune;
  auto* cmd_tune = app.add_subcommand(
      "tune", "Frequency shifts making the optimal state an eigenstate");
  tune.geo.attach(cmd_tune);
  cmd_tune->add_option("--json", tune.json_path, "Write a JSON report");

  ScanCmd scan;
  auto* cmd_scan = app.add_subcommand(
      "scan", "Slowest decay rate vs middle-atom shift Omega/U");
  scan.geo.attach(cmd_scan);
  cmd_scan->add_option("--bracket", scan.bracket,
                       "Scan bracket LO HI in Omega/U units")
      ->expected(2);
  cmd_scan->add_option("--grid", scan.grid_points, "Number of grid points")
      ->capture_default_str();
  cmd_scan->add_option("--threads", scan.threads,
                       "Worker threads (0 = SUPERDARK_THREADS or all cores)");
  cmd_scan->add_option("--out", scan.csv_path, "CSV output path");
  cmd_scan->add_option("--summary", scan.summary_path,
                       "JSON summary output path");

  Table1Cmd table;
  auto* cmd_table = app.add_subcommand(
      "table1", "Minimized vs unshifted decay rates on the benchmark grid");
  cmd_table->add_option("--ka2", table.ka2_values, "(k*a)^2 values")
      ->capture_default_str();
  cmd_table->add_option("--n", table.n_values, "Chain sizes (3 and/or 4)")
      ->capture_default_str();
  cmd_table->add_option("--pol", table.pol, "par, perp, or both")
      ->capture_default_str();
  cmd_table->add_flag("--compare", table.compare,
                      "Compare against the built-in reference values");
  cmd_table->add_option("--out", table.csv_path, "CSV output path");

  WmatrixCmd wmatrix;
  auto* cmd_w = app.add_subcommand(
      "wmatrix", "Dump the coupling matrix U and decay matrix W as CSV");
  wmatrix.geo.attach(cmd_w);
  cmd_w->add_option("--out", wmatrix.prefix, "Output file prefix")
      ->capture_default_str();
  cmd_w->add_flag("--stdout", wmatrix.to_stdout, "Print to stdout instead");

  try {
    app.parse(argc, argv);
    if (cmd_dark->parsed()) darkstate.run();
    if (cmd_tune->parsed()) tune.run();
    if (cmd_scan->parsed()) scan.run();
    if (cmd_table->parsed()) table.run();
    if (cmd_w->parsed()) wmatrix.run();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const sd::usage_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
