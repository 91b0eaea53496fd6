// Command-line front end: build, verify, perturb, scan and compare
// tridiagonal systems through JSON files.
//
// Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
// 3 theorem mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdpert/tdpert.hpp"

namespace {

using tdpert::json;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitMismatch = 3;

/// Failure that carries its own exit code.
struct CliFailure {
  int code;
  std::string message;
};

struct Source {
  std::string seed;
  std::string pa_file;
  std::string system_file;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* seed = cmd->add_option("--seed", src.seed, "built-in seed: d1, d1-phi5, d2");
  auto* pa = cmd->add_option("--pa", src.pa_file, "parameter-array JSON file");
  auto* sys = cmd->add_option("--system", src.system_file, "system JSON file");
  seed->excludes(pa)->excludes(sys);
  pa->excludes(sys);
}

tdpert::ParallelSystem load_source(const Source& src) {
  if (!src.seed.empty()) return tdpert::build_seed(src.seed);
  if (!src.pa_file.empty()) {
    const auto [ctx, pa] = tdpert::parameter_array_from_json(tdpert::read_json_file(src.pa_file));
    return tdpert::from_parameter_array_thin(pa, ctx);
  }
  if (!src.system_file.empty()) return tdpert::system_from_json(tdpert::read_json_file(src.system_file));
  throw CliFailure{kExitUsage, "one of --seed, --pa or --system is required"};
}

/// Positional operand of `iso`: a seed name or a system file.
tdpert::ParallelSystem load_operand(const std::string& operand) {
  for (const auto& s : tdpert::builtin_seeds()) {
    if (s.name == operand) return tdpert::build_seed(operand);
  }
  return tdpert::system_from_json(tdpert::read_json_file(operand));
}

void emit(const json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_file);
  if (!out) throw CliFailure{kExitUsage, "cannot write " + out_file};
  out << j.dump(2) << "\n";
}

std::string join_strings(const json& arr) {
  std::string out;
  for (const auto& x : arr) {
    if (!out.empty()) out += ", ";
    out += x.get<std::string>();
  }
  return out;
}

std::vector<tdpert::Rational> parse_t_list(const std::string& text) {
  std::vector<tdpert::Rational> ts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ts.push_back(tdpert::Rational::parse(item));
  }
  return ts;
}

/// A:B:STEP, inclusive of B when it is hit exactly.
std::vector<tdpert::Rational> parse_t_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw tdpert::ParseError("--t-range expects A:B:STEP");
  const auto lo = tdpert::Rational::parse(parts[0]);
  const auto hi = tdpert::Rational::parse(parts[1]);
  const auto step = tdpert::Rational::parse(parts[2]);
  if (step.sign() <= 0) throw tdpert::ParseError("--t-range step must be positive");
  std::vector<tdpert::Rational> ts;
  for (auto t = lo; t <= hi; t += step) {
    ts.push_back(t);
    if (ts.size() > 100000) throw tdpert::ParseError("--t-range produces too many values");
  }
  return ts;
}

// ---------------------------------------------------------------------------
// verify

json verify_report(const tdpert::ParallelSystem& ps) {
  const auto report = tdpert::verify_system(ps);
  json j;
  j["d"] = ps.diameter();
  j["dim"] = ps.dim();
  j["axioms"] = tdpert::axiom_report_to_json(report);
  j["parameter_array"] = nullptr;
  j["split_sequence"] = nullptr;
  j["trace_identities"] = nullptr;
  j["drinfeld"] = nullptr;
  if (!report.is_parallel || !report.is_sharp) return j;

  const auto pa = tdpert::parameter_array(ps);
  j["parameter_array"] = tdpert::parameter_array_to_json(pa, ps.ctx.q);
  const auto tr = tdpert::trace_identities(ps);
  j["trace_identities"] = {{"top_trace_formula", tr.top_trace_formula}, {"weighted_trace_formula", tr.weighted_trace_formula}, {"top_trace_nonzero", tr.top_trace_nonzero},
                           {"bottom_trace_nonzero", tr.bottom_trace_nonzero},   {"top_zeta_nonzero", tr.top_zeta_nonzero},   {"weighted_sum_nonzero", tr.weighted_sum_nonzero}};

  json split = {{"trace", tdpert::rationals_to_json(pa.zeta)}, {"ladder", nullptr}, {"agree", nullptr}};
  try {
    const auto u = tdpert::split_decomposition(ps);
    std::vector<tdpert::Rational> ladder;
    for (int i = 0; i <= ps.diameter(); ++i) ladder.push_back(tdpert::ladder_eigenvalue(ps, u, i));
    split["ladder"] = tdpert::rationals_to_json(ladder);
    split["agree"] = ladder == pa.zeta;
    split["verify_split"] = tdpert::verify_split(ps, u);
  } catch (const tdpert::Error& e) {
    split["error"] = e.what();
  }
  j["split_sequence"] = split;

  const auto p = tdpert::drinfeld_poly(pa.zeta, tdpert::QContext(ps.ctx.q, ps.diameter()));
  j["drinfeld"] = {{"polynomial", tdpert::polynomial_to_json(p.poly)},
                   {"rational_bad_t", tdpert::rationals_to_json(tdpert::rational_bad_t(p))}};
  return j;
}

std::string render_verify(const json& j) {
  const json& ax = j["axioms"];
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  if (ax["is_td_system"].get<bool>()) {
    out << "TD system: yes";
  } else {
    out << "TD system: NO (" << ax["failing_axiom"].get<std::string>() << ")";
  }
  out << "; sharp: " << yes(ax["is_sharp"].get<bool>()) << "; q-Serre: " << yes(ax["qserre_ok"].get<bool>());
  if (!j["parameter_array"].is_null()) out << "; \xce\xb6 = (" << join_strings(j["parameter_array"]["zeta"]) << ")";
  out << "\n";
  out << "  parallel: " << yes(ax["is_parallel"].get<bool>()) << ", band: " << yes(ax["td_band_ok"].get<bool>())
      << ", irreducible: " << yes(ax["irreducible"].get<bool>()) << " (algebra dim " << ax["algebra_dim"].get<int>()
      << "), mock corners: " << yes(ax["mock_corners_ok"].get<bool>()) << "\n";
  if (!ax["witness"].is_null()) out << "  invariant subspace basis: " << ax["witness"]["entries"].dump() << "\n";
  if (!j["trace_identities"].is_null()) {
    const json& t = j["trace_identities"];
    bool all = true;
    for (const auto& [k, v] : t.items()) all = all && v.get<bool>();
    out << "  trace identities: " << (all ? "all hold" : t.dump()) << "\n";
  }
  if (!j["split_sequence"].is_null() && !j["split_sequence"]["agree"].is_null()) {
    out << "  split sequence (ladder = trace): " << yes(j["split_sequence"]["agree"].get<bool>()) << "\n";
  }
  if (!j["drinfeld"].is_null()) {
    out << "  rational bad t: (" << join_strings(j["drinfeld"]["rational_bad_t"]) << ")\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// scan

std::string render_scan(const json& rows) {
  std::ostringstream out;
  out << "t\tpredicted\tactual\tfailing axiom\n";
  for (const auto& r : rows) {
    out << r["t"].get<std::string>() << "\t" << (r["predicted"].get<bool>() ? "yes" : "no") << "\t"
        << (r["actual"].get<bool>() ? "yes" : "no") << "\t"
        << (r["failing_axiom"].is_null() ? "-" : r["failing_axiom"].get<std::string>()) << "\n";
  }
  return out.str();
}

tdpert::ParallelSystem require_qserre_td(const tdpert::ParallelSystem& ps, bool normalize) {
  tdpert::ParallelSystem sys = ps;
  if (!tdpert::has_geometric_spectra(sys)) {
    if (!normalize) {
      throw CliFailure{kExitVerification,
                       "system spectra are not theta_i = q^(2i-d), theta*_i = q^(d-2i); rerun with --normalize to "
                       "rescale A and A* to this form"};
    }
    auto normalized = tdpert::normalize_geometric(sys);
    if (!normalized) throw CliFailure{kExitVerification, "system spectra are not geometric with ratio q^2; cannot normalize"};
    sys = *normalized;
  }
  const auto report = tdpert::verify_system(sys);
  if (!report.is_td_system) {
    throw CliFailure{kExitVerification, "input is not a tridiagonal system (" + *report.failing_axiom() + ")"};
  }
  if (!report.qserre_ok) throw CliFailure{kExitVerification, "input does not satisfy the q-Serre relations"};
  if (!report.is_sharp) throw CliFailure{kExitVerification, "input is not sharp"};
  return sys;
}

// ---------------------------------------------------------------------------
// iso

std::string first_difference(const std::vector<tdpert::Rational>& a, const std::vector<tdpert::Rational>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return std::to_string(i);
  }
  return std::to_string(std::min(a.size(), b.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tridiagonal systems of q-Serre type and their linear perturbations"};
  app.require_subcommand(1);

  Source src;
  std::string out_file;
  bool as_json = false;

  auto* build = app.add_subcommand("build", "build a thin system from a seed or parameter array");
  add_source_options(build, src);
  build->add_option("-o,--output", out_file, "output system file");

  auto* verify = app.add_subcommand("verify", "check the axioms and report invariants");
  add_source_options(verify, src);
  verify->add_flag("--json", as_json, "print the JSON report");
  verify->add_option("-o,--output", out_file, "also write the JSON report to a file");

  std::string t_value;
  auto* perturb = app.add_subcommand("perturb", "write the t-linear perturbation as a system file");
  add_source_options(perturb, src);
  perturb->add_option("--t", t_value, "perturbation parameter")->required();
  perturb->add_option("-o,--output", out_file, "output system file");

  std::string t_list;
  std::string t_range;
  bool auto_bad = false;
  bool normalize = false;
  auto* scan = app.add_subcommand("scan", "compare predicted and actual verdicts over values of t");
  add_source_options(scan, src);
  scan->add_option("--t", t_list, "comma-separated rationals");
  scan->add_option("--t-range", t_range, "A:B:STEP");
  scan->add_flag("--auto-bad", auto_bad, "add t = 0 and every rational root-derived bad t");
  scan->add_flag("--normalize", normalize, "rescale geometric spectra to the normalized form");
  scan->add_flag("--json", as_json, "print the JSON report");
  scan->add_option("-o,--output", out_file, "also write the JSON report to a file");

  std::string iso_left;
  std::string iso_right;
  auto* iso = app.add_subcommand("iso", "search for an isomorphism between two systems");
  iso->add_option("first", iso_left, "seed name or system file")->required();
  iso->add_option("second", iso_right, "seed name or system file")->required();
  iso->add_flag("--json", as_json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (build->parsed()) {
      const auto ps = load_source(src);
      const auto report = tdpert::verify_system(ps);
      if (!report.is_td_system) {
        throw CliFailure{kExitVerification, "thin candidate is not a tridiagonal system (" + *report.failing_axiom() + ")"};
      }
      emit(tdpert::system_to_json(ps), out_file);
      return 0;
    }

    if (verify->parsed()) {
      const json j = verify_report(load_source(src));
      if (!out_file.empty()) emit(j, out_file);
      std::cout << (as_json ? j.dump(2) + "\n" : render_verify(j));
      return j["axioms"]["is_td_system"].get<bool>() ? 0 : kExitVerification;
    }

    if (perturb->parsed()) {
      const auto ps = require_qserre_td(load_source(src), false);
      const auto pert = tdpert::perturb(ps, tdpert::Rational::parse(t_value));
      emit(tdpert::system_to_json(pert.system()), out_file);
      return 0;
    }

    if (scan->parsed()) {
      const auto ps = require_qserre_td(load_source(src), normalize);
      std::vector<tdpert::Rational> ts = parse_t_list(t_list);
      if (!t_range.empty()) {
        const auto more = parse_t_range(t_range);
        ts.insert(ts.end(), more.begin(), more.end());
      }
      if (auto_bad) {
        ts.emplace_back(0);
        const auto p = tdpert::drinfeld_poly(tdpert::split_sequence(ps), tdpert::QContext(ps.ctx.q, ps.diameter()));
        const auto bad = tdpert::rational_bad_t(p);
        ts.insert(ts.end(), bad.begin(), bad.end());
      }
      if (ts.empty()) throw CliFailure{kExitUsage, "no values of t given (use --t, --t-range or --auto-bad)"};
      const json rows = tdpert::scan_to_json(tdpert::theorem_scan(ps, ts));
      if (!out_file.empty()) emit(rows, out_file);
      std::cout << (as_json ? rows.dump(2) + "\n" : render_scan(rows));
      return 0;
    }

    if (iso->parsed()) {
      const auto a = load_operand(iso_left);
      const auto b = load_operand(iso_right);
      json j = {{"isomorphic", false}, {"intertwiner", nullptr}, {"reason", nullptr}};
      if (a.dim() != b.dim()) {
        j["reason"] = "dimensions differ";
      } else if (a.theta != b.theta || a.theta_star != b.theta_star) {
        j["reason"] = "eigenvalue sequences differ";
      } else {
        const auto ra = tdpert::verify_system(a);
        const auto rb = tdpert::verify_system(b);
        if (ra.is_sharp && rb.is_sharp) {
          const auto za = tdpert::split_sequence(a);
          const auto zb = tdpert::split_sequence(b);
          if (za != zb) j["reason"] = "\xce\xb6 differs at i = " + first_difference(za, zb);
        }
        if (j["reason"].is_null()) {
          const auto s = tdpert::find_isomorphism(a, b);
          if (s && s->rows() > 0 && *s * a.A == b.A * *s && *s * a.A_star == b.A_star * *s) {
            j["isomorphic"] = true;
            j["intertwiner"] = tdpert::matrix_to_json(*s);
          } else {
            j["reason"] = "no invertible intertwiner";
          }
        }
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else if (j["isomorphic"].get<bool>()) {
        std::cout << "isomorphic; S = " << j["intertwiner"]["entries"].dump() << "\n";
      } else {
        std::cout << "not isomorphic: " << j["reason"].get<std::string>() << "\n";
      }
      return 0;
    }
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const tdpert::TheoremMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const tdpert::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const tdpert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
