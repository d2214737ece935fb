#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocs/certificate.hpp"
#include "ocs/certificate_json.hpp"
#include "ocs/clifford.hpp"
#include "ocs/convexity.hpp"
#include "ocs/dense_sos.hpp"
#include "ocs/forms.hpp"
#include "ocs/octonion.hpp"
#include "ocs/random.hpp"
#include "ocs/rational.hpp"

namespace {

// Exit codes: 0 verified, 1 verification failed, 2 usage or parse error.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Reports go to --output when given, stdout otherwise.
bool write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

ocs::Octonion random_octonion(ocs::Rng& rng) {
  ocs::Octonion u;
  for (int i = 0; i < 8; ++i) u.c[i] = rng.rational(3, 2);
  return u;
}

std::vector<Check> algebra_checks(const ocs::RightMultTable& table,
                                  std::uint64_t seed) {
  using namespace ocs;
  std::vector<Check> checks;
  Rng rng(seed);

  {
    Check c{"octonion unit element", true, "e_0 neutral on both sides"};
    const Octonion one = Octonion::e(0);
    for (int i = 0; i < 8 && c.pass; ++i) {
      const Octonion x = Octonion::e(i);
      if (!(mul(one, x, table) == x) || !(mul(x, one, table) == x)) {
        c.pass = false;
        c.detail = "e_0 e_" + std::to_string(i) + " deviates";
      }
    }
    checks.push_back(c);
  }
  {
    Check c{"octonion norm multiplicativity", true,
            "64 basis pairs and 20 rational pairs exact"};
    for (int i = 0; i < 8 && c.pass; ++i)
      for (int j = 0; j < 8 && c.pass; ++j) {
        const Octonion p = mul(Octonion::e(i), Octonion::e(j), table);
        if (norm_sq(p) != 1) {
          c.pass = false;
          c.detail = "|e_" + std::to_string(i) + " e_" + std::to_string(j) +
                     "| differs from 1";
        }
      }
    for (int trial = 0; trial < 20 && c.pass; ++trial) {
      const Octonion a = random_octonion(rng);
      const Octonion b = random_octonion(rng);
      if (norm_sq(mul(a, b, table)) != norm_sq(a) * norm_sq(b)) {
        c.pass = false;
        c.detail = "rational pair violates |ab|^2 = |a|^2 |b|^2";
      }
    }
    checks.push_back(c);
  }
  {
    Check c{"octonion conjugation reversal", true,
            "conj(ab) = conj(b) conj(a) on 64 basis pairs"};
    for (int i = 0; i < 8 && c.pass; ++i)
      for (int j = 0; j < 8 && c.pass; ++j) {
        const Octonion a = Octonion::e(i);
        const Octonion b = Octonion::e(j);
        if (!(conj(mul(a, b, table)) == mul(conj(b), conj(a), table))) {
          c.pass = false;
          c.detail = "fails at (e_" + std::to_string(i) + ", e_" +
                     std::to_string(j) + ")";
        }
      }
    checks.push_back(c);
  }
  {
    Check c{"octonion alternativity", true,
            "a(ab) = (aa)b and (ab)b = a(bb) on 20 rational pairs"};
    for (int trial = 0; trial < 20 && c.pass; ++trial) {
      const Octonion a = random_octonion(rng);
      const Octonion b = random_octonion(rng);
      if (!(mul(a, mul(a, b, table), table) ==
            mul(mul(a, a, table), b, table)) ||
          !(mul(mul(a, b, table), b, table) ==
            mul(a, mul(b, b, table), table))) {
        c.pass = false;
        c.detail = "rational pair violates the alternative laws";
      }
    }
    checks.push_back(c);
  }

  const CliffordSystem sys{table};
  {
    Check c{"Clifford relations", true, ""};
    int good = 0;
    std::string first;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const bool ok =
            i == j ? sys.S(i) * sys.S(i) == SignedPerm16::identity()
                   : sys.S(i) * sys.S(j) == (sys.S(j) * sys.S(i)).negate();
        if (ok) {
          ++good;
        } else if (first.empty()) {
          first = i == j ? "S_" + std::to_string(i) + "^2 = I"
                         : "S_" + std::to_string(i) + " S_" +
                               std::to_string(j) + " + S_" +
                               std::to_string(j) + " S_" +
                               std::to_string(i) + " = 0";
        }
      }
    c.pass = good == 81;
    c.detail = c.pass ? "81/81 Clifford relations exact"
                      : std::to_string(good) + "/81 relations hold; first " +
                            "violated: " + first;
    checks.push_back(c);
  }
  {
    Check c{"nine-fold product", true, "S_0 S_1 ... S_8 = -I"};
    SignedPerm16 p = SignedPerm16::identity();
    for (int i = 0; i < 9; ++i) p = p * sys.S(i);
    if (!(p == SignedPerm16::identity().negate())) {
      c.pass = false;
      c.detail = "product of the nine generators is not -I";
    }
    checks.push_back(c);
  }
  {
    Check c{"trace orthogonality", true,
            "256 products pairwise orthogonal, squared norm 16"};
    std::vector<const CliffordMatrix*> all;
    for (int level = 0; level <= 4; ++level)
      for (const CliffordMatrix& e : sys.v_basis(level)) all.push_back(&e);
    for (std::size_t a = 0; a < all.size() && c.pass; ++a) {
      if (sp_frobenius_inner(all[a]->p, all[a]->p) != 16) {
        c.pass = false;
        c.detail = "a product has squared norm differing from 16";
        break;
      }
      for (std::size_t b = a + 1; b < all.size(); ++b)
        if (sp_frobenius_inner(all[a]->p, all[b]->p) != 0) {
          c.pass = false;
          c.detail = "two distinct products are not trace-orthogonal";
          break;
        }
    }
    checks.push_back(c);
  }
  return checks;
}

int cmd_verify_algebra(bool json, const std::string& output,
                       const std::string& flip, std::uint64_t seed) {
  ocs::RightMultTable table = ocs::RightMultTable::canonical();
  if (!flip.empty()) {
    int r = -1, c = -1;
    char comma = 0;
    std::istringstream in(flip);
    if (!(in >> r >> comma >> c) || comma != ',' || r < 0 || r > 7 || c < 0 ||
        c > 7) {
      std::cerr << "error: --flip-sign wants `r,c` with 0 <= r,c <= 7\n";
      return kUsage;
    }
    table = table.with_flipped_sign(r, c);
  }
  const std::vector<Check> checks = algebra_checks(table, seed);
  bool all = true;
  for (const Check& c : checks) all = all && c.pass;

  std::string text;
  if (json) {
    nlohmann::json j;
    j["command"] = "verify-algebra";
    j["pass"] = all;
    nlohmann::json list = nlohmann::json::array();
    for (const Check& c : checks)
      list.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = list;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    for (const Check& c : checks)
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail
          << "\n";
    out << (all ? "algebra verified\n" : "algebra verification FAILED\n");
    text = out.str();
  }
  if (!write_output(text, output)) return kUsage;
  return all ? kOk : kFailed;
}

int cmd_certify(int k, std::uint64_t seed, const std::string& format,
                const std::string& output) {
  using namespace ocs;
  if (k < 16 || k > 24) {
    std::cerr << "error: certify wants 16 <= k <= 24, got " << k << "\n";
    return kUsage;
  }
  nlohmann::json j = certificate_json(k);

  // Re-verify the emitted certificate independently of the solver.
  const ConeProblem p = cone_problem(k, ConeForm::kQuartic);
  const FeasibilityResult res = feasibility_solve(p);
  bool verified = false;
  if (res.feasible)
    verified = verify_decomposition(p, res.lambda, 50, seed);
  else
    verified = farkas_verify(p, res.farkas.row).valid;
  j["verified"] = verified;

  const ConvexityReport conv = convexity_report(k, 20, 200, 1e-8, seed);
  j["convexity"] = {{"k", conv.k},
                    {"num_samples", conv.num_samples},
                    {"min_hessian_eig", conv.min_hessian_eig},
                    {"min_midpoint_slack", conv.min_midpoint_slack},
                    {"window_ok", conv.window_ok}};

  std::string text;
  if (format == "text") {
    std::ostringstream out;
    out << "k = " << k << ": " << j["verdict"].get<std::string>()
        << (verified ? " (certificate verified)" : " (VERIFICATION FAILED)")
        << "\n";
    out << "convexity: min Hessian eigenvalue "
        << fmt_double(conv.min_hessian_eig) << ", min midpoint slack "
        << fmt_double(conv.min_midpoint_slack) << ", window "
        << (conv.window_ok ? "ok" : "violated") << "\n";
    text = out.str();
  } else {
    text = j.dump(2) + "\n";
  }
  if (!write_output(text, output)) return kUsage;
  if (!output.empty())
    std::cout << "k = " << k << ": " << j["verdict"].get<std::string>()
              << (verified ? " (certificate verified)\n"
                           : " (VERIFICATION FAILED)\n");
  return verified && conv.window_ok ? kOk : kFailed;
}

int cmd_gap_table(const std::string& range, const std::string& format,
                  const std::string& output) {
  using namespace ocs;
  int lo = 0, hi = 0;
  const auto dots = range.find("..");
  if (dots == std::string::npos) {
    std::cerr << "error: --k-range wants `A..B`\n";
    return kUsage;
  }
  try {
    lo = std::stoi(range.substr(0, dots));
    hi = std::stoi(range.substr(dots + 2));
  } catch (const std::exception&) {
    std::cerr << "error: --k-range wants integer endpoints\n";
    return kUsage;
  }
  if (lo < 2 || hi < lo) {
    std::cerr << "error: --k-range wants 2 <= A <= B\n";
    return kUsage;
  }

  struct Row {
    int k;
    Rational sos_min;
    Rational gap;
    bool beyond;
  };
  std::vector<Row> rows;
  for (int k = lo; k <= hi; ++k) {
    const Rational solved = sos_min_invariant(k);
    const Rational closed = sos_min_formula(k);
    if (solved != closed) {
      std::cerr << "verification failed: k = " << k << " solver gives "
                << rat_str(solved) << ", closed form " << rat_str(closed)
                << "\n";
      return kFailed;
    }
    const Rational gap = gap_invariant(k);
    if (gap != gap_formula(k)) {
      std::cerr << "verification failed: gap mismatch at k = " << k << "\n";
      return kFailed;
    }
    rows.push_back(Row{k, closed, gap, gap > 2});
  }

  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["command"] = "gap-table";
    nlohmann::json list = nlohmann::json::array();
    for (const Row& r : rows)
      list.push_back({{"k", r.k},
                      {"sos_min", rat_str(r.sos_min)},
                      {"gap", rat_str(r.gap)},
                      {"gap_gt_2", r.beyond}});
    j["rows"] = list;
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream out;
    out << "k,sos_min,gap,gap_gt_2\n";
    for (const Row& r : rows)
      out << r.k << "," << rat_str(r.sos_min) << "," << rat_str(r.gap) << ","
          << (r.beyond ? "true" : "false") << "\n";
    text = out.str();
  } else {
    std::ostringstream out;
    out << "  k  sos_min      gap          gap>2\n";
    for (const Row& r : rows) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "%3d  %-11s  %-11s  %s\n", r.k,
                    rat_str(r.sos_min).c_str(), rat_str(r.gap).c_str(),
                    r.beyond ? "yes" : "no");
      out << buf;
    }
    text = out.str();
  }
  if (!write_output(text, output)) return kUsage;
  return kOk;
}

int cmd_dense(bool motzkin, const std::string& graph_path,
              const std::string& form_path, double tol, std::uint64_t seed,
              const std::string& format, const std::string& output) {
  using namespace ocs;
  const int sources = int(motzkin) + int(!graph_path.empty()) +
                      int(!form_path.empty());
  if (sources != 1) {
    std::cerr << "error: dense wants exactly one of --motzkin, "
                 "--stable-set FILE, or a form file\n";
    return kUsage;
  }
  if (tol <= 0) {
    std::cerr << "error: --tol must be positive\n";
    return kUsage;
  }

  DenseForm f;
  std::string label;
  int alpha = 0;
  try {
    if (motzkin) {
      f = motzkin_form();
      label = "motzkin";
    } else if (!graph_path.empty()) {
      std::ifstream in(graph_path);
      if (!in) {
        std::cerr << "error: cannot open " << graph_path << "\n";
        return kUsage;
      }
      const Graph g = parse_graph_text(in);
      f = stable_set_form(g);
      alpha = independence_number(g);
      label = "stable-set " + graph_path;
    } else {
      std::ifstream in(form_path);
      if (!in) {
        std::cerr << "error: cannot open " << form_path << "\n";
        return kUsage;
      }
      f = parse_form_text(in);
      label = form_path;
    }
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  }

  SphereExtrema ext;
  SdpResult sdp;
  try {
    ext = sphere_extrema(f, 48, seed);
    sdp = sos_lower_bound(f, tol);
  } catch (const std::exception& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kFailed;
  }
  const double spread = ext.max - ext.min;
  const bool gap_defined =
      spread > 1e-8 * std::max(1.0, std::abs(ext.max));
  const double gap = gap_defined ? (ext.max - sdp.gamma) / spread : 0;

  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["command"] = "dense";
    j["form"] = label;
    j["n"] = f.n;
    j["degree"] = f.degree;
    j["min"] = ext.min;
    j["max"] = ext.max;
    j["sos_bound"] = sdp.gamma;
    j["primal_dual_gap"] = sdp.primal_dual_gap;
    j["residual"] = sdp.residual;
    j["gap_defined"] = gap_defined;
    if (gap_defined) j["gap"] = gap;
    if (alpha > 0) j["independence_number"] = alpha;
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream out;
    out << "form,n,degree,min,max,sos_bound,gap\n";
    out << label << "," << f.n << "," << f.degree << ","
        << fmt_double(ext.min) << "," << fmt_double(ext.max) << ","
        << fmt_double(sdp.gamma) << ","
        << (gap_defined ? fmt_double(gap) : "") << "\n";
    text = out.str();
  } else {
    std::ostringstream out;
    out << "form: " << label << " (" << f.n << " variables, degree "
        << f.degree << ")\n";
    out << "sphere min: " << fmt_double(ext.min) << "\n";
    out << "sphere max: " << fmt_double(ext.max) << "\n";
    out << "sos bound: " << fmt_double(sdp.gamma) << "\n";
    if (alpha > 0)
      out << "independence number: " << alpha << " (1/alpha = "
          << fmt_double(1.0 / alpha) << ")\n";
    if (gap_defined)
      out << "gap: " << fmt_double(gap) << "\n";
    else
      out << "gap: undefined (form is constant on the sphere; the sos "
             "bound is tight)\n";
    text = out.str();
  }
  if (!write_output(text, output)) return kUsage;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Octonion Cauchy-Schwarz certificates and SOS gap tools"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "RNG seed for sampled checks")
      ->capture_default_str();

  auto* va = app.add_subcommand(
      "verify-algebra", "Check the octonion and Clifford identities");
  va->fallthrough();
  bool va_json = false;
  std::string va_flip, va_output;
  va->add_flag("--json", va_json, "machine-readable pass/fail list");
  va->add_option("--flip-sign", va_flip,
                 "test hook: corrupt table entry `r,c` before checking");
  va->add_option("--output", va_output, "write the report to a file");

  auto* ce = app.add_subcommand(
      "certify", "Decide the cone membership of the invariant quartic");
  ce->fallthrough();
  int ce_k = 17;
  std::string ce_format = "json", ce_output;
  ce->add_option("--k", ce_k, "number of octonion columns (16..24)")
      ->capture_default_str();
  ce->add_option("--format", ce_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  ce->add_option("--output", ce_output, "write the certificate to a file");

  auto* gt = app.add_subcommand(
      "gap-table", "Exact sos_min and gap table over a k range");
  gt->fallthrough();
  std::string gt_range = "2..24", gt_format = "text", gt_output;
  gt->add_option("--k-range", gt_range, "inclusive range `A..B`")
      ->capture_default_str();
  gt->add_option("--format", gt_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  gt->add_option("--output", gt_output, "write the table to a file");

  auto* de = app.add_subcommand(
      "dense", "Sphere extrema, SOS bound, and gap for a small dense form");
  de->fallthrough();
  bool de_motzkin = false;
  std::string de_graph, de_form, de_format = "text", de_output;
  double de_tol = 1e-6;
  de->add_flag("--motzkin", de_motzkin, "use the Motzkin sextic");
  de->add_option("--stable-set", de_graph, "graph file (`n m` then edges)");
  de->add_option("form_file", de_form,
                 "form file (lines `coefficient exponents`)");
  de->add_option("--tol", de_tol, "SDP accuracy target")
      ->capture_default_str();
  de->add_option("--format", de_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  de->add_option("--output", de_output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (va->parsed())
      return cmd_verify_algebra(va_json, va_output, va_flip, seed);
    if (ce->parsed()) return cmd_certify(ce_k, seed, ce_format, ce_output);
    if (gt->parsed()) return cmd_gap_table(gt_range, gt_format, gt_output);
    if (de->parsed())
      return cmd_dense(de_motzkin, de_graph, de_form, de_tol, seed,
                       de_format, de_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
