// trigdisc: point sets, kernels, scans and verification from the command line.
//
// Exit status: 0 success, 1 assertion failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trigdisc/discretize.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/random.hpp"
#include "trigdisc/verify.hpp"

using namespace trigdisc;
using nlohmann::json;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::uint64_t seed = 20240611;
  std::string out;
  std::string format;
};

struct PointSource {
  int fibonacci = 0;
  std::uint64_t korobov = 0;
  std::vector<std::int64_t> h;
  std::string file;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_points(CLI::App* sub, PointSource& s) {
  auto* fib = sub->add_option("--fibonacci", s.fibonacci, "Fibonacci set F_n, n >= 2");
  auto* kor = sub->add_option("--korobov", s.korobov, "Korobov modulus m");
  auto* h = sub->add_option("--h", s.h, "Korobov generating vector h_1,...,h_d")
                ->delimiter(',');
  auto* file = sub->add_option("--points", s.file, "point file written by gen-points");
  kor->needs(h);
  h->needs(kor);
  fib->excludes(kor)->excludes(file);
  kor->excludes(file);
}

// "q/m" -> (q, m)
std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  const std::int64_t q = std::stoll(s.substr(0, slash), &used);
  const std::int64_t m = slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1));
  if (m <= 0) throw std::invalid_argument("bad fraction '" + s + "'");
  return {q, m};
}

PointSet points_from_fractions(const std::vector<std::vector<std::string>>& rows,
                               std::optional<LatticeGenerator> gen) {
  if (rows.empty()) throw std::invalid_argument("point file holds no points");
  const std::size_t d = rows.front().size();
  std::int64_t den = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> fr;
  for (const auto& row : rows) {
    if (row.size() != d) throw std::invalid_argument("ragged point file");
    for (const auto& cell : row) {
      fr.push_back(parse_fraction(cell));
      den = std::lcm(den, fr.back().second);
    }
  }
  std::vector<std::int64_t> q;
  for (const auto& [a, b] : fr) q.push_back(a * (den / b));
  if (gen && gen->m != static_cast<std::uint64_t>(den)) gen.reset();
  PointSet pts(d, static_cast<std::uint64_t>(den), std::move(q), gen);
  if (gen && lattice_points(*gen).numerators() != pts.numerators())
    throw std::invalid_argument("points do not match their generator");
  return pts;
}

LatticeGenerator generator_from_json(const json& g) {
  LatticeGenerator lg;
  lg.family = g.at("family") == "fibonacci" ? LatticeGenerator::Family::Fibonacci
                                            : LatticeGenerator::Family::Korobov;
  lg.m = g.at("m").get<std::uint64_t>();
  lg.h = g.at("h").get<std::vector<std::int64_t>>();
  lg.fibonacci_index = g.value("n", 0);
  return lg;
}

PointSet read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text);
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : j.at("points")) rows.push_back(r.get<std::vector<std::string>>());
    std::optional<LatticeGenerator> gen;
    if (j.contains("generator")) gen = generator_from_json(j["generator"]);
    return points_from_fractions(rows, gen);
  }
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  bool header = true;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {  // column names
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return points_from_fractions(rows, std::nullopt);
}

PointSet resolve_points(const PointSource& s) {
  if (!s.file.empty()) return read_points(s.file);
  if (s.korobov > 0) return korobov_points(s.korobov, s.h);
  if (s.fibonacci > 0) return fibonacci_points(s.fibonacci);
  throw std::invalid_argument("choose --fibonacci, --korobov with --h, or --points");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// Every option of the subcommand with its effective value.
json flag_set(const CLI::App* sub) {
  json flags = json::object();
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    const auto& res = opt->results();
    flags[opt->get_name()] = opt->count() > 0 ? join(res, ",") : opt->get_default_str();
  }
  return flags;
}

class Output {
 public:
  Output(const CLI::App* sub, const Common& c) : sub_(sub), c_(c) {}

  json header() const {
    return {{"tool", "trigdisc"}, {"version", kVersion}, {"command", sub_->get_name()},
            {"seed", c_.seed}, {"flags", flag_set(sub_)}};
  }

  void emit_json(json body) const {
    body["header"] = header();
    write(body.dump(2) + "\n");
  }

  void emit_csv(const std::vector<std::string>& columns,
                const std::vector<std::vector<std::string>>& rows) const {
    std::ostringstream os;
    const json h = header();
    os << "# tool=trigdisc version=" << kVersion << " command=" << sub_->get_name()
       << " seed=" << c_.seed << "\n";
    os << "# flags=" << h["flags"].dump() << "\n";
    os << join(columns, ",") << "\n";
    for (const auto& r : rows) os << join(r, ",") << "\n";
    write(os.str());
  }

  bool csv() const { return c_.format == "csv"; }

 private:
  void write(const std::string& s) const {
    if (c_.out.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(c_.out);
    if (!f) throw std::invalid_argument("cannot write '" + c_.out + "'");
    f << s;
  }

  const CLI::App* sub_;
  const Common& c_;
};

std::string num(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<double> parse_p_list(const std::vector<std::string>& ps) {
  std::vector<double> out;
  for (const auto& p : ps) {
    const double v = (p == "inf") ? kInfNorm : std::stod(p);
    if (!(v >= 1.0)) throw std::invalid_argument("p must be >= 1 or 'inf'");
    out.push_back(v);
  }
  return out;
}

// ------------------------------------------------------------ subcommands

int cmd_gen_points(const Output& o, const PointSource& src) {
  const PointSet pts = resolve_points(src);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t nu = 0; nu < pts.size(); ++nu) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < pts.dim(); ++i)
      r.push_back(std::to_string(pts.numerator(nu, i)) + "/" +
                  std::to_string(pts.denominator()));
    rows.push_back(r);
  }
  if (o.csv()) {
    std::vector<std::string> cols;
    for (std::size_t i = 1; i <= pts.dim(); ++i) cols.push_back("x" + std::to_string(i));
    o.emit_csv(cols, rows);
  } else {
    json j{{"dim", pts.dim()}, {"count", pts.size()}, {"points", rows},
           {"units", "coordinate / 2pi"}};
    if (pts.generator()) j["generator"] = pts.generator()->to_json();
    o.emit_json(j);
  }
  return 0;
}

int cmd_dump_kernel(const Output& o, const std::string& kind,
                    const std::vector<std::int64_t>& params) {
  const KernelId id{kernel_kind_from_string(kind), params};
  const TrigPoly k = build_kernel(id);
  if (o.csv()) {
    std::vector<std::string> cols;
    for (std::size_t i = 1; i <= k.dim(); ++i) cols.push_back("k" + std::to_string(i));
    cols.push_back("re");
    cols.push_back("im");
    std::vector<std::vector<std::string>> rows;
    for (const auto& [f, c] : k.terms()) {
      std::vector<std::string> r;
      for (auto v : f) r.push_back(std::to_string(v));
      r.push_back(num(c.real()));
      r.push_back(num(c.imag()));
      rows.push_back(r);
    }
    o.emit_csv(cols, rows);
  } else {
    json j = k.to_json();
    j["kernel"] = id.to_string();
    o.emit_json(j);
  }
  return 0;
}

int cmd_gamma_scan(const Output& o, int n_min, int n_max) {
  const auto rows = gamma_scan(n_min, n_max);
  if (o.csv()) {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
      out.push_back({std::to_string(r.n), std::to_string(r.b_n), std::to_string(r.n_max),
                     num(r.ratio)});
    o.emit_csv({"n", "b_n", "N_max", "ratio"}, out);
  } else {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"n", r.n}, {"b_n", r.b_n}, {"N_max", r.n_max}, {"ratio", r.ratio}});
    o.emit_json({{"rows", arr}});
  }
  return 0;
}

int cmd_korobov_search(const Output& o, std::int64_t L, std::size_t d) {
  const auto res = korobov_search(L, d);
  if (o.csv())
    o.emit_csv({"L", "d", "cardGamma", "m", "h", "verified"},
               {{std::to_string(res.L), std::to_string(res.d), std::to_string(res.card_gamma),
                 std::to_string(res.m), std::to_string(res.h),
                 res.verified ? "true" : "false"}});
  else
    o.emit_json(res.to_json());
  return res.verified ? 0 : kExitAssertion;
}

int cmd_verify_convolution(const Output& o, const Common& c, const PointSource& src,
                           std::vector<std::int64_t> j, int pairs) {
  const PointSet pts = resolve_points(src);
  if (j.empty()) j.assign(pts.dim(), 2);
  if (j.size() != pts.dim()) throw std::invalid_argument("--j needs one entry per dimension");
  std::vector<std::int64_t> box(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) box[i] = 2 * j[i] - 1;
  const FreqSet diff = build_rectangle(box);
  bool exact = true;
  for (const auto& k : diff)
    if (!k.is_zero() && std::abs(exponential_sum(pts, k) - 1.0) < 1e-9) {
      exact = false;
      break;
    }
  const FreqSet q = build_rectangle(j);
  double worst = 0.0;
  json cases = json::array();
  for (int t = 0; t < pairs; ++t) {
    const TrigPoly f = random_poly(q, derive_seed(c.seed, 2 * static_cast<std::uint64_t>(t)));
    const TrigPoly g = random_poly(q, derive_seed(c.seed, 2 * static_cast<std::uint64_t>(t) + 1));
    double err = 0.0;
    const TrigPoly diff = discretized_convolution(f, g, pts) - convolve(f, g);
    for (const auto& [k, v] : diff.terms())
      err = std::max(err, std::abs(v));
    worst = std::max(worst, err);
    cases.push_back({{"pair", t}, {"maxError", err}});
  }
  // Outside the exactness regime the harness expects aliasing.
  const bool pass = exact ? worst <= 1e-10 : worst >= 1e-3;
  const std::string expectation = exact ? "exact" : "aliasing";
  if (o.csv()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& cs : cases)
      rows.push_back({std::to_string(cs["pair"].get<int>()), num(cs["maxError"].get<double>())});
    o.emit_csv({"pair", "maxError"}, rows);
  } else {
    o.emit_json({{"points", pts.size()}, {"j", j}, {"expectation", expectation},
                 {"maxError", worst}, {"cases", cases}, {"passed", pass}});
  }
  return pass ? 0 : kExitAssertion;
}

int cmd_verify_norms(const Output& o, const Common& c, const PointSource& src,
                     std::vector<std::int64_t> j, const std::vector<double>& ps, int trials) {
  const PointSet pts = resolve_points(src);
  if (j.empty()) j.assign(pts.dim(), 2);
  if (j.size() != pts.dim()) throw std::invalid_argument("--j needs one entry per dimension");
  bool pass = true;
  json results = json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto rep = universal_check({j}, pts, ps[i], trials, derive_seed(c.seed, i));
    const auto& r = rep.rectangles.front();
    bool ok = rep.within_bounds && r.representation_error <= 1e-10;
    if (ps[i] == 2.0) ok = ok && std::abs(r.lower - 1.0) <= 1e-10 && std::abs(r.upper - 1.0) <= 1e-10;
    pass = pass && ok;
    json jr = rep.to_json();
    jr["passed"] = ok;
    results.push_back(jr);
    rows.push_back({num(ps[i]), num(r.lower), num(r.upper), num(r.bound_lower),
                    num(r.bound_upper), num(r.representation_error), ok ? "true" : "false"});
  }
  if (o.csv())
    o.emit_csv({"p", "lower", "upper", "boundLower", "boundUpper", "representationError",
                "passed"},
               rows);
  else
    o.emit_json({{"points", pts.size()}, {"j", j}, {"results", results}, {"passed", pass}});
  return pass ? 0 : kExitAssertion;
}

int cmd_op_norm_scan(const Output& o, const PointSource& src, const std::string& kernel,
                     int r_min, int r_max, const std::vector<double>& ps) {
  const PointSet pts = resolve_points(src);
  if (r_min > r_max) throw std::invalid_argument("--r-min exceeds --r-max");
  const KernelKind kind = kernel_kind_from_string(kernel);
  if (kind != KernelKind::HCValleePoussin && kind != KernelKind::DeltaHCVP)
    throw std::invalid_argument("--kernel must be hc-vp or delta-hc-vp");
  std::vector<std::vector<std::string>> rows;
  json arr = json::array();
  for (int r = r_min; r <= r_max; ++r) {
    const KernelId id{kind, {r, static_cast<std::int64_t>(pts.dim())}};
    const ShiftOperator op(build_kernel(id), pts, build_separable_kernel(id));
    for (double p : ps) {
      const auto res = op_norm(op, p);
      const double theta = std::isinf(p) ? 1.0 : std::max(1.0 / p, 1.0 - 1.0 / p);
      const double scaled = res.value / std::pow(static_cast<double>(r), theta);
      rows.push_back({std::to_string(r), num(p), num(res.value), num(scaled),
                      res.method});
      json j = res.to_json();
      j["r"] = r;
      j["scaled"] = scaled;
      arr.push_back(j);
    }
  }
  if (o.csv())
    o.emit_csv({"r", "p", "norm", "norm_over_r_theta", "method"}, rows);
  else
    o.emit_json({{"kernel", kernel}, {"points", pts.size()}, {"rows", arr}});
  return 0;
}

int cmd_universal_check(const Output& o, const Common& c, const PointSource& src,
                        std::int64_t N, int dyadic, const std::vector<double>& ps, int trials) {
  const PointSet pts = resolve_points(src);
  std::vector<std::vector<std::int64_t>> collection;
  std::string label;
  if (dyadic >= 0) {
    collection = dyadic_rectangles(dyadic, pts.dim());
    label = "dyadic n=" + std::to_string(dyadic);
  } else {
    if (N <= 0) {
      if (!pts.generator()) throw std::invalid_argument("--N is required for non-lattice points");
      N = universal_collection_bound(*pts.generator(), pts.dim());
      if (N < 1) throw std::invalid_argument("no rectangle is in the exact regime; pass --N");
    }
    collection = hyperbolic_rectangles(N, pts.dim());
    label = "prod j <= " + std::to_string(N);
  }
  bool pass = true;
  json results = json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto rep = universal_check(collection, pts, ps[i], trials, derive_seed(c.seed, 10, i));
    const bool ok = rep.within_bounds && rep.max_representation_error <= 1e-10;
    pass = pass && ok;
    json jr = rep.to_json();
    jr["passed"] = ok;
    results.push_back(jr);
    rows.push_back({num(ps[i]), num(rep.worst_lower), num(rep.worst_upper),
                    num(rep.max_representation_error), ok ? "true" : "false"});
  }
  if (o.csv())
    o.emit_csv({"p", "worstLower", "worstUpper", "maxRepresentationError", "passed"}, rows);
  else
    o.emit_json({{"collection", label}, {"rectangles", collection.size()},
                 {"points", pts.size()}, {"results", results}, {"passed", pass}});
  return pass ? 0 : kExitAssertion;
}

int cmd_run_suite(const Output& o, const Common& c, const std::string& path, bool seed_given) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  SuiteConfig config = SuiteConfig::from_json(j);
  if (seed_given) config.seed = c.seed;
  const SuiteReport rep = run_suite(config);
  for (const auto& r : rep.criteria)
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": "
              << r.summary << "\n";
  json body = rep.to_json();
  if (o.csv()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.criteria)
      rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false"});
    o.emit_csv({"id", "name", "passed"}, rows);
  } else {
    o.emit_json(body);
  }
  if (!config.output.empty()) std::ofstream(config.output) << body.dump(2) << "\n";
  return rep.passed() ? 0 : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice point sets, trigonometric kernels and sampling discretization checks"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kVersion);

  // gen-points
  Common gp_c;
  PointSource gp_s;
  auto* gp = app.add_subcommand("gen-points", "write a Fibonacci or Korobov point set");
  add_common(gp, gp_c, "csv");
  add_points(gp, gp_s);

  // dump-kernel
  Common dk_c;
  std::string dk_kind = "vallee-poussin";
  std::vector<std::int64_t> dk_params;
  auto* dk = app.add_subcommand("dump-kernel", "write a kernel's Fourier coefficients");
  add_common(dk, dk_c, "json");
  dk->add_option("--kind", dk_kind,
                 "dirichlet, fejer, vallee-poussin, block-a, tensor-vp, hc-vp, delta-hc-vp");
  dk->add_option("--params", dk_params, "orders per dimension, or r,d for hc-vp / delta-hc-vp")
      ->delimiter(',')
      ->required();

  // gamma-scan
  Common gs_c;
  int gs_min = 3, gs_max = 25;
  auto* gs = app.add_subcommand("gamma-scan", "N_max(n) and N_max(n)/b_n for Fibonacci sets");
  add_common(gs, gs_c, "csv");
  gs->add_option("--n-min", gs_min, "first n (>= 3)");
  gs->add_option("--n-max", gs_max, "last n");

  // korobov-search
  Common ks_c;
  std::int64_t ks_L = 2;
  std::size_t ks_d = 3;
  auto* ks = app.add_subcommand("korobov-search", "smallest prime m and h exact on Gamma(L,d)");
  add_common(ks, ks_c, "json");
  ks->add_option("--L", ks_L, "hyperbolic cross size L >= 1");
  ks->add_option("--d", ks_d, "dimension d >= 2");

  // verify-convolution
  Common vc_c;
  PointSource vc_s;
  std::vector<std::int64_t> vc_j;
  int vc_pairs = 10;
  auto* vc = app.add_subcommand("verify-convolution",
                                "discretized vs exact convolution on T(R(j))");
  add_common(vc, vc_c, "json");
  add_points(vc, vc_s);
  vc->add_option("--j", vc_j, "rectangle R(j)")->delimiter(',');
  vc->add_option("--pairs", vc_pairs, "random (f, g) pairs")->check(CLI::PositiveNumber);

  // verify-norms
  Common vn_c;
  PointSource vn_s;
  std::vector<std::int64_t> vn_j;
  std::vector<std::string> vn_p{"2", "4", "inf"};
  int vn_trials = 5;
  auto* vn = app.add_subcommand("verify-norms",
                                "sampling discretization ratios and norm bounds on T(R(j))");
  add_common(vn, vn_c, "json");
  add_points(vn, vn_s);
  vn->add_option("--j", vn_j, "rectangle R(j)")->delimiter(',');
  vn->add_option("--p", vn_p, "list of p (numbers or inf)")->delimiter(',');
  vn->add_option("--trials", vn_trials, "random polynomials")->check(CLI::PositiveNumber);

  // op-norm-scan
  Common os_c;
  PointSource os_s;
  std::string os_kernel = "hc-vp";
  int os_rmin = 2, os_rmax = 6;
  std::vector<std::string> os_p{"1", "2", "inf"};
  auto* os = app.add_subcommand("op-norm-scan", "shift operator norms over a range of r");
  add_common(os, os_c, "csv");
  add_points(os, os_s);
  os->add_option("--kernel", os_kernel, "hc-vp or delta-hc-vp");
  os->add_option("--r-min", os_rmin, "first r");
  os->add_option("--r-max", os_rmax, "last r");
  os->add_option("--p", os_p, "subset of 1,2,inf")->delimiter(',');

  // universal-check
  Common uc_c;
  PointSource uc_s;
  std::int64_t uc_N = 0;
  int uc_dyadic = -1;
  std::vector<std::string> uc_p{"2", "4", "inf"};
  int uc_trials = 3;
  auto* uc = app.add_subcommand("universal-check",
                                "two-sided discretization over a collection of rectangles");
  add_common(uc, uc_c, "json");
  add_points(uc, uc_s);
  auto* uc_n_opt = uc->add_option("--N", uc_N, "collection {R(j): prod j <= N} (default: largest exact)");
  uc->add_option("--dyadic", uc_dyadic, "collection {R(2^s): |s|_1 = n} instead")
      ->excludes(uc_n_opt);
  uc->add_option("--p", uc_p, "list of p (numbers or inf)")->delimiter(',');
  uc->add_option("--trials", uc_trials, "random polynomials per rectangle")
      ->check(CLI::PositiveNumber);

  // run-suite
  Common rs_c;
  std::string rs_config;
  auto* rs = app.add_subcommand("run-suite", "run the acceptance suite from a JSON config");
  add_common(rs, rs_c, "json");
  rs->add_option("--config", rs_config, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gp) return cmd_gen_points(Output(gp, gp_c), gp_s);
    if (*dk) return cmd_dump_kernel(Output(dk, dk_c), dk_kind, dk_params);
    if (*gs) return cmd_gamma_scan(Output(gs, gs_c), gs_min, gs_max);
    if (*ks) return cmd_korobov_search(Output(ks, ks_c), ks_L, ks_d);
    if (*vc) return cmd_verify_convolution(Output(vc, vc_c), vc_c, vc_s, vc_j, vc_pairs);
    if (*vn)
      return cmd_verify_norms(Output(vn, vn_c), vn_c, vn_s, vn_j, parse_p_list(vn_p), vn_trials);
    if (*os)
      return cmd_op_norm_scan(Output(os, os_c), os_s, os_kernel, os_rmin, os_rmax,
                              parse_p_list(os_p));
    if (*uc)
      return cmd_universal_check(Output(uc, uc_c), uc_c, uc_s, uc_N, uc_dyadic,
                                 parse_p_list(uc_p), uc_trials);
    if (*rs)
      return cmd_run_suite(Output(rs, rs_c), rs_c, rs_config,
                           rs->get_option("--seed")->count() > 0);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
