#include "cli_app.hpp"

#include "dualspace/embeddings.hpp"
#include "dualspace/lattice.hpp"
#include "dualspace/spaces.hpp"
#include "dualspace/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace dualspace::cli {

namespace {

using nlohmann::json;
using std::numbers::pi;

struct SpaceArgs {
  std::string id;
  int n = 0;
  int m = 0;
};

struct Options {
  SpaceArgs space;
  std::optional<std::string> seed;

  // embed
  std::string method = "all";
  std::string input;
  std::string input_kind = "y";
  std::optional<double> t;

  // cut-radius
  std::string direction;
  bool brute = false;

  // cutlocus-grid, verify
  int samples = 0;
  std::string property = "all";
  std::optional<double> tol;
};

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  std::string text;
  if (flag) {
    text = *flag;
  } else if (const char* env = std::getenv("DUALSPACE_SEED"); env != nullptr && *env != '\0') {
    text = env;
  } else {
    return kDefaultSeed;
  }
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return seed;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("invalid seed '" + text + "'");
  }
}

bool is_su3(const SpaceArgs& a) {
  return a.id == "su3";
}

SpaceDescriptor resolve_space(const SpaceArgs& a) {
  const auto family = parse_family(a.id);
  if (!family) throw std::invalid_argument("unknown space id '" + a.id + "'");
  if (a.n <= 0 || a.m <= 0) throw std::invalid_argument("space " + a.id + " needs n and m");
  return make_space(*family, a.n, a.m);
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json to_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

json to_json(const RMatrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(to_json(RVector(a.row(i).transpose())));
  return out;
}

json to_json(const Matrix& a) {
  if (a.is_real()) return to_json(a.real());
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      row.push_back(json::array({number(a(i, j).real()), number(a(i, j).imag())}));
    }
    out.push_back(row);
  }
  return out;
}

json space_json(const SpaceDescriptor& s) {
  return {{"id", to_string(s.family)},
          {"label", s.label()},
          {"n", s.n},
          {"m", s.m},
          {"rank", s.rank},
          {"field", to_string(s.field)},
          {"oriented", s.oriented},
          {"metric_scale", s.metric_scale}};
}

json report_json(const PropertyReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = number(v);
  return {{"property", r.property_name},
          {"samples", r.samples},
          {"failures", r.failures},
          {"worst_residual", number(r.worst_residual)},
          {"tolerance", number(r.tolerance)},
          {"seed", r.seed},
          {"details", details}};
}

void emit(std::ostream& out, json space, const std::string& method, json result, json residuals,
          std::uint64_t seed) {
  json doc = {{"space", std::move(space)},
              {"method", method},
              {"result", std::move(result)},
              {"residuals", std::move(residuals)},
              {"seed", seed},
              {"version", kVersion}};
  out << doc.dump(2) << "\n";
}

// ---- matrix input -------------------------------------------------------

double parse_real(const std::string& text, const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("cannot parse matrix entry '" + cell + "'");
}

// "x", "x+yi", "x-yj", "yi", "-i".
Complex parse_cell(const std::string& cell) {
  std::string s;
  for (char c : cell) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty matrix entry");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, cell), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+" || im == "-") im += "1";
  return {re.empty() ? 0.0 : parse_real(re, cell), parse_real(im, cell)};
}

Matrix build_matrix(const std::vector<std::vector<Complex>>& rows, bool complex) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty matrix input");
  const std::size_t cols = rows.front().size();
  CMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix input");
    for (std::size_t j = 0; j < cols; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return Matrix(a, complex ? Field::Complex : Field::Real);
}

Matrix parse_json_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("matrix JSON must be an array of rows");
  std::vector<std::vector<Complex>> rows;
  bool complex = false;
  for (const auto& row : doc) {
    if (!row.is_array()) throw std::invalid_argument("matrix JSON must be an array of rows");
    std::vector<Complex> r;
    for (const auto& cell : row) {
      if (cell.is_number()) {
        r.emplace_back(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() &&
                 cell[1].is_number()) {
        r.emplace_back(cell[0].get<double>(), cell[1].get<double>());
        complex = true;
      } else {
        throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
      }
    }
    rows.push_back(std::move(r));
  }
  return build_matrix(rows, complex);
}

Matrix parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  bool complex = false;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::vector<Complex> r;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const Complex z = parse_cell(cell);
      complex = complex || cell.find_first_of("ij") != std::string::npos;
      r.push_back(z);
    }
    rows.push_back(std::move(r));
  }
  return build_matrix(rows, complex);
}

Matrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty matrix input");
  return text[first] == '[' ? parse_json_matrix(text) : parse_csv_matrix(text);
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

RVector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::istringstream cells(text);
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse direction entry '" + cell + "'");
    }
  }
  RVector v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

// ---- lattice-info ---------------------------------------------------------

json lattice_json(const LatticeBasis& basis) {
  return {{"rank", basis.rank()},
          {"gram", to_json(basis.gram())},
          {"generator_norms", to_json(basis.norms())},
          {"orthonormal", is_orthonormal(basis)}};
}

int cmd_lattice_info(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o.seed);
  if (is_su3(o.space)) {
    emit(out, json{{"id", "su3"}}, "lattice-info", lattice_json(su3_integral_lattice()),
         json::object(), seed);
    return kOk;
  }
  const SpaceDescriptor s = resolve_space(o.space);
  json result = lattice_json(s.lattice);
  result["lattice_in_cartan"] = to_json(s.lattice_in_cartan);
  emit(out, space_json(s), "lattice-info", result, json::object(), seed);
  return kOk;
}

// ---- cut-radius -----------------------------------------------------------

int cmd_cut_radius(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o.seed);
  const bool su3 = is_su3(o.space);
  std::optional<SpaceDescriptor> space;
  if (!su3) space = resolve_space(o.space);
  const LatticeBasis basis = su3 ? su3_integral_lattice() : space->lattice;

  RVector u = parse_vector(o.direction);
  if (u.size() != basis.rank()) {
    throw std::invalid_argument("direction needs " + std::to_string(basis.rank()) + " entries");
  }
  if (u.norm() == 0.0) throw DomainError("cut radius of the zero direction");
  u.normalize();
  const FlatCoordinates unit{basis.to_lattice(u)};

  const CutRadiusResult brute = cut_radius_brute(basis, unit);
  const bool orthonormal = is_orthonormal(basis);
  const CutRadiusResult chosen = o.brute ? brute : cut_radius(basis, unit);
  json result = {{"direction", to_json(u)},
                 {"lattice_coords", to_json(unit.coords)},
                 {"radius", chosen.radius},
                 {"minimizer", chosen.minimizer},
                 {"closed_form_used", chosen.used_closed_form},
                 {"orthonormal", orthonormal}};
  json residuals = {{"brute_radius", brute.radius},
                    {"naive_radius", naive_cut_radius(basis, unit)}};
  if (orthonormal) {
    residuals["closed_vs_brute"] = std::abs(cut_radius_closed(basis, unit) - brute.radius);
  }
  emit(out, su3 ? json{{"id", "su3"}} : space_json(*space), "cut-radius", result, residuals, seed);
  return kOk;
}

// ---- cutlocus-grid --------------------------------------------------------

int cmd_cutlocus_grid(const Options& o, std::ostream& out) {
  const bool su3 = is_su3(o.space);
  const LatticeBasis basis = su3 ? su3_integral_lattice() : resolve_space(o.space).lattice;
  const Eigen::Index r = basis.rank();
  if (r > 3) throw DomainError("cutlocus-grid supports rank <= 3 (rank " + std::to_string(r) + ")");
  const int samples = o.samples > 0 ? o.samples : 360;

  out << std::setprecision(17);
  if (r == 1) out << "theta,x1,radius\n";
  if (r == 2) out << "theta,x1,x2,radius\n";
  if (r == 3) out << "theta,phi,x1,x2,x3,radius\n";
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < samples; ++k) {
    RVector u(r);
    std::vector<double> angles;
    if (r == 1) {
      u(0) = k % 2 == 0 ? 1.0 : -1.0;
      angles = {k % 2 == 0 ? 0.0 : pi};
    } else if (r == 2) {
      const double th = 2.0 * pi * k / samples;
      u << std::cos(th), std::sin(th);
      angles = {th};
    } else {
      const double z = 1.0 - 2.0 * (k + 0.5) / samples;
      const double th = std::acos(z);
      const double ph = std::fmod(golden * k, 2.0 * pi);
      u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), z;
      angles = {th, ph};
    }
    const double radius = cut_radius(basis, FlatCoordinates{basis.to_lattice(u)}).radius;
    for (double a : angles) out << a << ",";
    for (Eigen::Index i = 0; i < r; ++i) out << u(i) << ",";
    out << radius << "\n";
  }
  return kOk;
}

// ---- embed ----------------------------------------------------------------

json point_json(const SpaceDescriptor& s, const SubspacePoint& p) {
  json j = {{"representative", to_json(p.rep)},
            {"orientation", p.orientation},
            {"space_like", space_like(s, p)}};
  try {
    const FlatDecomposition log = log_compact(s, p);
    j["flat_cartan"] = to_json(log.cartan_coords);
    j["flat_coordinates"] = to_json(log.h.coords);
    j["flat_length"] = s.metric_scale * log.cartan_coords.norm();
    j["region_fraction"] = region_fraction(s, log.h);
  } catch (const DomainError& e) {
    j["flat_coordinates"] = nullptr;
    j["log_error"] = e.what();
  }
  return j;
}

int cmd_embed(const Options& o, std::istream& in, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o.seed);
  if (is_su3(o.space)) throw std::invalid_argument("embed needs a catalog space, not su3");
  const SpaceDescriptor s = resolve_space(o.space);

  std::vector<Embedding> methods;
  if (o.method == "all") {
    methods = {Embedding::P, Embedding::G, Embedding::F};
    if (s.oriented && s.n == 1) methods.push_back(Embedding::B);
  } else if (const auto e = parse_embedding(o.method)) {
    methods = {*e};
  } else {
    throw std::invalid_argument("unknown method '" + o.method + "'");
  }

  GroupElement a;
  if (o.t) {
    if (!o.input.empty()) throw std::invalid_argument("give either --t or --input");
    if (s.n != 1) throw std::invalid_argument("--t needs a rank-one space (n = 1)");
    RMatrix y = RMatrix::Zero(s.m, 1);
    y(0, 0) = std::tanh(*o.t / s.metric_scale);
    a = {Side::Noncompact, transitivity_element(s, Matrix(y))};
  } else {
    if (o.input.empty()) throw std::invalid_argument("embed needs --input (file or -) or --t");
    const Matrix input = parse_matrix(read_input(o.input, in));
    if (o.input_kind == "y") {
      a = {Side::Noncompact, transitivity_element(s, input)};
    } else if (o.input_kind == "group") {
      a = make_group_element(s, input, Side::Noncompact);
    } else {
      throw std::invalid_argument("unknown input kind '" + o.input_kind + "'");
    }
  }

  const SubspacePoint source = p_embed(s, a);
  const FlatDecomposition nc = flat_decompose(s, log_noncompact(s, source));
  json result = {{"input_group_element", to_json(a.a)},
                 {"noncompact_flat_cartan", to_json(nc.cartan_coords)},
                 {"noncompact_flat_coordinates", to_json(nc.h.coords)},
                 {"noncompact_length", s.metric_scale * nc.cartan_coords.norm()}};
  json embeddings = json::object();
  std::vector<std::pair<std::string, SubspacePoint>> points;
  for (Embedding e : methods) {
    SubspacePoint p;
    json extra = json::object();
    switch (e) {
      case Embedding::P: p = source; break;
      case Embedding::G: {
        const GroupElement q = g_embed(s, a);
        extra["compact_group_element"] = to_json(q.a);
        p = g_embed_point(s, a);
        break;
      }
      case Embedding::F: p = f_embed(s, source); break;
      case Embedding::B: p = b_embed(s, source); break;
    }
    json pj = point_json(s, p);
    for (auto& [k, v] : extra.items()) pj[k] = v;
    if (e == Embedding::B) pj["b_angle"] = b_embed_rank1(s.metric_scale * nc.cartan_coords.norm());
    embeddings[to_string(e)] = pj;
    points.emplace_back(to_string(e), p);
  }
  result["embeddings"] = embeddings;

  json residuals = json::object();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      residuals[points[i].first + "-" + points[j].first] =
          number(point_distance(points[i].second, points[j].second));
    }
  }
  emit(out, space_json(s), o.method, result, residuals, seed);
  return kOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o.seed);
  const std::size_t samples = o.samples > 0 ? static_cast<std::size_t>(o.samples) : 200;
  if (o.tol && !(*o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  auto tol_or = [&](double fallback) { return o.tol ? *o.tol : fallback; };

  std::vector<PropertyReport> reports;
  json space = nullptr;
  if (o.property == "trig") {
    reports.push_back(check_trig_suite(samples, seed, tol_or(1e-8)));
  } else {
    if (o.space.id.empty()) throw std::invalid_argument("verify needs a space");
    const SpaceDescriptor s = resolve_space(o.space);
    space = space_json(s);
    std::vector<Embedding> methods;
    if (o.method != "all") {
      const auto e = parse_embedding(o.method);
      if (!e) throw std::invalid_argument("unknown method '" + o.method + "'");
      methods = {*e};
    }
    auto methods_or = [&](std::vector<Embedding> fallback) {
      return methods.empty() ? fallback : methods;
    };
    const std::string& p = o.property;
    if (p == "all") {
      reports = run_space_suite(s, samples, seed, o.tol.value_or(0.0));
    } else if (p == "triple") {
      reports.push_back(check_triple_equality(s, samples, seed, tol_or(1e-9)));
    } else if (p == "equivariance") {
      for (Embedding e : methods_or({Embedding::P, Embedding::G, Embedding::F})) {
        reports.push_back(check_equivariance(s, e, samples, seed, tol_or(1e-9)));
      }
    } else if (p == "image-region") {
      std::vector<Embedding> fallback{Embedding::P, Embedding::G, Embedding::F};
      if (s.oriented && s.n == 1) fallback.push_back(Embedding::B);
      for (Embedding e : methods_or(fallback)) {
        reports.push_back(check_image_region(s, e, samples, seed, 1.0 - 1e-6,
                                             default_approach_tol(s, e)));
      }
    } else if (p == "cut-loci") {
      reports.push_back(check_cut_loci_grassmannian(s, samples, seed, tol_or(1e-9)));
    } else if (p == "cut-radius") {
      reports.push_back(check_cut_radius(s, samples, seed, tol_or(1e-12)));
    } else if (p == "restriction") {
      reports.push_back(check_restriction(s.n, s.m, samples, seed, tol_or(1e-9)));
    } else if (p == "round-trip") {
      reports.push_back(check_round_trip(s, samples, seed, tol_or(1e-9)));
    } else if (p == "h-independence") {
      reports.push_back(check_h_independence(s, samples, seed, tol_or(1e-9)));
    } else {
      throw std::invalid_argument("unknown property '" + p + "'");
    }
  }

  std::size_t failures = 0;
  json residuals = json::array();
  for (const auto& r : reports) {
    failures += r.failures;
    residuals.push_back(report_json(r));
  }
  emit(out, space, o.property, {{"passed", failures == 0}, {"failures", failures}}, residuals,
       seed);
  return failures == 0 ? kOk : kVerifyFailed;
}

void add_space(CLI::App* sub, Options& o, bool required) {
  auto* opt = sub->add_option("space,--space", o.space.id,
                              "gr-real, gr-complex, oriented, sphere (or su3 where supported)");
  if (required) opt->required();
  sub->add_option("n,-n,--n", o.space.n, "subspace dimension n");
  sub->add_option("m,-m,--m", o.space.m, "complement dimension m");
  sub->add_option("--seed", o.seed, "random seed (default 0x5EED, or $DUALSPACE_SEED)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Embeddings of noncompact symmetric spaces into their compact duals"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* lattice = app.add_subcommand("lattice-info", "unit lattice of a space (or su3)");
  add_space(lattice, o, true);

  auto* cut = app.add_subcommand("cut-radius", "cut radius along a flat direction");
  add_space(cut, o, true);
  cut->add_option("--direction", o.direction, "comma-separated flat direction")->required();
  cut->add_flag("--brute", o.brute, "report the brute-force radius even for orthonormal lattices");

  auto* grid = app.add_subcommand("cutlocus-grid", "CSV of cut radii over unit flat directions");
  add_space(grid, o, true);
  grid->add_option("--samples", o.samples, "number of directions (default 360)")
      ->check(CLI::PositiveNumber);

  auto* embed = app.add_subcommand("embed", "embed one noncompact coset");
  add_space(embed, o, true);
  embed->add_option("--method", o.method, "p, g, f, b or all")
      ->check(CLI::IsMember({"p", "g", "f", "b", "all"}));
  embed->add_option("--input", o.input, "matrix file (JSON or CSV), - for stdin");
  embed->add_option("--input-kind", o.input_kind, "y: m x n block Y, group: element of G^n")
      ->check(CLI::IsMember({"y", "group"}));
  embed->add_option("--t", o.t, "rank-one shortcut: flat length t");

  auto* verify = app.add_subcommand("verify", "run property checks");
  add_space(verify, o, false);
  verify
      ->add_option("--property", o.property,
                   "all, triple, equivariance, image-region, cut-loci, cut-radius, restriction, "
                   "round-trip, h-independence, trig")
      ->check(CLI::IsMember({"all", "triple", "equivariance", "image-region", "cut-loci",
                             "cut-radius", "restriction", "round-trip", "h-independence",
                             "trig"}));
  verify->add_option("--method", o.method, "embedding for per-embedding properties")
      ->check(CLI::IsMember({"p", "g", "f", "b", "all"}));
  verify->add_option("--samples", o.samples, "samples per property (default 200)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", o.tol, "tolerance override");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (lattice->parsed()) return cmd_lattice_info(o, out);
    if (cut->parsed()) return cmd_cut_radius(o, out);
    if (grid->parsed()) return cmd_cutlocus_grid(o, out);
    if (embed->parsed()) return cmd_embed(o, in, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dualspace::cli
