#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fc/catalogue.hpp"
#include "fc/cosine.hpp"
#include "fc/io.hpp"
#include "fc/sectorial.hpp"

namespace fc::detail {

namespace {

std::string escape_token(const std::string& k) {
  std::string out;
  for (char c : k) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

void Node::invalid(const std::string& msg) const {
  fail(ErrorKind::ConfigInvalid, (ptr_.empty() ? std::string("/") : ptr_) + ": " + msg);
}

Node Node::at(const std::string& key) const {
  if (!j_->is_object()) invalid("expected an object");
  const auto it = j_->find(key);
  if (it == j_->end()) Node(*j_, ptr_ + "/" + escape_token(key)).invalid("missing required field");
  return Node(*it, ptr_ + "/" + escape_token(key));
}

Node Node::at(std::size_t i) const {
  if (!j_->is_array()) invalid("expected an array");
  if (i >= j_->size()) invalid("index out of range");
  return Node((*j_)[i], ptr_ + "/" + std::to_string(i));
}

std::size_t Node::size() const {
  if (!j_->is_array()) invalid("expected an array");
  return j_->size();
}

double Node::num() const {
  if (j_->is_number()) return j_->get<double>();
  if (j_->is_string()) {
    const auto s = j_->get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  invalid("expected a number");
}

long long Node::integer() const {
  if (j_->is_number_integer()) return j_->get<long long>();
  if (j_->is_number_float()) {
    const double d = j_->get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  invalid("expected an integer");
}

std::uint64_t Node::u64() const {
  if (j_->is_number_unsigned()) return j_->get<std::uint64_t>();
  const long long v = integer();
  if (v < 0) invalid("expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

bool Node::boolean() const {
  if (!j_->is_boolean()) invalid("expected a boolean");
  return j_->get<bool>();
}

std::string Node::str() const {
  if (!j_->is_string()) invalid("expected a string");
  return j_->get<std::string>();
}

cplx Node::complex() const {
  if (j_->is_number()) return {j_->get<double>(), 0.0};
  if (j_->is_object()) return {has("re") ? at("re").num() : 0.0, has("im") ? at("im").num() : 0.0};
  if (j_->is_array() && j_->size() == 2) return {at(0).num(), at(1).num()};
  invalid("expected a complex number ({\"re\":..,\"im\":..}, [re, im] or a real)");
}

std::vector<double> Node::nums() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).num());
  return out;
}

std::vector<cplx> Node::complexes() const {
  std::vector<cplx> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).complex());
  return out;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ConfigInvalid, "/: " + what + " is not valid JSON (" + e.what() + ")");
  }
}

CMatrix parse_matrix(const Node& n) {
  const std::size_t rows = n.size();
  if (rows == 0) n.invalid("matrix must be nonempty");
  const std::size_t cols = n.at(0).size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const Node row = n.at(i);
    if (row.size() != cols) row.invalid("ragged matrix row");
    for (std::size_t j = 0; j < cols; ++j) {
      const cplx v = row.at(j).complex();
      if (!is_finite(v)) row.at(j).invalid("matrix entries must be finite");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return m;
}

MatrixOperator build_operator(const Node& n) {
  if (n.has("entries")) {
    const CMatrix m = parse_matrix(n.at("entries"));
    if (m.rows() != m.cols()) n.at("entries").invalid("matrix must be square");
    if (n.has("dim") && n.at("dim").integer() != m.rows()) n.at("dim").invalid("dim does not match entries");
    return MatrixOperator(m);
  }
  if (!n.has("generator")) n.invalid("operator needs \"entries\" or \"generator\"");
  const Node g = n.at("generator");
  const std::string kind = g.at("kind").str();
  const std::uint64_t seed = g.has("seed") ? g.at("seed").u64() : 1;
  const int dim = static_cast<int>(g.integer("n", 4));
  if (dim < 1 || dim > 64) g.at("n").invalid("n must lie in [1, 64]");
  if (kind == "diagonalizable") {
    CorpusOptions o;
    o.im_max = g.num("im_max", o.im_max);
    o.max_log10_cond = g.num("max_log10_cond", o.max_log10_cond);
    return random_diagonalizable(dim, seed, o);
  }
  if (kind == "hermitian") return random_hermitian(dim, seed, g.num("scale", 1.0));
  if (kind == "sectorial") return random_sectorial(dim, seed, g.num("angle", 1.0), g.num("max_log10_cond", 1.5));
  if (kind == "cosine") return random_cosine_generator(dim, seed, g.num("omega0", 0.5), g.num("max_log10_cond", 1.5));
  if (kind == "eigenvalues") {
    const auto l = g.at("eigenvalues").complexes();
    CVector v(static_cast<Eigen::Index>(l.size()));
    for (std::size_t i = 0; i < l.size(); ++i) v(static_cast<Eigen::Index>(i)) = l[i];
    return from_eigenvalues(v, seed, g.num("max_log10_cond", 0.0));
  }
  g.at("kind").invalid("unknown generator kind '" + kind + "'");
}

Region build_region(const Node& n) {
  const std::string kind = n.at("kind").str();
  try {
    if (kind == "strip") return Region::strip(n.at("theta").num());
    if (kind == "sector") return Region::sector(n.at("theta").num());
    if (kind == "double_sector") return Region::double_sector(n.at("theta").num());
    if (kind == "parabola") return Region::parabola(n.at("theta").num());
    if (kind == "venturi") return Region::venturi(n.at("phi").num(), n.at("theta").num());
    if (kind == "real_line") return Region::real_line();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigInvalid) throw;
    n.invalid(e.what());
  }
  n.at("kind").invalid("unknown region kind '" + kind + "'");
}

namespace {

std::function<cplx(double)> density_builtin(const Node& d) {
  const std::string name = d.at("builtin").str();
  const Node p = d.has("params") ? d.at("params") : d;
  if (name == "gaussian") {
    const double c = p.num("center", 0.0), s = p.num("sigma", 1.0);
    if (!(s > 0)) p.at("sigma").invalid("sigma must be positive");
    const cplx w = p.has("weight") ? p.at("weight").complex() : cplx(1.0);
    return [c, s, w](double t) { return w * std::exp(-0.5 * (t - c) * (t - c) / (s * s)) / (s * std::sqrt(2.0 * kPi)); };
  }
  if (name == "exp_two_sided") {
    const double r = p.at("rate").num();
    if (!(r > 0)) p.at("rate").invalid("rate must be positive");
    return [r](double t) { return cplx(0.5 * r * std::exp(-r * std::abs(t)), 0.0); };
  }
  if (name == "sech") {
    const double w = p.at("w").num();
    if (!(w > 0)) p.at("w").invalid("w must be positive");
    return [w](double t) { return cplx(1.0 / std::cosh(w * t), 0.0); };
  }
  if (name == "uniform") {
    const double a = p.num("a", -1.0), b = p.num("b", 1.0);
    if (!(b > a)) p.invalid("uniform density needs a < b");
    return [a, b](double t) { return (t >= a && t <= b) ? cplx(1.0 / (b - a), 0.0) : cplx(0.0); };
  }
  d.at("builtin").invalid("unknown density builtin '" + name + "'");
}

}  // namespace

ExpWeightedMeasure build_measure(const Node& n) {
  const double omega = n.at("omega").num();
  if (!(omega >= 0)) n.at("omega").invalid("omega must be nonnegative");
  std::vector<Atom> atoms;
  if (n.has("atoms")) {
    const Node a = n.at("atoms");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Node e = a.at(i);
      if (e.size() != 2) e.invalid("atom must be [s, weight]");
      atoms.push_back(Atom{e.at(0).num(), e.at(1).complex()});
    }
  }
  ExpWeightedMeasure mu(atoms, {}, omega);
  std::vector<Node> dens;
  if (n.has("density")) dens.push_back(n.at("density"));
  if (n.has("densities"))
    for (std::size_t i = 0; i < n.at("densities").size(); ++i) dens.push_back(n.at("densities").at(i));
  for (const Node& d : dens) {
    if (d.at("builtin").str() == "symbol") {
      const Symbol f = build_symbol(d.at("params").at("symbol"));
      if (!f.in_E()) d.at("params").at("symbol").invalid("inverse transform needs an Eclass symbol");
      InverseFourierOptions o;
      o.alpha = d.at("params").num("alpha", 0.0);
      const ExpWeightedMeasure m = inverse_fourier_symbol(f, o);
      mu = mu + ExpWeightedMeasure({}, m.densities(), omega);
      continue;
    }
    const auto fn = density_builtin(d);
    if (d.has("grid")) {
      const Node g = d.at("grid");
      const double S = g.at("S").num(), h = g.at("h").num();
      if (!(S > 0)) g.at("S").invalid("S must be positive");
      if (!(h > 0 && h < S)) g.at("h").invalid("h must lie in (0, S)");
      const long N = std::lround(2.0 * S / h);
      if (N > (1L << 24)) g.invalid("grid too large");
      DensityGrid dg;
      dg.start = -S;
      dg.h = 2.0 * S / static_cast<double>(N);
      for (long k = 0; k <= N; ++k) dg.values.push_back(fn(dg.at_index(static_cast<std::size_t>(k))));
      mu = mu + ExpWeightedMeasure({}, {dg}, omega);
    } else {
      mu = mu + ExpWeightedMeasure::from_density(fn, omega);
    }
  }
  return mu.with_omega(omega);
}

BVFunction build_bv(const Node& n) {
  if (n.has("constant")) return BVFunction::constant(n.at("constant").complex());
  if (n.has("even_steps")) {
    const Node e = n.at("even_steps");
    const auto edges = e.at("edges").nums();
    const auto levels = e.at("levels").complexes();
    if (edges.size() != levels.size() + 1) e.invalid("need one more edge than levels");
    if (edges.front() != 0.0 || edges.back() != 1.0) e.at("edges").invalid("edges must run from 0 to 1");
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (!(edges[i] > edges[i - 1])) e.at("edges").invalid("edges must increase");
    return BVFunction::even_steps(edges, levels);
  }
  if (!n.has("breakpoints")) n.invalid("BV profile needs \"breakpoints\", \"even_steps\" or \"constant\"");
  std::vector<BVPiece> pieces;
  const Node b = n.at("breakpoints");
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Node e = b.at(i);
    if (e.size() != 2) e.invalid("breakpoint must be [t, value]");
    const double t = e.at(0).num();
    if (!(t >= -1.0 && t <= 1.0)) e.at(0).invalid("breakpoints must lie in [-1, 1]");
    if (!pieces.empty() && t < pieces.back().breakpoint) e.at(0).invalid("breakpoints must be nondecreasing");
    pieces.push_back(BVPiece{t, e.at(1).complex()});
  }
  std::vector<cplx> ac;
  if (n.has("ac")) {
    ac = n.at("ac").complexes();
    if (ac.size() == 1) n.at("ac").invalid("AC grid needs at least 2 values");
  }
  return BVFunction(pieces, ac);
}

Symbol build_symbol(const Node& n) {
  const std::string name = n.at("builtin").str();
  static const json empty = json::object();
  const Node p = n.has("params") ? n.at("params") : Node(empty, n.pointer() + "/params");
  try {
    if (name == "exp_line") return exp_line(p.num("s", 0.0), p.num("theta", 1.0));
    if (name == "rational") {
      const auto poles = p.at("poles").complexes();
      std::vector<int> orders(poles.size(), 1);
      if (p.has("orders")) {
        const Node o = p.at("orders");
        if (o.size() != poles.size()) o.invalid("orders must match poles");
        for (std::size_t i = 0; i < poles.size(); ++i) orders[i] = static_cast<int>(o.at(i).integer());
      }
      const cplx scale = p.has("scale") ? p.at("scale").complex() : cplx(1.0);
      if (p.has("region")) return rational(poles, orders, scale, build_region(p.at("region")));
      return rational_strip(poles, orders, scale, p.num("theta", 0.0));
    }
    if (name == "tau_n") return tau_n(p.at("n").num(), p.num("theta", 1.0));
    if (name == "pv_transform") return pv_symbol(build_bv(p.at("bv")), p.num("theta", 1.0));
    if (name == "cosh_pair") return cosh_pair(p.at("w").num(), p.num("theta", 0.0));
    if (name == "indicator_smoothed") return indicator_smoothed(p.num("a", 1.0), p.num("kappa", 1.0), p.num("theta", 0.0));
    if (name == "imaginary_power") return imaginary_power(p.num("c", 1.0), p.num("phi", kPi / 2));
    if (name == "sector_ratio") return sector_ratio(p.num("k", 1.0), Region::sector(p.num("phi", kPi / 2)));
    if (name == "sector_regulariser") return sector_regulariser(p.num("phi", kPi / 2));
    if (name == "cos_sqrt") return cos_sqrt_symbol(p.at("t").num(), p.at("omega").num());
    if (name == "constant") {
      const Region r = p.has("region") ? build_region(p.at("region")) : Region::strip(p.num("theta", 1.0));
      return Symbol::constant(r, p.has("value") ? p.at("value").complex() : cplx(1.0));
    }
    if (name == "catalogue") {
      const auto cat = e_class_catalogue(p.num("theta", 1.0));
      const long long i = p.at("index").integer();
      if (i < 0 || i >= static_cast<long long>(cat.size())) p.at("index").invalid("catalogue index out of range");
      return cat[static_cast<std::size_t>(i)];
    }
    if (name == "product") {
      const Node f = p.at("factors");
      if (f.size() == 0) f.invalid("product needs at least one factor");
      Symbol acc = build_symbol(f.at(0));
      for (std::size_t i = 1; i < f.size(); ++i) acc = product(acc, build_symbol(f.at(i)));
      return acc;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigInvalid) throw;
    p.invalid(e.what());
  }
  n.at("builtin").invalid("unknown symbol builtin '" + name + "'");
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(cplx z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

}  // namespace fc::detail


namespace fc {

MatrixOperator operator_from_json(const std::string& text) {
  const auto j = detail::parse_text(text, "operator");
  return detail::build_operator(detail::Node(j, ""));
}

Symbol symbol_from_json(const std::string& text) {
  const auto j = detail::parse_text(text, "symbol");
  return detail::build_symbol(detail::Node(j, ""));
}

ExpWeightedMeasure measure_from_json(const std::string& text) {
  const auto j = detail::parse_text(text, "measure");
  return detail::build_measure(detail::Node(j, ""));
}

BVFunction bv_from_json(const std::string& text) {
  const auto j = detail::parse_text(text, "BV profile");
  return detail::build_bv(detail::Node(j, ""));
}

std::string matrix_to_json(const CMatrix& m) { return detail::to_json(m).dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace fc
