#pragma once

// Text forms: scalar expressions, group-element and function literals, and
// the certificate / probe file format.
//
//   space  = hpi | l2g
//   rep    = pi-affine | pi-plus | schroedinger | pi-shearlet
//   target = chi(0,1)
//   grid   = -1 2 1024            (two more triples for 2D)
//   term   = -2^(-1/2) * affine(1/2, 0)
//   element = affine(1, 3)        (probe files)
//
// Lines starting with '#' and blank lines are ignored.

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lindep/certificate.hpp"
#include "lindep/coefficients.hpp"
#include "lindep/dependency.hpp"
#include "lindep/functions.hpp"
#include "lindep/groups.hpp"
#include "lindep/groupring.hpp"
#include "lindep/numerics.hpp"
#include "lindep/rational.hpp"
#include "lindep/representations.hpp"

namespace lindep {

class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Split on `sep` at parenthesis depth 0.
inline std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.emplace_back(trim(s.substr(start)));
  return out;
}

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Complex parse() {
    Complex v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("bad scalar '" + std::string(s_) + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  Complex expr() {
    Complex v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Complex term() {
    Complex v = unary();
    while (true) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        const Complex d = unary();
        if (d == Complex{}) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Complex unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Complex power() {
    const Complex base = primary();
    if (!eat('^')) return base;
    const Complex ex = unary();
    if (base.imag() == 0.0 && ex.imag() == 0.0 && (base.real() > 0.0 || ex.real() == std::round(ex.real())))
      return std::pow(base.real(), ex.real());
    return std::pow(base, ex);
  }
  Complex primary() {
    skip();
    if (eat('(')) {
      const Complex v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("sqrt needs '('");
      const Complex v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v.imag() == 0.0 && v.real() >= 0.0) return std::sqrt(v.real());
      return std::sqrt(v);
    }
    if (eat_word("pi")) return std::numbers::pi;
    if (eat_word("i")) return {0.0, 1.0};
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const std::string rest(begin, s_.size() - pos_);
    const double v = std::strtod(rest.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - rest.c_str());
    if (used == 0) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    if (!std::isdigit(static_cast<unsigned char>(rest[0])) && rest[0] != '.') fail("expected a number");
    pos_ += used;
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {0.0, v};
    }
    return v;
  }
};

}  // namespace detail

/// Evaluates a scalar such as `-2^(-1/2)`, `1/3 + 2i`, `sqrt(2)/2`.
inline Complex parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }

inline double parse_real(std::string_view text) {
  const Complex v = parse_scalar(text);
  if (v.imag() != 0.0) throw parse_error("expected a real number, got '" + std::string(text) + "'");
  return v.real();
}

namespace detail {

struct Call {
  std::string name;
  std::string args;
};

inline Call split_call(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) return {std::string(text), ""};
  if (text.back() != ')') throw parse_error("missing ')' in '" + std::string(text) + "'");
  return {std::string(trim(text.substr(0, open))), std::string(text.substr(open + 1, text.size() - open - 2))};
}

inline std::vector<double> real_args(const std::string& args) {
  std::vector<double> out;
  if (trim(args).empty()) return out;
  for (const auto& a : split_top(args, ',')) out.push_back(parse_real(a));
  return out;
}

inline std::vector<Rational> rational_args(std::string_view args) {
  std::vector<Rational> out;
  if (trim(args).empty()) return out;
  for (const auto& a : split_top(args, ',')) {
    try {
      out.push_back(parse_rational(a));
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what());
    }
  }
  return out;
}

inline void arity(const Call& c, std::size_t got, std::size_t want) {
  if (got != want)
    throw parse_error(c.name + "(...) takes " + std::to_string(want) + " arguments, got " + std::to_string(got));
}

}  // namespace detail

/// affine(a,b), wh(t,a...,b...), shear(a,s,t1,t2), zn(k...), cyc(k,m),
/// heis(z; a...; b...). Lattice coordinates are exact rationals.
inline GroupElement parse_element(std::string_view text) {
  const auto c = detail::split_call(text);
  try {
    if (c.name == "affine") {
      const auto p = detail::real_args(c.args);
      detail::arity(c, p.size(), 2);
      return AffineElement{p[0], p[1]};
    }
    if (c.name == "wh") {
      const auto p = detail::real_args(c.args);
      if (p.size() < 3 || p.size() % 2 == 0) throw parse_error("wh(t, a..., b...) needs 1 + 2n arguments");
      return element_from_parameters(GroupKind::WeylHeisenberg, p);
    }
    if (c.name == "shear") {
      const auto p = detail::real_args(c.args);
      detail::arity(c, p.size(), 4);
      return ShearletElement{p[0], p[1], {p[2], p[3]}};
    }
    if (c.name == "zn") {
      ZnElement z;
      for (const auto& q : detail::rational_args(c.args)) {
        if (!is_integer(q)) throw parse_error("zn(...) needs integers");
        z.k.push_back(boost::multiprecision::numerator(q).convert_to<std::int64_t>());
      }
      if (z.k.empty()) throw parse_error("zn(...) needs at least one coordinate");
      return z;
    }
    if (c.name == "cyc") {
      const auto q = detail::rational_args(c.args);
      detail::arity(c, q.size(), 2);
      if (!is_integer(q[0]) || !is_integer(q[1])) throw parse_error("cyc(k, m) needs integers");
      return CyclicElement(boost::multiprecision::numerator(q[0]).convert_to<std::int64_t>(),
                           boost::multiprecision::numerator(q[1]).convert_to<std::int64_t>());
    }
    if (c.name == "heis") {
      const auto parts = detail::split_top(c.args, ';');
      if (parts.size() != 3) throw parse_error("heis(z; a...; b...) needs three ';'-separated groups");
      const auto z = detail::rational_args(parts[0]);
      if (z.size() != 1) throw parse_error("heis: z must be a single rational");
      return HeisenbergLatticeElement(z[0], detail::rational_args(parts[1]), detail::rational_args(parts[2]));
    }
  } catch (const parse_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  throw parse_error("unknown element literal '" + std::string(text) + "'");
}

inline std::string format_element(const GroupElement& g) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, AffineElement>) {
          os << "affine(" << x.a << ", " << x.b << ")";
        } else if constexpr (std::is_same_v<X, ShearletElement>) {
          os << "shear(" << x.a << ", " << x.s << ", " << x.t[0] << ", " << x.t[1] << ")";
        } else if constexpr (std::is_same_v<X, WeylHeisenbergElement>) {
          os << "wh(" << x.t;
          for (double v : x.a) os << ", " << v;
          for (double v : x.b) os << ", " << v;
          os << ")";
        } else if constexpr (std::is_same_v<X, ZnElement>) {
          os << "zn(";
          for (std::size_t i = 0; i < x.k.size(); ++i) os << (i ? ", " : "") << x.k[i];
          os << ")";
        } else if constexpr (std::is_same_v<X, CyclicElement>) {
          os << "cyc(" << x.k << ", " << x.m << ")";
        } else {
          os << "heis(" << to_string(x.z) << ";";
          for (std::size_t i = 0; i < x.a.size(); ++i) os << (i ? ", " : " ") << to_string(x.a[i]);
          os << ";";
          for (std::size_t i = 0; i < x.b.size(); ++i) os << (i ? ", " : " ") << to_string(x.b[i]);
          os << ")";
        }
      },
      g);
  return os.str();
}

/// chi(l,r), chihat, gauss, ngauss, dgauss, dgausshat, hat(l,r), bump(l,r),
/// dbump(l,r), const(c[,dim]), gauss2, skewgauss2.
inline AnalyticFunction parse_function(std::string_view text) {
  namespace fn = functions;
  const auto c = detail::split_call(text);
  const auto with_interval = [&](auto make, double lo, double hi) {
    const auto p = detail::real_args(c.args);
    if (p.empty()) return make(lo, hi);
    detail::arity(c, p.size(), 2);
    if (!(p[0] < p[1])) throw parse_error(c.name + ": empty interval");
    return make(p[0], p[1]);
  };
  const auto no_args = [&] {
    if (!detail::trim(c.args).empty()) throw parse_error(c.name + " takes no arguments");
  };
  if (c.name == "chi") return with_interval(fn::indicator, 0.0, 1.0);
  if (c.name == "hat") return with_interval(fn::hat, 0.0, 2.0);
  if (c.name == "bump") return with_interval(fn::bump, -1.0, 1.0);
  if (c.name == "dbump") return with_interval(fn::bump_derivative, -1.0, 1.0);
  if (c.name == "chihat") return no_args(), fn::indicator_hat();
  if (c.name == "gauss") return no_args(), fn::gaussian();
  if (c.name == "ngauss") return no_args(), fn::normalized_gaussian();
  if (c.name == "dgauss") return no_args(), fn::gaussian_derivative();
  if (c.name == "dgausshat") return no_args(), fn::gaussian_derivative_hat();
  if (c.name == "gauss2") return no_args(), fn::gaussian2d();
  if (c.name == "skewgauss2") return no_args(), fn::skew_gaussian2d();
  if (c.name == "const") {
    const auto parts = detail::split_top(c.args, ',');
    if (parts.empty() || parts.size() > 2 || parts[0].empty()) throw parse_error("const(c[, dim])");
    const int dim = parts.size() == 2 ? static_cast<int>(parse_real(parts[1])) : 1;
    if (dim != 1 && dim != 2) throw parse_error("const: dimension must be 1 or 2");
    return fn::constant(parse_scalar(parts[0]), dim);
  }
  throw parse_error("unknown function literal '" + std::string(text) + "'");
}

/// `lo hi n` or `lo1 hi1 n1 lo2 hi2 n2`.
inline Grid parse_grid(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  auto count = [](const std::string& s) {
    const double v = parse_real(s);
    if (!(v >= 1.0) || v != std::floor(v)) throw parse_error("grid point count must be a positive integer");
    return static_cast<std::size_t>(v);
  };
  try {
    if (tok.size() == 3) return Grid(parse_real(tok[0]), parse_real(tok[1]), count(tok[2]));
    if (tok.size() == 6)
      return Grid({parse_real(tok[0]), parse_real(tok[3])}, {parse_real(tok[1]), parse_real(tok[4])},
                  {count(tok[2]), count(tok[5])});
  } catch (const parse_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  throw parse_error("grid needs 'lo hi n' or 'lo1 hi1 n1 lo2 hi2 n2'");
}

/// `add lo hi panels nodes [midpoint|gl]` or `mult lo hi panels nodes
/// [midpoint|gl] [both]`.
inline ParameterAxis parse_axis(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.size() < 5) throw parse_error("axis needs 'add|mult lo hi panels nodes [midpoint|gl] [both]'");
  QuadratureRule rule{QuadratureKind::GaussLegendreComposite, static_cast<std::size_t>(parse_real(tok[3])),
                      static_cast<std::size_t>(parse_real(tok[4]))};
  bool both = false;
  for (std::size_t i = 5; i < tok.size(); ++i) {
    if (tok[i] == "midpoint") rule.kind = QuadratureKind::Midpoint;
    else if (tok[i] == "gl") rule.kind = QuadratureKind::GaussLegendreComposite;
    else if (tok[i] == "both") both = true;
    else throw parse_error("unknown axis option '" + tok[i] + "'");
  }
  if (rule.total_nodes() == 0) throw parse_error("axis needs at least one node");
  const double lo = parse_real(tok[1]);
  const double hi = parse_real(tok[2]);
  if (!(lo < hi)) throw parse_error("axis: empty interval");
  if (tok[0] == "add") {
    if (both) throw parse_error("'both' only applies to multiplicative axes");
    return ParameterAxis::additive(lo, hi, rule);
  }
  if (tok[0] == "mult") {
    if (!(lo > 0.0)) throw parse_error("multiplicative axis must stay above 0");
    return ParameterAxis::multiplicative(lo, hi, rule, both);
  }
  throw parse_error("axis kind must be 'add' or 'mult'");
}

/// `lo hi panels nodes [breakpoint...]`: composite Gauss-Legendre rule.
inline NodeSet parse_rule(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.size() < 4) throw parse_error("rule needs 'lo hi panels nodes [breakpoint...]'");
  std::vector<double> bp;
  for (std::size_t i = 4; i < tok.size(); ++i) bp.push_back(parse_real(tok[i]));
  try {
    return line_rule(parse_real(tok[0]), parse_real(tok[1]),
                     {QuadratureKind::GaussLegendreComposite, static_cast<std::size_t>(parse_real(tok[2])),
                      static_cast<std::size_t>(parse_real(tok[3]))},
                     bp);
  } catch (const parse_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

// ---------------------------------------------------------------------------
// Key = value documents
// ---------------------------------------------------------------------------

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

inline std::vector<KeyValue> read_key_values(std::istream& in) {
  std::vector<KeyValue> out;
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    const auto hash = raw.find('#');
    const std::string_view line = detail::trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw parse_error("expected 'key = value'", n);
    KeyValue kv{std::string(detail::trim(line.substr(0, eq))), std::string(detail::trim(line.substr(eq + 1))), n};
    if (kv.key.empty()) throw parse_error("empty key", n);
    out.push_back(std::move(kv));
  }
  return out;
}

/// Fields common to certificate and probe documents.
struct SpaceSpec {
  std::string space = "hpi";
  std::optional<RepresentationTag> rep;
  std::optional<AnalyticFunction> target;
  std::string target_text;
  std::optional<Grid> grid;
  std::optional<AnalyticFunction> window;  // u for l2g targets
  std::optional<NodeSet> rule;             // x-quadrature for l2g targets
  std::vector<ParameterAxis> axes;
  std::size_t first_line = 0;

  bool take(const KeyValue& kv) {
    if (kv.key == "space") {
      if (kv.value != "hpi" && kv.value != "l2g") throw parse_error("space must be 'hpi' or 'l2g'", kv.line);
      space = kv.value;
    } else if (kv.key == "rep") {
      try {
        rep = parse_representation(kv.value);
      } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), kv.line);
      }
    } else if (kv.key == "target") {
      target = parse_function(kv.value);
      target_text = kv.value;
    } else if (kv.key == "grid") {
      grid = parse_grid(kv.value);
    } else if (kv.key == "window") {
      window = parse_function(kv.value);
    } else if (kv.key == "rule") {
      rule = parse_rule(kv.value);
    } else if (kv.key == "axis") {
      axes.push_back(parse_axis(kv.value));
    } else {
      return false;
    }
    return true;
  }

  ProbeSpace build() const {
    if (!rep) throw parse_error("missing 'rep'");
    if (!target) throw parse_error("missing 'target'");
    if (!grid) throw parse_error("missing 'grid'");
    if (target->dimension != grid->dimension())
      throw parse_error("target dimension does not match grid dimension");
    if (space == "hpi") {
      if (rep->kind == RepresentationKind::SchroedingerWH) {
        RepresentationTag r = *rep;
        r.dimension = target->dimension;
        return HPiSpace{r, *target, *grid};
      }
      return HPiSpace{*rep, *target, *grid};
    }
    if (!window) throw parse_error("l2g space needs 'window' (the vector u in F = <target, pi(g) u>)");
    if (axes.empty()) throw parse_error("l2g space needs at least one 'axis'");
    const NodeSet x_rule = rule ? *rule : grid_rule(*grid);
    return L2GSpace{MatrixCoefficient(*rep, *target, *window, x_rule), ParameterGrid(axes)};
  }
};

struct CertificateDocument {
  SpaceSpec spec;
  DependencyCertificate certificate;
  double tolerance = 1e-10;
};

/// `term = <scalar> * <element>`.
inline Term parse_term(std::string_view text) {
  const auto parts = detail::split_top(text, '*');
  if (parts.size() < 2) throw parse_error("term needs '<coefficient> * <element>'");
  std::string coeff;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) coeff += (i ? "*" : "") + parts[i];
  return {parse_scalar(coeff), parse_element(parts.back())};
}

template <class F>
auto with_line(const KeyValue& kv, F&& f) {
  try {
    return f();
  } catch (const parse_error& e) {
    if (e.line()) throw;
    throw parse_error(e.what(), kv.line);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what(), kv.line);
  }
}

inline CertificateDocument parse_certificate(std::istream& in) {
  CertificateDocument doc;
  for (const auto& kv : read_key_values(in)) {
    with_line(kv, [&] {
      if (doc.spec.take(kv)) return 0;
      if (kv.key == "term") doc.certificate.terms.push_back(parse_term(kv.value));
      else if (kv.key == "tolerance") doc.tolerance = parse_real(kv.value);
      else throw parse_error("unknown key '" + kv.key + "'");
      return 0;
    });
  }
  if (doc.certificate.terms.empty()) throw parse_error("certificate has no 'term' lines");
  doc.certificate.space = doc.spec.build();
  try {
    validate(doc.certificate);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  return doc;
}

struct ProbeDocument {
  SpaceSpec spec;
  ProbeSpace space;
  std::vector<GroupElement> elements;
  ProbeOptions options;
};

inline ProbeDocument parse_probe(std::istream& in) {
  ProbeDocument doc;
  for (const auto& kv : read_key_values(in)) {
    with_line(kv, [&] {
      if (doc.spec.take(kv)) return 0;
      if (kv.key == "element") doc.elements.push_back(parse_element(kv.value));
      else if (kv.key == "threshold") doc.options.threshold = parse_real(kv.value);
      else if (kv.key == "floor") doc.options.floor = parse_real(kv.value);
      else throw parse_error("unknown key '" + kv.key + "'");
      return 0;
    });
  }
  if (doc.elements.empty()) throw parse_error("probe has no 'element' lines");
  if (!(doc.options.floor > 0.0 && doc.options.floor <= doc.options.threshold))
    throw parse_error("need 0 < floor <= threshold");
  doc.space = doc.spec.build();
  return doc;
}

template <class Doc, class Parse>
Doc parse_file(const std::string& path, Parse&& parse) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  try {
    return parse(in);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline CertificateDocument load_certificate(const std::string& path) {
  return parse_file<CertificateDocument>(path, [](std::istream& in) { return parse_certificate(in); });
}
inline ProbeDocument load_probe(const std::string& path) {
  return parse_file<ProbeDocument>(path, [](std::istream& in) { return parse_probe(in); });
}

/// Formal sums as lines `coeff * element`, coefficients exact.
template <class G>
ExactSum<G> parse_exact_sum(std::istream& in) {
  ExactSum<G> out;
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    const std::string_view line = detail::trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto parts = detail::split_top(line, '*');
    if (parts.size() != 2) throw parse_error("expected '<coefficient> * <element>'", n);
    const auto c = detail::split_top(parts[0], ',');
    GaussianRational coeff;
    try {
      if (c.size() == 1) coeff = GaussianRational(parse_rational(c[0]));
      else if (c.size() == 2) coeff = GaussianRational(parse_rational(c[0]), parse_rational(c[1]));
      else throw parse_error("coefficient is 're' or 're, im'", n);
      const GroupElement g = parse_element(parts[1]);
      const auto* e = std::get_if<G>(&g);
      if (!e) throw parse_error("element from the wrong group", n);
      out.add(*e, coeff);
    } catch (const parse_error& e) {
      if (e.line()) throw;
      throw parse_error(e.what(), n);
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what(), n);
    }
  }
  return out;
}

}  // namespace lindep
