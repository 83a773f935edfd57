#include "equistrat/problem.hpp"

#include "equistrat/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace equistrat {

namespace {

[[noreturn]] void spec_error(const std::string& msg) { throw Error(ErrorCode::SpecError, msg); }

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string strip_all_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Splits at `sep` outside parentheses and brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    spec_error("bad expression \"" + s_ + "\": " + what + " at offset " + std::to_string(pos_));
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

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  double power() {
    const double base = atom();
    if (eat('^')) return std::pow(base, unary());
    return base;
  }

  double atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "pi") return std::numbers::pi;
      if (name != "cos" && name != "sin" && name != "sqrt") fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      const double arg = sum();
      if (!eat(')')) fail("missing ')'");
      if (name == "cos") return std::cos(arg);
      if (name == "sin") return std::sin(arg);
      if (arg < 0) fail("sqrt of negative value");
      return std::sqrt(arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Matrix rotation(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return snap(r, 1e-15);
}

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

// Parses "name(i, j, ...)" into name and integer arguments.
bool parse_call(const std::string& text, std::string& name, std::vector<long long>& args) {
  const std::string s = strip_all_spaces(text);
  const auto open = s.find('(');
  args.clear();
  if (open == std::string::npos) {
    name = s;
    return true;
  }
  if (s.back() != ')') return false;
  name = s.substr(0, open);
  for (const auto& part : split_top(s.substr(open + 1, s.size() - open - 2), ',')) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) return false;
    args.push_back(v);
  }
  return true;
}

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

struct Prototype {
  std::vector<Matrix> defining;
  std::vector<std::string> names;
  std::string label;
  std::string directive;
  std::vector<std::string> block_names;
  std::function<std::optional<std::vector<Matrix>>(const std::string&)> resolve;
};

std::optional<std::vector<Matrix>> trivial_block(const std::string& name, std::size_t ngens) {
  if (name == "triv") return std::vector<Matrix>(ngens, scalar(1.0));
  return std::nullopt;
}

Prototype cyclic_prototype(long long n) {
  if (n < 1) spec_error("cyclic order must be positive");
  Prototype p;
  p.names = {"g"};
  p.label = "Z" + std::to_string(n);
  p.directive = "cyclic " + std::to_string(n);
  if (n == 1) p.defining = {scalar(1.0)};
  else if (n == 2) p.defining = {scalar(-1.0)};
  else p.defining = {rotation(2.0 * std::numbers::pi / n)};
  p.block_names = {"triv"};
  if (n % 2 == 0) p.block_names.push_back("sign");
  if (n > 2) p.block_names.push_back("rot(1)");
  p.resolve = [n](const std::string& text) -> std::optional<std::vector<Matrix>> {
    std::string name;
    std::vector<long long> args;
    if (!parse_call(text, name, args)) return std::nullopt;
    if (args.empty() && name == "triv") return std::vector<Matrix>{scalar(1.0)};
    if (args.empty() && name == "sign" && n % 2 == 0) return std::vector<Matrix>{scalar(-1.0)};
    if (name == "rot" && args.size() == 1) return std::vector<Matrix>{rotation(2.0 * std::numbers::pi * mod(args[0], n) / n)};
    return std::nullopt;
  };
  return p;
}

Prototype dihedral_prototype(long long n) {
  if (n < 2) spec_error("dihedral order parameter must be at least 2");
  Prototype p;
  p.names = {"k", "s"};
  p.label = "D" + std::to_string(n);
  p.directive = "dihedral " + std::to_string(n);
  Matrix kappa(2, 2);
  kappa << 1, 0, 0, -1;
  if (n == 2) {
    Matrix sigma(2, 2);
    sigma << -1, 0, 0, 1;
    p.defining = {kappa, sigma};
  } else {
    p.defining = {kappa, rotation(2.0 * std::numbers::pi / n)};
  }
  p.block_names = {"triv", "chi(-1,1)"};
  if (n % 2 == 0) p.block_names.insert(p.block_names.end(), {"chi(1,-1)", "chi(-1,-1)"});
  p.block_names.push_back("rot(1)");
  p.resolve = [n, kappa](const std::string& text) -> std::optional<std::vector<Matrix>> {
    std::string name;
    std::vector<long long> args;
    if (!parse_call(text, name, args)) return std::nullopt;
    if (args.empty() && name == "triv") return std::vector<Matrix>{scalar(1.0), scalar(1.0)};
    if (name == "chi" && args.size() == 2) {
      const long long a = args[0], b = args[1];
      if ((a != 1 && a != -1) || (b != 1 && b != -1)) return std::nullopt;
      if (b == -1 && n % 2 != 0) return std::nullopt;
      return std::vector<Matrix>{scalar(static_cast<double>(a)), scalar(static_cast<double>(b))};
    }
    if (name == "rot" && args.size() == 1)
      return std::vector<Matrix>{kappa, rotation(2.0 * std::numbers::pi * mod(args[0], n) / n)};
    return std::nullopt;
  };
  return p;
}

// Real form of the induced representation of F_{p,q}: complex coordinates
// z_0..z_{m-1} (m = q/2) with a z_j = w^{k r^j} z_j and
// b (z_0, ..., z_{m-1}) = (conj z_{m-1}, z_0, ..., z_{m-2}).
std::vector<Matrix> frobenius_block(long long p, long long q, long long r, long long k) {
  const long long m = q / 2;
  Matrix a = Matrix::Zero(2 * m, 2 * m);
  Matrix b = Matrix::Zero(2 * m, 2 * m);
  long long e = mod(k, p);
  for (long long j = 0; j < m; ++j) {
    a.block(2 * j, 2 * j, 2, 2) = rotation(2.0 * std::numbers::pi * e / p);
    e = mod(e * r, p);
  }
  for (long long j = 1; j < m; ++j) b.block(2 * j, 2 * (j - 1), 2, 2) = Matrix::Identity(2, 2);
  Matrix conj(2, 2);
  conj << 1, 0, 0, -1;
  b.block(0, 2 * (m - 1), 2, 2) = conj;
  return {a, b};
}

Prototype frobenius_prototype(long long p, long long q) {
  if (p < 3 || q < 2 || q % 2 != 0 || (p - 1) % q != 0)
    spec_error("frobenius p q needs an odd prime p and an even q dividing p - 1");
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) spec_error("frobenius p must be prime");
  long long r = -1;
  for (long long c = 2; c < p && r < 0; ++c) {
    long long x = 1, ord = 0;
    do {
      x = mod(x * c, p);
      ++ord;
    } while (x != 1);
    if (ord == q) r = c;
  }
  Prototype proto;
  proto.names = {"a", "b"};
  proto.label = "F" + std::to_string(p) + "," + std::to_string(q);
  proto.directive = "frobenius " + std::to_string(p) + " " + std::to_string(q);
  proto.defining = frobenius_block(p, q, r, 1);
  // orbit representatives of k -> r k on the units mod p, by least element
  std::vector<long long> reps;
  std::set<long long> seen;
  for (long long k = 1; k < p; ++k) {
    if (seen.count(k)) continue;
    reps.push_back(k);
    long long x = k;
    do {
      seen.insert(x);
      x = mod(x * r, p);
    } while (x != k);
  }
  proto.block_names = {"triv", "sign"};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    proto.block_names.push_back("V" + std::to_string(i + 1));
    proto.block_names.push_back("V(" + std::to_string(reps[i]) + ")");
  }
  proto.resolve = [p, q, r, reps](const std::string& text) -> std::optional<std::vector<Matrix>> {
    std::string name;
    std::vector<long long> args;
    if (!parse_call(text, name, args)) return std::nullopt;
    if (args.empty() && name == "triv") return std::vector<Matrix>{scalar(1.0), scalar(1.0)};
    if (args.empty() && name == "sign") return std::vector<Matrix>{scalar(1.0), scalar(-1.0)};
    if (name == "V" && args.size() == 1 && mod(args[0], p) != 0) return frobenius_block(p, q, r, args[0]);
    if (args.empty() && name.size() > 1 && name[0] == 'V') {
      long long idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc() && ptr == name.data() + name.size() && idx >= 1 && idx <= static_cast<long long>(reps.size()))
        return frobenius_block(p, q, r, reps[static_cast<std::size_t>(idx - 1)]);
    }
    return std::nullopt;
  };
  return proto;
}

Prototype make_prototype(const std::string& directive);

Prototype product_prototype(const std::string& inner) {
  const auto parts = split_top(inner, ',');
  if (parts.size() != 2) spec_error("product(...) takes exactly two group directives");
  Prototype a = make_prototype(parts[0]);
  Prototype b = make_prototype(parts[1]);
  Prototype p;
  p.label = a.label + "x" + b.label;
  p.directive = "product(" + a.directive + ", " + b.directive + ")";
  p.names = a.names;
  p.names.insert(p.names.end(), b.names.begin(), b.names.end());
  const auto ida = Matrix::Identity(a.defining.front().rows(), a.defining.front().rows());
  const auto idb = Matrix::Identity(b.defining.front().rows(), b.defining.front().rows());
  for (const auto& m : a.defining) p.defining.push_back(block_diag(m, idb));
  for (const auto& m : b.defining) p.defining.push_back(block_diag(ida, m));
  for (const auto& x : a.block_names)
    for (const auto& y : b.block_names) p.block_names.push_back(x + "*" + y);
  p.resolve = [a, b](const std::string& text) -> std::optional<std::vector<Matrix>> {
    const auto factors = split_top(text, '*');
    std::optional<std::vector<Matrix>> xa, xb;
    if (factors.size() == 2) {
      xa = a.resolve(factors[0]);
      xb = b.resolve(factors[1]);
    } else if (factors.size() == 1) {
      xa = a.resolve(factors[0]);
      if (xa) {
        xb = b.resolve("triv");
      } else {
        xb = b.resolve(factors[0]);
        if (xb) xa = a.resolve("triv");
      }
    }
    if (!xa || !xb) return std::nullopt;
    const auto da = (*xa).front().rows(), db = (*xb).front().rows();
    std::vector<Matrix> out;
    for (const auto& m : *xa) out.push_back(kron(m, Matrix::Identity(db, db)));
    for (const auto& m : *xb) out.push_back(kron(Matrix::Identity(da, da), m));
    return out;
  };
  return p;
}

Prototype make_prototype(const std::string& directive) {
  const std::string d = collapse_spaces(directive);
  if (d.rfind("product", 0) == 0) {
    const auto open = d.find('(');
    if (open == std::string::npos || d.back() != ')') spec_error("malformed product directive: " + d);
    return product_prototype(d.substr(open + 1, d.size() - open - 2));
  }
  std::istringstream is(d);
  std::string kind;
  is >> kind;
  std::vector<long long> args;
  long long v = 0;
  while (is >> v) args.push_back(v);
  if (!is.eof()) spec_error("non-integer argument in group directive: " + d);
  if (kind == "cyclic" && args.size() == 1) return cyclic_prototype(args[0]);
  if (kind == "dihedral" && args.size() == 1) return dihedral_prototype(args[0]);
  if (kind == "frobenius" && args.size() == 2) return frobenius_prototype(args[0], args[1]);
  spec_error("unknown group directive: " + d);
}

}  // namespace

double eval_expression(const std::string& text) { return ExprParser(text).parse(); }

Matrix MatrixExpr::evaluate() const {
  if (rows.empty()) spec_error("empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) spec_error("ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval_expression(rows[i][j]);
  }
  return m;
}

std::string MatrixExpr::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ", ";
      out += rows[i][j];
    }
    out += "]";
  }
  return out + "]";
}

MatrixExpr MatrixExpr::parse(const std::string& text) {
  const std::string s = trim(text);
  if (s.size() < 4 || s.front() != '[' || s.back() != ']') spec_error("matrix must look like [[a, b], [c, d]]");
  MatrixExpr m;
  for (const auto& row : split_top(s.substr(1, s.size() - 2), ',')) {
    if (row.size() < 2 || row.front() != '[' || row.back() != ']') spec_error("bad matrix row: " + row);
    std::vector<std::string> entries;
    for (const auto& e : split_top(row.substr(1, row.size() - 2), ',')) {
      if (e.empty()) spec_error("empty matrix entry in row " + row);
      eval_expression(e);
      entries.push_back(collapse_spaces(e));
    }
    m.rows.push_back(std::move(entries));
  }
  for (const auto& r : m.rows)
    if (r.size() != m.rows.front().size()) spec_error("ragged matrix rows");
  return m;
}

ProblemSpec parse_spec(const std::string& text) {
  ProblemSpec spec;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  bool have_group = false, have_v = false, have_w = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) spec_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!seen.insert(key).second) spec_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    auto where = [&](const std::string& msg) { return "line " + std::to_string(lineno) + " (" + key + "): " + msg; };
    try {
      auto as_int = [&]() {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size()) spec_error("expected an integer");
        return v;
      };
      auto as_real = [&]() {
        double v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size()) spec_error("expected a number");
        return v;
      };
      if (key == "name") {
        spec.name = value;
      } else if (key == "group") {
        spec.group = collapse_spaces(value);
        have_group = true;
      } else if (key == "names") {
        for (const auto& n : split_top(value, ',')) {
          if (n.empty()) spec_error("empty generator name");
          spec.generator_names.push_back(n);
        }
      } else if (key.rfind("gen.", 0) == 0) {
        spec.generators[key.substr(4)] = MatrixExpr::parse(value);
      } else if (key == "V" || key == "W") {
        RepDirective& d = key == "V" ? spec.V : spec.W;
        (key == "V" ? have_v : have_w) = true;
        if (value != "explicit")
          for (const auto& b : split_top(value, '+')) {
            if (b.empty()) spec_error("empty block in sum");
            d.blocks.push_back(strip_all_spaces(b));
          }
      } else if (key.rfind("V.", 0) == 0 || key.rfind("W.", 0) == 0) {
        RepDirective& d = key[0] == 'V' ? spec.V : spec.W;
        d.explicit_images[key.substr(2)] = MatrixExpr::parse(value);
      } else if (key == "seed") {
        spec.options.seed = static_cast<std::uint64_t>(as_int());
      } else if (key == "samples") {
        spec.options.samples = static_cast<int>(as_int());
      } else if (key == "starts") {
        spec.options.starts = static_cast<int>(as_int());
      } else if (key == "degree_max") {
        spec.options.degree_max = static_cast<int>(as_int());
      } else if (key == "tol") {
        spec.options.tol = as_real();
      } else if (key == "probe_starts") {
        spec.options.probe_starts = static_cast<int>(as_int());
      } else if (key == "probe_draws") {
        spec.options.probe_draws = static_cast<int>(as_int());
      } else if (key == "probe_radius") {
        spec.options.probe_radius = as_real();
      } else {
        spec_error("unknown key");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SpecError) throw;
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      spec_error(where(msg));
    }
  }
  if (!have_group) spec_error("missing key 'group'");
  if (!have_v) spec_error("missing key 'V'");
  if (!have_w) spec_error("missing key 'W'");
  for (const RepDirective* d : {&spec.V, &spec.W})
    if (!d->blocks.empty() && !d->explicit_images.empty())
      spec_error("a representation is either a block sum or explicit matrices, not both");
  return spec;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) spec_error("cannot open spec file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string serialize_spec(const ProblemSpec& spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "name = " << spec.name << "\n";
  os << "group = " << spec.group << "\n";
  if (!spec.generator_names.empty()) {
    os << "names = ";
    for (std::size_t i = 0; i < spec.generator_names.size(); ++i) os << (i ? ", " : "") << spec.generator_names[i];
    os << "\n";
  }
  for (const auto& [n, m] : spec.generators) os << "gen." << n << " = " << m.to_string() << "\n";
  auto rep = [&](const char* key, const RepDirective& d) {
    if (d.is_explicit()) {
      os << key << " = explicit\n";
      for (const auto& [n, m] : d.explicit_images) os << key << "." << n << " = " << m.to_string() << "\n";
    } else {
      os << key << " = ";
      for (std::size_t i = 0; i < d.blocks.size(); ++i) os << (i ? " + " : "") << d.blocks[i];
      os << "\n";
    }
  };
  rep("V", spec.V);
  rep("W", spec.W);
  const auto& o = spec.options;
  os << "seed = " << o.seed << "\n";
  os << "samples = " << o.samples << "\n";
  os << "starts = " << o.starts << "\n";
  os << "degree_max = " << o.degree_max << "\n";
  os << "tol = " << format_double(o.tol) << "\n";
  os << "probe_starts = " << o.probe_starts << "\n";
  os << "probe_draws = " << o.probe_draws << "\n";
  os << "probe_radius = " << format_double(o.probe_radius) << "\n";
  return os.str();
}

std::vector<Matrix> BuiltinGroup::block(const std::string& name) const {
  auto r = resolve ? resolve(name) : std::nullopt;
  if (!r) spec_error("unknown block '" + name + "' for group " + directive);
  return *r;
}

BuiltinGroup make_group(const std::string& directive, const std::vector<std::string>& names,
                        const std::map<std::string, MatrixExpr>& explicit_gens, double tol) {
  Prototype p;
  if (collapse_spaces(directive) == "explicit") {
    if (names.empty()) spec_error("explicit groups need 'names' listing the generator order");
    p.directive = "explicit";
    p.label = "G";
    p.names = names;
    for (const auto& n : names) {
      auto it = explicit_gens.find(n);
      if (it == explicit_gens.end()) spec_error("missing gen." + n);
      p.defining.push_back(it->second.evaluate());
    }
    if (explicit_gens.size() != names.size()) spec_error("gen.* keys do not match 'names'");
    p.block_names = {"triv", "defining"};
    const auto defining = p.defining;
    const std::size_t ng = names.size();
    p.resolve = [defining, ng](const std::string& n) -> std::optional<std::vector<Matrix>> {
      if (n == "defining") return defining;
      return trivial_block(n, ng);
    };
  } else {
    if (!explicit_gens.empty()) spec_error("gen.* keys are only valid with group = explicit");
    p = make_prototype(directive);
    if (!names.empty()) {
      if (names.size() != p.names.size())
        spec_error("'names' lists " + std::to_string(names.size()) + " generators, group has " +
                   std::to_string(p.names.size()));
      p.names = names;
    }
  }
  BuiltinGroup g;
  g.group = generate_group(p.defining, tol, kDefaultMaxOrder, p.names, p.label);
  g.directive = p.directive;
  g.generator_names = p.names;
  g.block_names = p.block_names;
  const auto defining = p.defining;
  auto inner = p.resolve;
  g.resolve = [inner, defining](const std::string& n) -> std::optional<std::vector<Matrix>> {
    if (n == "defining") return defining;
    return inner(n);
  };
  return g;
}

Representation build_representation(const BuiltinGroup& g, const RepDirective& d, double tol) {
  const std::size_t ng = g.generator_names.size();
  std::vector<Matrix> images(ng);
  if (d.is_explicit()) {
    if (d.explicit_images.empty()) spec_error("representation has neither blocks nor explicit matrices");
    for (std::size_t k = 0; k < ng; ++k) {
      auto it = d.explicit_images.find(g.generator_names[k]);
      if (it == d.explicit_images.end()) spec_error("missing explicit image for generator " + g.generator_names[k]);
      images[k] = it->second.evaluate();
    }
    if (d.explicit_images.size() != ng) spec_error("explicit images name unknown generators");
  } else {
    for (const auto& name : d.blocks) {
      const auto blk = g.block(name);
      for (std::size_t k = 0; k < ng; ++k) images[k] = images[k].size() == 0 ? blk[k] : block_diag(images[k], blk[k]);
    }
  }
  try {
    return Representation::from_generator_images(g.group, images, std::max(tol, 1e-9));
  } catch (const Error& e) {
    spec_error(std::string("representation is not valid for the group: ") + e.what());
  }
}

Problem build_problem(const ProblemSpec& spec) {
  Problem p;
  p.spec = spec;
  p.builtin = make_group(spec.group, spec.generator_names, spec.generators, spec.options.tol);
  p.V = build_representation(p.builtin, spec.V, spec.options.tol);
  p.W = build_representation(p.builtin, spec.W, spec.options.tol);
  return p;
}

}  // namespace equistrat
