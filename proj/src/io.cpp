#include "homflow/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace homflow {

ParseError::ParseError(std::size_t line, const std::string& field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + field + ": " + message), line_(line), field_(field) {}

namespace {

// exact rational or floating double, before the file's mode is known
struct Value {
  bool exact = true;
  Rational q = 0;
  double d = 0.0;

  double to_double() const { return exact ? q.get_d() : d; }
  Scalar to_scalar(ScalarMode mode) const {
    if (mode == ScalarMode::exact) return Scalar(q);
    return Scalar::floating(to_double());
  }
};

Value mul(const Value& a, const Value& b) {
  Value r;
  if (a.exact && b.exact) {
    r.q = a.q * b.q;
    return r;
  }
  r.exact = false;
  r.d = a.to_double() * b.to_double();
  return r;
}

Value power(const Value& a, long k) {
  Value r;
  if (a.exact) {
    if (k < 0 && a.q == 0) throw std::invalid_argument("zero to a negative power");
    Rational base = k < 0 ? Rational(1) / a.q : a.q;
    r.q = 1;
    for (long i = 0; i < std::abs(k); ++i) r.q *= base;
    return r;
  }
  r.exact = false;
  r.d = std::pow(a.d, static_cast<double>(k));
  return r;
}

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rational parse_integer(const std::string& s) {
  Rational q(s[0] == '+' ? s.substr(1) : s, 10);
  return q;
}

// number literal: integer, p/q, plain decimal (exact) or with exponent (floating)
Value parse_number(const std::string& s) {
  Value v;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) throw std::invalid_argument("bad fraction '" + s + "'");
    const Rational d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    v.q = parse_integer(num) / d;
    return v;
  }
  if (is_integer_text(s)) {
    v.q = parse_integer(s);
    return v;
  }
  if (s.find_first_of("eE") != std::string::npos) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(d)) throw std::invalid_argument("bad number '" + s + "'");
    v.exact = false;
    v.d = d;
    return v;
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) throw std::invalid_argument("bad number '" + s + "'");
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  bool neg = false;
  if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) {
    neg = ip[0] == '-';
    ip = ip.substr(1);
  }
  if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number '" + s + "'");
  for (char c : ip + fp)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad number '" + s + "'");
  Rational den(1);
  for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  const std::string digits = (ip.empty() ? "0" : ip) + fp;
  v.q = Rational(digits, 10) / den;
  if (neg) v.q = -v.q;
  return v;
}

class ExprParser {
 public:
  explicit ExprParser(const std::map<std::string, Value>& params) : params_(params) {}

  Value parse(const std::string& text) {
    s_ = text;
    i_ = 0;
    if (s_.empty()) throw std::invalid_argument("empty value");
    bool neg = false;
    if (s_[0] == '-' || s_[0] == '+') {
      neg = s_[0] == '-';
      ++i_;
    }
    Value v = factor();
    while (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      v = mul(v, factor());
    }
    if (i_ != s_.size()) throw std::invalid_argument("unexpected '" + s_.substr(i_) + "' in '" + s_ + "'");
    if (neg) v = mul(v, Value{true, Rational(-1), 0.0});
    return v;
  }

 private:
  const std::map<std::string, Value>& params_;
  std::string s_;
  std::size_t i_ = 0;

  Value factor() {
    Value v = atom();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      const std::size_t start = i_;
      if (i_ < s_.size() && s_[i_] == '-') ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      const auto e = s_.substr(start, i_ - start);
      if (!is_integer_text(e)) throw std::invalid_argument("bad exponent in '" + s_ + "'");
      v = power(v, std::stol(e));
    }
    return v;
  }

  Value atom() {
    if (i_ >= s_.size()) throw std::invalid_argument("value ends early: '" + s_ + "'");
    if (s_.compare(i_, 5, "sqrt(") == 0) {
      const auto close = s_.find(')', i_);
      if (close == std::string::npos) throw std::invalid_argument("missing ')' in '" + s_ + "'");
      const Value arg = parse_number(s_.substr(i_ + 5, close - i_ - 5));
      i_ = close + 1;
      const double d = arg.to_double();
      if (d < 0) throw std::invalid_argument("sqrt of a negative number");
      return Value{false, 0, std::sqrt(d)};
    }
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (std::isalpha(c) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      const auto name = s_.substr(start, i_ - start);
      const auto it = params_.find(name);
      if (it == params_.end()) throw std::invalid_argument("unknown param '" + name + "'");
      return it->second;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && s_[i_] != '*' && s_[i_] != '^') {
      // exponent sign inside a literal such as 1e-3
      ++i_;
    }
    return parse_number(s_.substr(start, i_ - start));
  }
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long parse_index(const std::string& tok, std::size_t line, const std::string& field, long lo, long hi) {
  if (!is_integer_text(tok)) throw ParseError(line, field, "expected an integer, got '" + tok + "'");
  long v = 0;
  try {
    v = std::stol(tok);
  } catch (const std::exception&) {
    throw ParseError(line, field, "integer out of range: '" + tok + "'");
  }
  if (v < lo || v > hi)
    throw ParseError(line, field, "value " + tok + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
  return v;
}

struct RawBracket {
  std::size_t line;
  std::size_t a, b, c;
  Value v;
};

struct RawTerm {
  std::size_t line;
  std::size_t gen, coord;
  Value v;
  Exponents e;
};

}  // namespace

AlgebraFile parse_algebra_text(const std::string& text, const ParseOptions& opts, const std::string& name) {
  std::map<std::string, Value> params;
  std::size_t n = 0, m = 0, dim_line = 0, sub_line = 0, metric_line = 0, coords_line = 0;
  std::vector<RawBracket> brackets;
  std::vector<std::vector<Value>> sub, metric;
  std::vector<RawTerm> terms;
  std::string alg_name = name;
  bool floating = false;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  auto value = [&](const std::string& tok, std::size_t line, const std::string& field) {
    try {
      Value v = ExprParser(params).parse(tok);
      if (!v.exact) floating = true;
      return v;
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, field, e.what());
    }
  };
  auto need_dim = [&](std::size_t line, const std::string& field) {
    if (n == 0) throw ParseError(line, field, "'dim' must come first");
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const auto tok = split_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "name") {
      if (tok.size() != 2) throw ParseError(lineno, key, "expected 'name <word>'");
      alg_name = tok[1];
    } else if (key == "dim") {
      if (tok.size() != 2) throw ParseError(lineno, key, "expected 'dim <n>'");
      if (n != 0) throw ParseError(lineno, key, "dim given twice (first on line " + std::to_string(dim_line) + ")");
      n = static_cast<std::size_t>(parse_index(tok[1], lineno, key, 1, 64));
      dim_line = lineno;
    } else if (key == "param") {
      if (tok.size() != 3) throw ParseError(lineno, key, "expected 'param <name> <value>'");
      const std::string& pname = tok[1];
      if (!std::isalpha(static_cast<unsigned char>(pname[0])))
        throw ParseError(lineno, key, "param name must start with a letter");
      Value v;
      try {
        v = ExprParser(params).parse(tok[2]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, key, e.what());
      }
      if (pname == "alpha" && opts.alpha) v = Value{false, 0, *opts.alpha};
      params[pname] = v;
    } else if (key == "bracket") {
      need_dim(lineno, key);
      if (tok.size() != 5) throw ParseError(lineno, key, "expected 'bracket <A> <B> <C> <value>'");
      const auto hi = static_cast<long>(n);
      RawBracket b{lineno, static_cast<std::size_t>(parse_index(tok[1], lineno, key, 1, hi)) - 1,
                   static_cast<std::size_t>(parse_index(tok[2], lineno, key, 1, hi)) - 1,
                   static_cast<std::size_t>(parse_index(tok[3], lineno, key, 1, hi)) - 1, value(tok[4], lineno, key)};
      brackets.push_back(std::move(b));
    } else if (key == "subalgebra" || key == "metric_row") {
      need_dim(lineno, key);
      if (tok.size() != n + 1)
        throw ParseError(lineno, key, "expected " + std::to_string(n) + " values, got " + std::to_string(tok.size() - 1));
      std::vector<Value> row;
      for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(value(tok[i], lineno, key));
      if (key == "subalgebra") {
        if (!sub_line) sub_line = lineno;
        sub.push_back(std::move(row));
      } else {
        if (metric.size() == n) throw ParseError(lineno, key, "more than " + std::to_string(n) + " rows");
        metric_line = lineno;
        metric.push_back(std::move(row));
      }
    } else if (key == "coords") {
      if (tok.size() != 2) throw ParseError(lineno, key, "expected 'coords <m>'");
      if (m != 0) throw ParseError(lineno, key, "coords given twice");
      m = static_cast<std::size_t>(parse_index(tok[1], lineno, key, 1, 64));
      coords_line = lineno;
    } else if (key == "term") {
      need_dim(lineno, key);
      if (m == 0) throw ParseError(lineno, key, "'coords' must come before the first term");
      if (tok.size() != 4 + m)
        throw ParseError(lineno, key, "expected 'term <A> <a> <coeff>' and " + std::to_string(m) + " exponents");
      RawTerm t{lineno, static_cast<std::size_t>(parse_index(tok[1], lineno, key, 1, static_cast<long>(n))) - 1,
                static_cast<std::size_t>(parse_index(tok[2], lineno, key, 1, static_cast<long>(m))) - 1,
                value(tok[3], lineno, key), {}};
      for (std::size_t i = 0; i < m; ++i)
        t.e.push_back(static_cast<int>(parse_index(tok[4 + i], lineno, key + " exponent", 0, 64)));
      terms.push_back(std::move(t));
    } else {
      throw ParseError(lineno, key, "unknown keyword");
    }
  }
  if (n == 0) throw ParseError(lineno == 0 ? 1 : lineno, "dim", "missing 'dim' line");
  if (!metric.empty() && metric.size() != n)
    throw ParseError(metric_line, "metric_row", "expected " + std::to_string(n) + " rows, got " + std::to_string(metric.size()));
  if (m != 0 && terms.empty()) throw ParseError(coords_line, "coords", "coords given without any term lines");

  const ScalarMode mode = floating ? ScalarMode::floating : ScalarMode::exact;
  std::vector<BracketEntry> entries;
  for (const auto& b : brackets) entries.push_back({b.a, b.b, b.c, b.v.to_scalar(mode)});

  AlgebraFile out;
  out.name = alg_name.empty() ? "algebra" : alg_name;
  out.algebra = LieAlgebra(n, mode, entries, out.name);
  if (!sub.empty()) {
    std::vector<ScalarVector> basis;
    for (const auto& row : sub) {
      ScalarVector v;
      for (const auto& x : row) v.push_back(x.to_scalar(mode));
      basis.push_back(std::move(v));
    }
    try {
      out.subalgebra.emplace(out.algebra, std::move(basis));
    } catch (const std::invalid_argument& e) {
      throw ParseError(sub_line, "subalgebra", e.what());
    }
  }
  if (!metric.empty()) {
    ScalarMatrix g(n, n, mode);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g(a, b) = metric[a][b].to_scalar(mode);
    try {
      out.metric.emplace(std::move(g));
    } catch (const std::invalid_argument& e) {
      throw ParseError(metric_line, "metric_row", e.what());
    }
  }
  if (m != 0) {
    std::vector<std::vector<Polynomial>> comps(n, std::vector<Polynomial>(m, Polynomial(m)));
    for (const auto& t : terms) comps[t.gen][t.coord].add_term(t.e, t.v.to_scalar(mode));
    out.fields.emplace(m, std::move(comps), out.name);
  }
  return out;
}

AlgebraFile load_algebra_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_algebra_text(ss.str(), opts, stem);
}

// --- key=value ----------------------------------------------------------------

// shortest text that reads back to the same double
std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void KvBlock::add(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of(" \t\n=") != std::string::npos)
    throw std::invalid_argument("bad key '" + key + "'");
  if (value.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("value for '" + key + "' contains whitespace");
  entries_.emplace_back(key, value);
}

void KvBlock::add(const std::string& key, double value) { add(key, format_double(value)); }

void KvBlock::add(const std::string& key, long long value) { add(key, std::to_string(value)); }

void KvBlock::newline() {
  if (!entries_.empty() && (breaks_.empty() || breaks_.back() != entries_.size())) breaks_.push_back(entries_.size());
}

std::optional<std::string> KvBlock::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::string KvBlock::str() const {
  std::string out;
  std::size_t next_break = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) {
      const bool brk = next_break < breaks_.size() && breaks_[next_break] == i;
      if (brk) ++next_break;
      out += brk ? '\n' : ' ';
    }
    out += entries_[i].first + "=" + entries_[i].second;
  }
  if (!entries_.empty()) out += '\n';
  return out;
}

KvBlock KvBlock::parse(const std::string& text) {
  KvBlock kv;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    kv.newline();
    for (const auto& t : tok) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("token without key=value: '" + t + "'");
      kv.entries_.emplace_back(t.substr(0, eq), t.substr(eq + 1));
    }
  }
  return kv;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) throw std::invalid_argument("bad number '" + item + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

}  // namespace homflow
