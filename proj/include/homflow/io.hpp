#pragma once

#include "homflow/homspace.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/realization.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homflow {

/// Malformed input. what() reads "line N: <field>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& field, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct ParseOptions {
  std::optional<double> alpha;  // overrides a param named alpha; forces floating mode
};

/// Contents of an algebra text file.
///
///   dim 5
///   param alpha sqrt(2)
///   bracket 1 4 5 alpha^2        # [e1, e4] = alpha^2 e5
///   subalgebra 1 0 0 0 0         # one basis vector of h per line
///   metric_row 1 0 0 0 0         # n rows of G
///   coords 4
///   term 1 4 -alpha^2 0 0 0 1    # X_1 += -alpha^2 x4 d/dx1
///
/// Values are integers, p/q, decimals, sqrt(r), params, or products of these
/// with optional ^k powers. The file is exact unless some value is floating.
struct AlgebraFile {
  std::string name;
  LieAlgebra algebra;
  std::optional<SubalgebraSpec> subalgebra;
  std::optional<MetricForm> metric;
  std::optional<PolyVectorField> fields;
};

AlgebraFile parse_algebra_text(const std::string& text, const ParseOptions& opts = {}, const std::string& name = {});
AlgebraFile load_algebra_file(const std::string& path, const ParseOptions& opts = {});

/// Ordered key=value pairs. Pairs on one line are space separated; values
/// never contain whitespace.
class KvBlock {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);  // shortest round-trip form
  void add(const std::string& key, long long value);
  void add(const std::string& key, std::size_t value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void newline();

  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string str() const;

  /// Throws std::invalid_argument on a token without '='.
  static KvBlock parse(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::size_t> breaks_;  // entry counts at which a new line starts
};

/// Double with round-trip precision.
std::string format_double(double v);
/// Comma-separated numbers such as "1,0.5,-2".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace homflow
