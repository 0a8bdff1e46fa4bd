#pragma once

#include "homflow/dynamics.hpp"
#include "homflow/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homflow {

/// Options shared by every command. Zero dt / t_end select per-command defaults.
struct RunOptions {
  double dt = 0.0;
  double t_end = 0.0;
  std::optional<std::uint64_t> seed;  // unset: the fixed default seed
  std::uint64_t seed_value() const { return seed.value_or(20240601); }
  std::optional<double> alpha;
  StepMethod method = StepMethod::rk4;
  std::vector<double> x0, p0;
};

struct CsvArtifact {
  std::string name;  // file name, e.g. figure1.csv
  std::string data;
};

/// Text report, key=value block and CSV artifacts of one command.
struct ReportBundle {
  std::string text;
  KvBlock kv;
  std::vector<CsvArtifact> csv;
  bool passed = true;
};

/// An algebra with whatever optional data came with it.
struct AlgebraSource {
  AlgebraFile file;
  bool builtin = false;
};

AlgebraSource builtin_source(const std::string& name, const RunOptions& opts);
AlgebraSource file_source(const std::string& path, const RunOptions& opts);

ReportBundle run_analyze(const AlgebraSource& src, const RunOptions& opts);
ReportBundle run_integrate_coalgebra(const AlgebraSource& src, const RunOptions& opts);
ReportBundle run_integrate_geodesic(const AlgebraSource& src, const RunOptions& opts);
ReportBundle run_check_transform(const std::string& example, const RunOptions& opts);
ReportBundle run_reproduce(const std::string& target, const RunOptions& opts);

}  // namespace homflow
