#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcop/mobius.hpp"
#include "wcop/opmat.hpp"
#include "wcop/spectra.hpp"

namespace wcop::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidInput = 2, kConstraint = 3, kScenarioFail = 4 };

enum class OutputFormat { Table, Json, Csv };

struct CliConfig {
  SpaceSpec space = SpaceSpec::hardy();
  int order = 24;
  std::optional<int> tail;  // M; defaults per operator
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Table;
  std::string json_path;
  std::string csv_path;

  /// N >= 4, M >= 2N, tol > 0. Throws InvalidInput.
  void validate() const;
};

/// Merges a JSON config object (keys space, order, tail, tol, format) into cfg.
void apply_config(CliConfig& cfg, const nlohmann::json& j);

/// Accepts [re, im], a bare number, "re,im" or "a+bi" forms.
cplx parse_complex(const std::string& text);

/// Inline JSON, or a path to a JSON file.
nlohmann::json load_json_arg(const std::string& text);

nlohmann::json classification_record(const MoebiusMap& m, double tol);

struct ClassificationRecord {
  MapClass kind = MapClass::Identity;
  bool borderline = false;
  std::vector<FixedPoint> fixed_points;
  std::optional<DWPoint> dw;
  std::optional<cplx> translation_number;
};
ClassificationRecord classification_from_json(const nlohmann::json& j);

/// Header fields plus dense "entries" as rows of [re, im].
nlohmann::json block_json(const TruncatedBlock& b);
TruncatedBlock block_from_json(const nlohmann::json& j);

SpiralCurve spiral_from_json(const nlohmann::json& j);
RotationSpectrum rotation_spectrum_from_json(const nlohmann::json& j);

/// Runs one command line (without the program name). All output goes to the
/// given streams; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcop::cli
