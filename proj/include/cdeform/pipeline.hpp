#pragma once

#include "cdeform/bending.hpp"
#include "cdeform/cohomology.hpp"
#include "cdeform/polysys.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdeform {

using Json = nlohmann::ordered_json;

/// Malformed or invalid configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverSettings {
  double box = 10;
  int starts = 2000;
  std::uint64_t seed = 20240607;
  double residual_tol = 1e-12;
  long max_denominator = 1000;
  /// Append tr(longitude) - 4 to the residual system (knots with a longitude only).
  bool trace_condition = false;
  /// Attempt a Groebner certificate of the solved system (saturated by the open conditions).
  bool groebner = false;
};

struct FamilyConfig {
  std::vector<std::string> parameters;
  std::vector<std::pair<std::string, std::string>> entries;
  /// Parameter values of the geometric (complete hyperbolic) point.
  std::vector<std::string> geometric;
};

struct CurveConfig {
  std::string name;
  std::string word;
  int cusp = 1;
};

struct KnotConfig {
  std::string name;
  int p = 0, q = 0;
  std::string template_name = "normform2";
  std::string longitude;
  std::vector<CurveConfig> curves;
  std::optional<FamilyConfig> family;
  /// Exact solutions known in advance, as "p/q" strings in template-unknown order.
  std::vector<std::vector<std::string>> points;
  SolverSettings solver;
  std::string notes;

  /// Validates the fraction, template name and every word.
  static KnotConfig from_json(const Json& j);
  static KnotConfig load(const std::string& path);
};

enum class Backend { exact, numeric };
enum class Format { json, csv };

struct SolutionRecord {
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact;
  double residual = 0;
  /// Kernel dimension of the deformation residuals' Jacobian (no trace condition).
  int jacobian_kernel_dim = -1;
};

struct RootRecord {
  Rational value;
  int multiplicity = 0;
};

struct FamilyRecord {
  std::vector<std::string> parameters;
  std::vector<std::pair<std::string, std::string>> entries;
  bool verified = false;
  std::vector<Rational> excluded;
  std::string trace_longitude;
  /// Numerator of tr(longitude) - 4 and its real roots away from poles.
  std::string trace_condition;
  int real_roots = 0;
  std::vector<RootRecord> rational_roots;
  std::optional<int> local_dimension;
};

struct GroebnerRecord {
  bool finished = false;
  bool zero_dimensional = false;
  long quotient_dimension = -1;
  std::size_t basis_size = 0;
};

struct CurveRecord {
  std::string curve;
  std::string word;
  int cusp = 1;
  int rank = 0;
  std::string isometry;
  bool so31_parabolic = false;
};

struct CohomologyRecord {
  std::string rep;
  CohomologyDims dims;
  std::vector<CurveRecord> restrictions;
  std::vector<std::string> rigid_slopes;
};

struct SolverStats {
  int starts = 0;
  std::uint64_t seed = 0;
  int converged = 0, failed = 0, degenerate = 0;
};

struct RunReport {
  std::string knot;
  int p = 0, q = 0;
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::vector<std::string> unknowns;
  std::vector<SolutionRecord> solutions;
  std::vector<FamilyRecord> families;
  std::optional<GroebnerRecord> groebner;
  std::vector<CohomologyRecord> cohomology;
  std::optional<SolverStats> solver;
  std::optional<double> seconds;
};

struct PipelineOptions {
  Backend backend = Backend::exact;
  bool cohomology = true;
  bool timing = false;
};

PolyTemplate template_by_name(const std::string& name);

/// presentation -> residual -> solutions -> family certificates -> cohomology.
RunReport run_pipeline(const KnotConfig& config, const PipelineOptions& options = {});

Json to_json(const RunReport& report);
Json presentation_json(const KnotConfig& config);

/// Serializer with stable key order and floats printed with 17 significant digits.
std::string dump_json(const Json& j);
/// JSON document, or CSV with one row per solution and one column per unknown.
std::string emit(const RunReport& report, Format format);

/// True iff every key present in `golden` has an equal value in `actual` (recursively
/// for objects; arrays and scalars compare whole). Differences are listed as paths.
bool golden_matches(const Json& golden, const Json& actual, std::vector<std::string>* differences = nullptr);

/// Bending job: a finitely presented group, exact images and bending data.
struct BendConfig {
  std::string name;
  Presentation presentation;
  QRepresentation rep;
  BendingData data;
  std::string t = "1";

  static BendConfig from_json(const Json& j);
  static BendConfig load(const std::string& path);
};

/// Exact output when x_S is nilpotent and t is rational, floating otherwise.
Json run_bend(const BendConfig& config, const std::string& t);

Json matrix_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

}  // namespace cdeform
