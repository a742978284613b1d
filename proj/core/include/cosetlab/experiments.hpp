#pragma once

#include "cosetlab/blockmat.hpp"
#include "cosetlab/cosets.hpp"
#include "cosetlab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cosetlab {

enum class Measure { tau_tilde, tau_full };
std::string to_string(Measure measure);
Measure parse_measure(std::string_view name);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

/// One concentration sweep. JSON field names match the member names, with
/// the solver knobs flattened (restarts, max_iters, tol).
///
/// g_spec / h_spec name an element of U(alpha + m k) (or S(alpha + m k)):
///   "identity", "random_unitary" (drawn once from the experiment seed; a
///   uniform permutation for the symmetric family), a permutation in cycle
///   notation (leading '(') or as an image list, or a matrix JSON file path.
struct ExperimentConfig {
  FamilyKind family = FamilyKind::unitary_orthogonal;
  int alpha = 1;
  int k = 1;
  int m = 1;
  std::vector<int> N_list;
  std::vector<double> epsilon_list;
  int samples = 100;
  std::optional<std::uint64_t> seed;
  std::string g_spec = "identity";
  std::string h_spec = "identity";
  Measure measure = Measure::tau_tilde;
  SolverOptions solver;
  bool timing = false;  // fill runtime_s; off keeps reports byte-identical

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Parses and validates a config document; unknown keys are rejected.
  static ExperimentConfig from_json(std::string_view text);
  static ExperimentConfig from_file(const std::string& path);
};

struct ConcentrationRow {
  FamilyKind family = FamilyKind::unitary_orthogonal;
  int alpha = 0;
  int k = 0;
  int m = 0;
  int N = 0;
  double epsilon = 0.0;
  int samples = 0;
  int hits = 0;
  double fraction = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double median_dist = 0.0;
  double mean_dist = 0.0;
  std::uint64_t seed = 0;
  double runtime_s = 0.0;
  friend bool operator==(const ConcentrationRow&, const ConcentrationRow&) = default;
};

struct ConcentrationReport {
  std::vector<ConcentrationRow> rows;
  friend bool operator==(const ConcentrationReport&, const ConcentrationReport&) = default;
};

/// Resolves one matrix source (see ExperimentConfig) to an element of size
/// small.dim(); rng may be null when no random draw is allowed. Every
/// failure, including unreadable files, is reported as ConfigError.
BlockMatrix resolve_matrix_source(const std::string& source, FamilyKind family, const BlockSpec& small,
                                  RandomStream* rng, std::string_view field);

/// g and h named by the config, as elements of the embedded subgroup.
struct ExperimentInputs {
  BlockMatrix g;
  BlockMatrix h;
};
ExperimentInputs resolve_inputs(const ExperimentConfig& cfg);

/// Per-sample outcome at one tail size.
struct SampleOutcome {
  double distance = 0.0;  // symmetric family: 0 for a member, 1 otherwise
  bool hit_exact = false; // symmetric family: membership
  double witness_gap = 0.0;  // |reverified bound - reported bound|
};

/// Draws cfg.samples samples at tail size n_tail; sample i uses the stream
/// (derive_seed(seed, n_tail), i), so results do not depend on threading.
std::vector<SampleOutcome> run_samples(const ExperimentConfig& cfg, const ExperimentInputs& inputs, int n_tail);

/// One row per (N, epsilon), N outer. Symmetric family: a hit is exact
/// membership in the target coset, for every epsilon.
ConcentrationReport run_concentration(const ExperimentConfig& cfg);

struct BlockDecayRow {
  int k = 0;
  int N = 0;
  int samples = 0;
  double median_norm = 0.0;
  double mean_norm = 0.0;
  std::uint64_t seed = 0;
};

/// Operator norm of the leading k x k block of Haar O(k+N) samples.
/// Requires samples >= 30.
std::vector<BlockDecayRow> run_block_decay(int k, const std::vector<int>& n_list, int samples, std::uint64_t seed);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(int hits, int samples, double confidence = 0.95);

/// CSV header: family,alpha,k,m,N,epsilon,samples,hits,fraction,ci_low,ci_high,median_dist,mean_dist,seed,runtime_s
std::string format_report(const ConcentrationReport& report, ReportFormat format);
ConcentrationReport parse_report_json(std::string_view text);
void write_report(const ConcentrationReport& report, const std::string& path, ReportFormat format);

std::string format_block_decay(const std::vector<BlockDecayRow>& rows, ReportFormat format);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace cosetlab
