#include "cosetlab/experiments.hpp"

#include "cosetlab/errors.hpp"
#include "cosetlab/haar.hpp"
#include "cosetlab/matrix_io.hpp"
#include "cosetlab/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <tuple>

namespace cosetlab {

namespace {

using ojson = nlohmann::ordered_json;

// Stream index reserved for the one-off draw of random g, h.
constexpr std::uint64_t kInputStream = 0xC05E7u;

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

template <typename T>
T get_field(const nlohmann::json& v, const char* name) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field '") + name + "' has the wrong type");
  }
}

std::string source_text(const nlohmann::json& v, const char* name) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) return v.dump();
  throw ConfigError(std::string("config field '") + name + "' must be a string or an image list");
}

double z_for(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("wilson_interval: confidence must be in (0, 1)");
  // Solve erfc(z / sqrt 2) = 1 - confidence by bisection.
  const double target = 1.0 - confidence;
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ojson row_json(const ConcentrationRow& r) {
  return ojson{{"family", to_string(r.family)},
               {"alpha", r.alpha},
               {"k", r.k},
               {"m", r.m},
               {"N", r.N},
               {"epsilon", r.epsilon},
               {"samples", r.samples},
               {"hits", r.hits},
               {"fraction", r.fraction},
               {"ci_low", r.ci_low},
               {"ci_high", r.ci_high},
               {"median_dist", r.median_dist},
               {"mean_dist", r.mean_dist},
               {"seed", r.seed},
               {"runtime_s", r.runtime_s}};
}

}  // namespace

std::string to_string(Measure measure) { return measure == Measure::tau_tilde ? "tau_tilde" : "tau_full"; }

Measure parse_measure(std::string_view name) {
  if (name == "tau_tilde") return Measure::tau_tilde;
  if (name == "tau_full") return Measure::tau_full;
  throw ConfigError("unknown measure '" + std::string(name) + "'; expected tau_tilde or tau_full");
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown format '" + std::string(name) + "'; expected csv or json");
}

void ExperimentConfig::validate() const {
  if (alpha < 0) throw ConfigError("alpha must be >= 0");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (m < 1) throw ConfigError("m must be >= 1");
  if (family == FamilyKind::unitary_conjugation && m != 1) throw ConfigError("the conjugation family needs m = 1");
  if (N_list.empty()) throw ConfigError("N_list must not be empty");
  for (const int n : N_list) {
    if (n < k) throw ConfigError("every N must be >= k (got N = " + std::to_string(n) + ")");
  }
  if (epsilon_list.empty()) throw ConfigError("epsilon_list must not be empty");
  for (const double e : epsilon_list) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("every epsilon must be a positive number");
  }
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (!seed) throw ConfigError("seed is required (pass --seed or set \"seed\" in the config)");
  if (solver.restarts < 0) throw ConfigError("restarts must be >= 0");
  if (solver.max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(solver.tol >= 0.0)) throw ConfigError("tol must be >= 0");
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "family") {
      try {
        cfg.family = parse_family_kind(get_field<std::string>(v, "family"));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "alpha") {
      cfg.alpha = get_field<int>(v, "alpha");
    } else if (key == "k") {
      cfg.k = get_field<int>(v, "k");
    } else if (key == "m") {
      cfg.m = get_field<int>(v, "m");
    } else if (key == "N_list") {
      cfg.N_list = get_field<std::vector<int>>(v, "N_list");
    } else if (key == "epsilon_list") {
      cfg.epsilon_list = get_field<std::vector<double>>(v, "epsilon_list");
    } else if (key == "samples") {
      cfg.samples = get_field<int>(v, "samples");
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError("config field 'seed' must be a nonnegative integer");
      }
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "g_spec") {
      cfg.g_spec = source_text(v, "g_spec");
    } else if (key == "h_spec") {
      cfg.h_spec = source_text(v, "h_spec");
    } else if (key == "measure") {
      cfg.measure = parse_measure(get_field<std::string>(v, "measure"));
    } else if (key == "restarts") {
      cfg.solver.restarts = get_field<int>(v, "restarts");
    } else if (key == "max_iters") {
      cfg.solver.max_iters = get_field<int>(v, "max_iters");
    } else if (key == "tol") {
      cfg.solver.tol = get_field<double>(v, "tol");
    } else if (key == "timing") {
      cfg.timing = get_field<bool>(v, "timing");
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    return from_json(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

BlockMatrix resolve_matrix_source(const std::string& source, FamilyKind family, const BlockSpec& small,
                                  RandomStream* rng, std::string_view field) {
  const int dim = small.dim();
  const std::string name(field);
  BlockMatrix out;
  if (source == "identity") {
    out = BlockMatrix(Permutation::identity(dim), small);
  } else if (source == "random_unitary") {
    if (rng == nullptr) throw ConfigError(name + ": random_unitary needs a seed");
    if (family == FamilyKind::symmetric) {
      out = BlockMatrix(uniform_permutation(dim, *rng), small);
    } else {
      out = BlockMatrix(haar_unitary(dim, *rng), small);
    }
  } else if (!source.empty() && (source.front() == '(' || source.front() == '[' ||
                                 std::isdigit(static_cast<unsigned char>(source.front())))) {
    try {
      out = BlockMatrix(Permutation::parse(source, dim), small);
    } catch (const Error& e) {
      throw ConfigError(name + ": " + e.what());
    }
  } else {
    try {
      out = read_matrix_file(source);
    } catch (const Error& e) {
      throw ConfigError(name + ": " + e.what());
    }
  }
  if (out.dim() != dim) {
    throw ConfigError(name + " has size " + std::to_string(out.dim()) + ", expected alpha + m k = " +
                      std::to_string(dim));
  }
  out = out.with_spec(small);
  if (!is_unitary(out.entries(), 1e-10)) throw ConfigError(name + " is not unitary");
  if (family == FamilyKind::symmetric && !out.is_permutation()) {
    throw ConfigError(name + " must be a permutation for the symmetric family");
  }
  return out;
}

ExperimentInputs resolve_inputs(const ExperimentConfig& cfg) {
  cfg.validate();
  RandomStream rng(*cfg.seed, kInputStream);
  const BlockSpec small{cfg.alpha, cfg.k, 0, cfg.m};
  auto g = resolve_matrix_source(cfg.g_spec, cfg.family, small, &rng, "g_spec");
  auto h = resolve_matrix_source(cfg.h_spec, cfg.family, small, &rng, "h_spec");
  return {std::move(g), std::move(h)};
}

std::vector<SampleOutcome> run_samples(const ExperimentConfig& cfg, const ExperimentInputs& inputs, int n_tail) {
  cfg.validate();
  const BlockSpec spec{cfg.alpha, cfg.k, n_tail, cfg.m};
  const GroupFamily family{cfg.family, spec};
  const auto target = circ_n(inputs.g, inputs.h, spec, cfg.family);
  const auto seed = derive_seed(*cfg.seed, static_cast<std::uint64_t>(n_tail));

  std::vector<SampleOutcome> out(static_cast<std::size_t>(cfg.samples));
  parallel_for(out.size(), [&](std::size_t i) {
    RandomStream rng(seed, i);
    const auto draw = cfg.measure == Measure::tau_tilde ? draw_tau_tilde(inputs.g, inputs.h, family, rng)
                                                        : draw_tau_full(inputs.g, inputs.h, family, rng);
    SampleOutcome& o = out[i];
    if (cfg.family == FamilyKind::symmetric) {
      o.hit_exact = sym_membership(*draw.value.permutation(), target);
      o.distance = o.hit_exact ? 0.0 : 1.0;
      return;
    }
    const auto est = estimate_distance(draw, inputs.g, inputs.h, target, cfg.solver, rng);
    o.distance = est.upper_bound;
    o.witness_gap = std::abs(reverify(draw.value, target, est) - est.upper_bound);
  });
  return out;
}

ConcentrationReport run_concentration(const ExperimentConfig& cfg) {
  const auto inputs = resolve_inputs(cfg);
  ConcentrationReport report;
  for (const int n_tail : cfg.N_list) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcomes = run_samples(cfg, inputs, n_tail);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<double> distances;
    distances.reserve(outcomes.size());
    for (const auto& o : outcomes) distances.push_back(o.distance);
    const double median = median_of(distances);
    const double mean = mean_of(distances);

    for (const double eps : cfg.epsilon_list) {
      ConcentrationRow row;
      row.family = cfg.family;
      row.alpha = cfg.alpha;
      row.k = cfg.k;
      row.m = cfg.m;
      row.N = n_tail;
      row.epsilon = eps;
      row.samples = cfg.samples;
      for (const auto& o : outcomes) {
        const bool hit = cfg.family == FamilyKind::symmetric ? o.hit_exact : o.distance <= eps;
        row.hits += hit ? 1 : 0;
      }
      row.fraction = static_cast<double>(row.hits) / static_cast<double>(row.samples);
      std::tie(row.ci_low, row.ci_high) = wilson_interval(row.hits, row.samples);
      row.median_dist = median;
      row.mean_dist = mean;
      row.seed = *cfg.seed;
      row.runtime_s = cfg.timing ? elapsed : 0.0;
      report.rows.push_back(row);
    }
  }
  return report;
}

std::vector<BlockDecayRow> run_block_decay(int k, const std::vector<int>& n_list, int samples, std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("block decay: k must be >= 1");
  if (samples < 30) throw InvalidArgument("block decay: samples must be >= 30");
  std::vector<BlockDecayRow> rows;
  for (const int n_tail : n_list) {
    if (n_tail < 0) throw InvalidArgument("block decay: N must be >= 0");
    const auto stream_seed = derive_seed(seed, static_cast<std::uint64_t>(n_tail));
    std::vector<double> norms(static_cast<std::size_t>(samples));
    parallel_for(norms.size(), [&](std::size_t i) {
      RandomStream rng(stream_seed, i);
      const RealMatrix u = top_block(haar_orthogonal(k + n_tail, rng), k);
      norms[i] = operator_norm(u.cast<std::complex<double>>());
    });
    rows.push_back({k, n_tail, samples, median_of(norms), mean_of(norms), seed});
  }
  return rows;
}

std::pair<double, double> wilson_interval(int hits, int samples, double confidence) {
  if (samples < 1 || hits < 0 || hits > samples) {
    throw InvalidArgument("wilson_interval: need 0 <= hits <= samples and samples >= 1");
  }
  const double z = z_for(confidence);
  const double n = samples;
  const double p = hits / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  double high = hits == samples ? 1.0 : std::min(1.0, center + half);
  return {std::min(low, p), std::max(high, p)};
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string format_report(const ConcentrationReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    ojson doc;
    doc["rows"] = ojson::array();
    for (const auto& r : report.rows) doc["rows"].push_back(row_json(r));
    return doc.dump(2) + "\n";
  }
  std::string out =
      "family,alpha,k,m,N,epsilon,samples,hits,fraction,ci_low,ci_high,median_dist,mean_dist,seed,runtime_s\n";
  for (const auto& r : report.rows) {
    out += to_string(r.family) + ',' + std::to_string(r.alpha) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.m) + ',' + std::to_string(r.N) + ',' + format_double(r.epsilon) + ',' +
           std::to_string(r.samples) + ',' + std::to_string(r.hits) + ',' + format_double(r.fraction) + ',' +
           format_double(r.ci_low) + ',' + format_double(r.ci_high) + ',' + format_double(r.median_dist) + ',' +
           format_double(r.mean_dist) + ',' + std::to_string(r.seed) + ',' + format_double(r.runtime_s) + '\n';
  }
  return out;
}

ConcentrationReport parse_report_json(std::string_view text) {
  ConcentrationReport report;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("rows")) {
      ConcentrationRow r;
      r.family = parse_family_kind(j.at("family").get<std::string>());
      r.alpha = j.at("alpha").get<int>();
      r.k = j.at("k").get<int>();
      r.m = j.at("m").get<int>();
      r.N = j.at("N").get<int>();
      r.epsilon = j.at("epsilon").get<double>();
      r.samples = j.at("samples").get<int>();
      r.hits = j.at("hits").get<int>();
      r.fraction = j.at("fraction").get<double>();
      r.ci_low = j.at("ci_low").get<double>();
      r.ci_high = j.at("ci_high").get<double>();
      r.median_dist = j.at("median_dist").get<double>();
      r.mean_dist = j.at("mean_dist").get<double>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.runtime_s = j.at("runtime_s").get<double>();
      report.rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("report JSON: ") + e.what());
  }
  return report;
}

void write_report(const ConcentrationReport& report, const std::string& path, ReportFormat format) {
  write_text_file(path, format_report(report, format));
}

std::string format_block_decay(const std::vector<BlockDecayRow>& rows, ReportFormat format) {
  if (format == ReportFormat::json) {
    ojson doc;
    doc["rows"] = ojson::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"k", r.k},
                             {"N", r.N},
                             {"samples", r.samples},
                             {"median_norm", r.median_norm},
                             {"mean_norm", r.mean_norm},
                             {"seed", r.seed}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "k,N,samples,median_norm,mean_norm,seed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.N) + ',' + std::to_string(r.samples) + ',' +
           format_double(r.median_norm) + ',' + format_double(r.mean_norm) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

}  // namespace cosetlab
