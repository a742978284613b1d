#include "cli.hpp"

#include "cosetlab/blockmat.hpp"
#include "cosetlab/cosets.hpp"
#include "cosetlab/errors.hpp"
#include "cosetlab/experiments.hpp"
#include "cosetlab/geometry.hpp"
#include "cosetlab/haar.hpp"
#include "cosetlab/hypergroup_exact.hpp"
#include "cosetlab/matrix_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>

namespace cosetlab::cli {

namespace {

struct SizeOptions {
  std::string family = "unitary_orthogonal";
  int alpha = 1;
  int k = 1;
  int m = 1;
};

void add_size_options(CLI::App* sub, SizeOptions& s, const std::string& default_family) {
  s.family = default_family;
  sub->add_option("--family", s.family, "unitary_orthogonal | unitary_conjugation | symmetric")
      ->capture_default_str();
  sub->add_option("--alpha", s.alpha, "corner size")->capture_default_str();
  sub->add_option("--k", s.k, "active block size")->capture_default_str();
  sub->add_option("--m", s.m, "number of block copies")->capture_default_str();
}

FamilyKind family_of(const SizeOptions& s) {
  try {
    return parse_family_kind(s.family);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void emit(const std::string& data, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << data;
    out.flush();
  } else {
    write_text_file(out_path, data);
  }
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const char* command) {
  if (!seed) throw ConfigError(std::string(command) + " is randomized: pass --seed <integer>");
  return *seed;
}

// --- sample ---------------------------------------------------------------

struct SampleCommand {
  SizeOptions size;
  std::string group;
  int dim = 0;
  int n_tail = -1;
  std::string measure;
  std::string g = "identity";
  std::string h = "identity";
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("sample", "Draw a Haar/uniform group element or a convolution sample");
    sub->add_option("--group", group, "orthogonal | unitary | permutation (with --dim)");
    sub->add_option("--dim", dim, "matrix size for --group");
    add_size_options(sub, size, "unitary_orthogonal");
    sub->add_option("--N", n_tail, "tail size for a convolution sample");
    sub->add_option("--measure", measure, "tau_tilde | tau_full: draw from a convolution measure");
    sub->add_option("--g", g, "left factor (identity | random_unitary | permutation | matrix file)");
    sub->add_option("--h", h, "right factor");
    sub->add_option("--seed", seed, "random seed (required)");
    sub->add_option("--stream", stream, "stream index")->capture_default_str();
    sub->add_option("--out", out_path, "write to this file instead of standard output");
    sub->footer("Example:\n  cosetlab sample --group orthogonal --dim 4 --seed 7");
  }

  void run(std::ostream& out) const {
    const auto s = require_seed(seed, "sample");
    RandomStream rng(s, stream);
    BlockMatrix result;
    if (!measure.empty()) {
      const auto kind = family_of(size);
      if (n_tail < 0) throw ConfigError("sample --measure needs --N");
      const BlockSpec small{size.alpha, size.k, 0, size.m};
      const GroupFamily family{kind, small.with_tail(n_tail)};
      try {
        family.validate();
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
      RandomStream input_rng(s, stream ^ 0xC05E7u);
      const auto gm = resolve_matrix_source(g, kind, small, &input_rng, "--g");
      const auto hm = resolve_matrix_source(h, kind, small, &input_rng, "--h");
      const auto which = parse_measure(measure);
      result = which == Measure::tau_tilde ? sample_tau_tilde(gm, hm, family, rng) : sample_tau_full(gm, hm, family, rng);
    } else {
      if (dim < 1) throw ConfigError("sample needs --dim >= 1 (or --measure with --N)");
      if (group == "orthogonal") {
        result = BlockMatrix(Matrix(haar_orthogonal(dim, rng).cast<std::complex<double>>()));
      } else if (group == "unitary") {
        result = BlockMatrix(haar_unitary(dim, rng));
      } else if (group == "permutation") {
        result = BlockMatrix(uniform_permutation(dim, rng));
      } else {
        throw ConfigError("sample --group must be orthogonal, unitary or permutation");
      }
    }
    emit(with_newline(matrix_to_json(result, 2)), out_path, out);
  }
};

// --- product --------------------------------------------------------------

struct ProductCommand {
  SizeOptions size;
  std::optional<int> n_tail;
  std::string g = "identity";
  std::string h = "identity";
  std::optional<std::uint64_t> seed;
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("product", "Representative of g o h (infinite form, or g o_N h with --N)");
    add_size_options(sub, size, "unitary_orthogonal");
    sub->add_option("--N", n_tail, "tail size; omit for the infinite product of size alpha + 2k");
    sub->add_option("--g", g, "identity | random_unitary | permutation | matrix file")->capture_default_str();
    sub->add_option("--h", h, "identity | random_unitary | permutation | matrix file")->capture_default_str();
    sub->add_option("--seed", seed, "seed for random_unitary factors");
    sub->add_option("--out", out_path, "write to this file instead of standard output");
    sub->footer("Example:\n  cosetlab product --family symmetric --alpha 1 --k 1 --N 3 --g \"(1 2)\" --h \"(1 2)\"");
  }

  void run(std::ostream& out) const {
    const auto kind = family_of(size);
    const BlockSpec small{size.alpha, size.k, 0, size.m};
    try {
      small.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    std::optional<RandomStream> rng;
    if (seed) rng.emplace(*seed, 0xC05E7u);
    const auto gm = resolve_matrix_source(g, kind, small, rng ? &*rng : nullptr, "--g");
    const auto hm = resolve_matrix_source(h, kind, small, rng ? &*rng : nullptr, "--h");
    BlockMatrix result;
    if (n_tail) {
      const auto spec = small.with_tail(*n_tail);
      if (*n_tail < size.k) throw ConfigError("--N must be >= k");
      if (kind == FamilyKind::unitary_conjugation && size.m != 1) throw ConfigError("conjugation family needs m = 1");
      result = circ_n(gm, hm, spec, kind).representative;
    } else {
      if (size.m != 1) throw ConfigError("the infinite product needs m = 1; pass --N for m > 1");
      result = kind == FamilyKind::unitary_conjugation ? circ_colligation(gm, hm) : circ_infinite(gm, hm);
    }
    emit(with_newline(matrix_to_json(result, 2)), out_path, out);
  }
};

// --- membership -----------------------------------------------------------

struct MembershipCommand {
  SizeOptions size;
  int n_tail = 0;
  std::string x;
  std::string target;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("membership", "Exact test x in K_N r K_N for the symmetric family");
    add_size_options(sub, size, "symmetric");
    sub->add_option("--N", n_tail, "tail size")->capture_default_str();
    sub->add_option("--x", x, "permutation to test (cycles, image list or 'identity')")->required();
    sub->add_option("--target", target, "coset representative r")->required();
    sub->footer("Example:\n  cosetlab membership --alpha 1 --k 1 --N 3 --x \"(1 4)\" --target \"(1 3)\"");
  }

  void run(std::ostream& out) const {
    if (family_of(size) != FamilyKind::symmetric) throw ConfigError("membership is defined for --family symmetric");
    const BlockSpec spec{size.alpha, size.k, n_tail, size.m};
    try {
      spec.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    auto parse = [&](const std::string& text, const char* name) {
      try {
        auto p = text == "identity" ? Permutation::identity(spec.dim()) : Permutation::parse(text, spec.dim());
        if (p.degree() != spec.dim()) {
          throw ConfigError(std::string(name) + " moves points beyond alpha + m(k+N) = " + std::to_string(spec.dim()));
        }
        return p;
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string(name) + ": " + e.what());
      }
    };
    const auto xp = parse(x, "--x");
    const auto rp = parse(target, "--target");
    const bool member = sym_membership(xp, CosetTarget{BlockMatrix(rp, spec), GroupFamily{FamilyKind::symmetric, spec}});
    out << (member ? "true\n" : "false\n");
  }
};

// --- exact-sym ------------------------------------------------------------

struct ExactCommand {
  SizeOptions size;
  int n_tail = 0;
  std::string g = "identity";
  std::string h = "identity";
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("exact-sym", "Exact coset distribution of g K_N h for the symmetric family");
    add_size_options(sub, size, "symmetric");
    sub->add_option("--N", n_tail, "tail size")->required();
    sub->add_option("--g", g, "permutation of alpha + m k points")->capture_default_str();
    sub->add_option("--h", h, "permutation of alpha + m k points")->capture_default_str();
    sub->add_option("--budget", budget, "largest (k+N)! to enumerate")->capture_default_str();
    sub->add_option("--out", out_path, "write to this file instead of standard output");
    sub->footer("Example:\n  cosetlab exact-sym --alpha 1 --k 1 --N 3 --g \"(1 2)\" --h \"(1 2)\"");
  }

  void run(std::ostream& out) const {
    if (family_of(size) != FamilyKind::symmetric) throw ConfigError("exact-sym needs --family symmetric");
    const BlockSpec small{size.alpha, size.k, 0, size.m};
    const GroupFamily family{FamilyKind::symmetric, small.with_tail(n_tail)};
    try {
      family.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    const auto gm = resolve_matrix_source(g, FamilyKind::symmetric, small, nullptr, "--g");
    const auto hm = resolve_matrix_source(h, FamilyKind::symmetric, small, nullptr, "--h");
    const auto dist = exact_convolution(*gm.permutation(), *hm.permutation(), family, budget);
    emit(with_newline(to_json(dist, 2)), out_path, out);
  }
};

// --- block-decay ----------------------------------------------------------

struct BlockDecayCommand {
  std::string config_path;
  std::optional<int> k;
  std::vector<int> n_list;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("block-decay", "Median norm of the k x k corner of Haar O(k+N) samples");
    sub->add_option("--config", config_path, "JSON with any of k, N_list, samples, seed");
    sub->add_option("--k", k, "block size (default 2)");
    sub->add_option("--N", n_list, "tail sizes (repeatable)");
    sub->add_option("--samples", samples, "samples per N (>= 30, default 200)");
    sub->add_option("--seed", seed, "random seed (required)");
    sub->add_option("--format", format, "csv | json")->capture_default_str();
    sub->add_option("--out", out_path, "write to this file instead of standard output");
    sub->footer("Example:\n  cosetlab block-decay --k 2 --N 20 --N 50 --N 200 --samples 200 --seed 1");
  }

  void run(std::ostream& out) const {
    int kk = 2;
    int ss = 200;
    std::vector<int> ns;
    std::optional<std::uint64_t> sd;
    if (!config_path.empty()) {
      std::string text;
      try {
        text = read_text_file(config_path);
      } catch (const IoError& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& [key, v] : doc.items()) {
          if (key == "k") {
            kk = v.get<int>();
          } else if (key == "N_list") {
            ns = v.get<std::vector<int>>();
          } else if (key == "samples") {
            ss = v.get<int>();
          } else if (key == "seed") {
            sd = v.get<std::uint64_t>();
          } else {
            throw ConfigError(config_path + ": unknown field '" + key + "'");
          }
        }
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
    }
    if (k) kk = *k;
    if (!n_list.empty()) ns = n_list;
    if (samples) ss = *samples;
    if (seed) sd = seed;
    const auto s = require_seed(sd, "block-decay");
    if (ns.empty()) throw ConfigError("block-decay needs at least one --N");
    if (ss < 30) throw ConfigError("block-decay needs --samples >= 30");
    if (kk < 1) throw ConfigError("block-decay needs --k >= 1");
    if (std::any_of(ns.begin(), ns.end(), [](int n) { return n < 0; })) throw ConfigError("every N must be >= 0");
    const auto fmt = parse_report_format(format);
    emit(format_block_decay(run_block_decay(kk, ns, ss, s), fmt), out_path, out);
  }
};

// --- concentration --------------------------------------------------------

struct ConcentrationCommand {
  std::string config_path;
  std::optional<std::string> family;
  std::optional<int> alpha;
  std::optional<int> k;
  std::optional<int> m;
  std::vector<int> n_list;
  std::vector<double> epsilon_list;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> g;
  std::optional<std::string> h;
  std::optional<std::string> measure;
  std::optional<int> restarts;
  std::optional<int> max_iters;
  std::optional<double> tol;
  bool timing = false;
  std::string format = "csv";
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("concentration", "Monte Carlo hit fractions near g o_N h for each N and epsilon");
    sub->add_option("--config", config_path, "experiment JSON; flags below override its fields");
    sub->add_option("--family", family, "unitary_orthogonal | unitary_conjugation | symmetric");
    sub->add_option("--alpha", alpha, "corner size");
    sub->add_option("--k", k, "active block size");
    sub->add_option("--m", m, "number of block copies");
    sub->add_option("--N", n_list, "tail sizes (repeatable)");
    sub->add_option("--epsilon", epsilon_list, "neighborhood radii (repeatable)");
    sub->add_option("--samples", samples, "samples per N");
    sub->add_option("--seed", seed, "random seed (required here or in the config)");
    sub->add_option("--g", g, "identity | random_unitary | permutation | matrix file");
    sub->add_option("--h", h, "identity | random_unitary | permutation | matrix file");
    sub->add_option("--measure", measure, "tau_tilde | tau_full");
    sub->add_option("--restarts", restarts, "random solver restarts");
    sub->add_option("--max-iters", max_iters, "solver iteration cap");
    sub->add_option("--tol", tol, "solver stopping tolerance");
    sub->add_flag("--timing", timing, "fill runtime_s (output then varies between runs)");
    sub->add_option("--format", format, "csv | json")->capture_default_str();
    sub->add_option("--out", out_path, "write to this file instead of standard output");
    sub->footer(
        "Example:\n  cosetlab concentration --family unitary_orthogonal --alpha 1 --k 1 --N 8 --N 32 "
        "--epsilon 0.4 --samples 50 --g random_unitary --h random_unitary --seed 42");
  }

  ExperimentConfig config() const {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(config_path);
    if (family) {
      try {
        cfg.family = parse_family_kind(*family);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
    if (alpha) cfg.alpha = *alpha;
    if (k) cfg.k = *k;
    if (m) cfg.m = *m;
    if (!n_list.empty()) cfg.N_list = n_list;
    if (!epsilon_list.empty()) cfg.epsilon_list = epsilon_list;
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = seed;
    if (g) cfg.g_spec = *g;
    if (h) cfg.h_spec = *h;
    if (measure) cfg.measure = parse_measure(*measure);
    if (restarts) cfg.solver.restarts = *restarts;
    if (max_iters) cfg.solver.max_iters = *max_iters;
    if (tol) cfg.solver.tol = *tol;
    if (timing) cfg.timing = true;
    cfg.validate();
    return cfg;
  }

  void run(std::ostream& out) const {
    const auto cfg = config();
    const auto fmt = parse_report_format(format);
    emit(format_report(run_concentration(cfg), fmt), out_path, out);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cosetlab: double-coset products, convolution samplers and concentration experiments"};
  app.name(args.empty() ? "cosetlab" : args.front());
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.footer("Run 'cosetlab <subcommand> --help' for the options and an example of each subcommand.");

  SampleCommand sample;
  ProductCommand product;
  MembershipCommand membership;
  ExactCommand exact;
  BlockDecayCommand decay;
  ConcentrationCommand concentration;
  sample.attach(app);
  product.attach(app);
  membership.attach(app);
  exact.attach(app);
  decay.attach(app);
  concentration.attach(app);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << " (see --help)\n";
    return kConfigError;
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    const auto& name = chosen->get_name();
    if (name == "sample") sample.run(out);
    if (name == "product") product.run(out);
    if (name == "membership") membership.run(out);
    if (name == "exact-sym") exact.run(out);
    if (name == "block-decay") decay.run(out);
    if (name == "concentration") concentration.run(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace cosetlab::cli
