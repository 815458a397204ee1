// kroncover: exact symmetric-group tensor-product toolkit.
//
// Single binary with subcommands: partition/diagram queries, character
// tables, Kronecker positivity oracle, covering experiments, positivity
// certificates, random-partition statistics, and Plancherel-measure checks.
//
// Exit codes: 0 success, 1 property violation found, 2 usage error,
// 3 resource limit exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kron/certificate.hpp"
#include "kron/characters.hpp"
#include "kron/measure.hpp"
#include "kron/oracle.hpp"
#include "kron/parallel.hpp"
#include "kron/partition.hpp"
#include "kron/random.hpp"
#include "kron/shape.hpp"
#include "kron/version.hpp"

using json = nlohmann::json;
using namespace kron;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceLimit = 3;

struct RunConfig {
  int cap = 20;
  int product_cap = 14;
  std::string cache_dir;
  std::uint64_t seed = 0;
  int trials = 100;
  std::string format = "table";
  int threads = default_thread_count();

  bool structured() const { return format == "structured"; }

  KroneckerOracle make_oracle() const {
    OracleConfig oc;
    oc.coefficient_cap = cap;
    oc.product_cap = product_cap;
    oc.threads = threads;
    auto cache = std::make_shared<CharacterTableCache>(
        cache_dir.empty() ? std::filesystem::path{} : std::filesystem::path(cache_dir),
        threads, cap, &std::cerr);
    return KroneckerOracle(oc, cache);
  }

  json config_json() const {
    return json{{"version", kVersion},
                {"seed", seed},
                {"rng_algorithm", std::string(Rng::kAlgorithmId)},
                {"cap", cap},
                {"threads", threads}};
  }
};

// Bracketed tokens are shielded from CLI11's container expansion with a
// leading marker before parsing (see main); strip it here.
Partition parse_partition(std::string_view text) {
  if (!text.empty() && text.front() == '@') text.remove_prefix(1);
  return Partition::parse(text);
}

std::vector<Partition> read_support_members(const std::string& path) {
  std::vector<Partition> members;
  auto consume = [&](std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      members.push_back(Partition::parse(line));
    }
  };
  if (path == "-") {
    consume(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open support file: " + path);
    consume(in);
  }
  if (members.empty()) throw std::invalid_argument("support is empty: " + path);
  return members;
}

Support support_from(const std::vector<Partition>& members) {
  Support s;
  s.n = static_cast<int>(members.front().size());
  for (const auto& p : members) {
    if (p.size() != s.n) throw std::invalid_argument("support members differ in size");
    s.members.insert(p);
  }
  return s;
}

void print_support(const Support& s, const RunConfig& cfg) {
  if (cfg.structured()) {
    json members = json::array();
    for (const auto& p : s.members) members.push_back(p.to_string());
    std::cout << json{{"record", "support"}, {"n", s.n}, {"members", members}} << '\n';
  } else {
    std::cout << s.to_string();
  }
}

// --- experiments ----------------------------------------------------------

int run_sample(const RunConfig& cfg, const std::string& measure_text, long long n) {
  Measure measure = measure_text == "plancherel" ? Measure::Plancherel : Measure::Uniform;
  PartitionCounts counts;
  if (measure == Measure::Uniform) counts.ensure(n);
  if (!cfg.structured())
    std::cout << "# measure=" << measure_text << " n=" << n << " trials=" << cfg.trials
              << " seed=" << cfg.seed << " algorithm=" << Rng::kAlgorithmId
              << " version=" << kVersion << '\n';
  Rng base(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = base.derive(static_cast<std::uint64_t>(t));
    Partition p = measure == Measure::Plancherel ? plancherel_sample(n, rng)
                                                 : uniform_sample(n, rng, counts);
    if (cfg.structured()) {
      std::cout << json{{"record", "sample"},
                        {"trial", t},
                        {"trial_seed", rng.seed()},
                        {"partition", p.to_string()}}
                << '\n';
    } else {
      std::cout << p.to_string() << '\n';
    }
  }
  if (cfg.structured()) {
    json summary = cfg.config_json();
    summary["record"] = "summary";
    summary["measure"] = measure_text;
    summary["n"] = n;
    summary["trials"] = cfg.trials;
    std::cout << summary << '\n';
  }
  return kExitOk;
}

int run_stats_distrows(const RunConfig& cfg, const std::string& measure_text, long long n,
                       const std::string& shape_text) {
  Measure measure = measure_text == "plancherel" ? Measure::Plancherel : Measure::Uniform;
  std::optional<ContinuousShape> reference;
  if (shape_text == "lsvk") reference = ContinuousShape::lsvk_curve();
  else if (shape_text == "uniform") reference = ContinuousShape::uniform_curve();
  SampleStats stats = distrows_experiment(measure, n, cfg.trials, cfg.seed, cfg.threads,
                                          kDefaultUniformCap,
                                          reference ? &*reference : nullptr);
  Rng base(cfg.seed);
  if (cfg.structured()) {
    for (int t = 0; t < stats.trials; ++t) {
      json row{{"record", "trial"},
               {"trial", t},
               {"trial_seed", base.derive(static_cast<std::uint64_t>(t)).seed()},
               {"dist_rows", stats.dist_rows_values[static_cast<std::size_t>(t)]}};
      if (stats.shape_distances)
        row["shape_distance"] = (*stats.shape_distances)[static_cast<std::size_t>(t)];
      std::cout << row << '\n';
    }
    json summary = cfg.config_json();
    summary["record"] = "summary";
    summary["measure"] = measure_text;
    summary["n"] = n;
    summary["trials"] = stats.trials;
    summary["mean"] = stats.mean();
    summary["variance"] = stats.variance();
    summary["mean_over_sqrt_n"] = stats.mean_over_sqrt_n();
    if (!shape_text.empty() && shape_text != "none") summary["shape"] = shape_text;
    std::cout << summary << '\n';
  } else {
    std::cout << "# measure=" << measure_text << " n=" << n << " trials=" << stats.trials
              << " seed=" << stats.seed << " algorithm=" << stats.rng_algorithm
              << " version=" << kVersion << '\n';
    std::cout << (stats.shape_distances ? "# trial trial_seed dist_rows shape_distance\n"
                                        : "# trial trial_seed dist_rows\n");
    for (int t = 0; t < stats.trials; ++t) {
      std::cout << t << ' ' << base.derive(static_cast<std::uint64_t>(t)).seed() << ' '
                << stats.dist_rows_values[static_cast<std::size_t>(t)];
      if (stats.shape_distances)
        std::cout << ' ' << (*stats.shape_distances)[static_cast<std::size_t>(t)];
      std::cout << '\n';
    }
    std::cout << "mean " << stats.mean() << '\n';
    std::cout << "variance " << stats.variance() << '\n';
    std::cout << "mean_over_sqrt_n " << stats.mean_over_sqrt_n() << '\n';
  }
  return kExitOk;
}

int run_coupled_cover(const RunConfig& cfg, const std::string& measure_text, int k, long long n,
                      const std::string& coupling_text) {
  Measure measure = measure_text == "plancherel" ? Measure::Plancherel : Measure::Uniform;
  Coupling coupling =
      coupling_text == "identical" ? Coupling::Identical : Coupling::Independent;
  KroneckerOracle oracle = cfg.make_oracle();
  auto result =
      coupled_cover_experiment(measure, k, n, cfg.trials, coupling, cfg.seed, oracle);
  if (cfg.structured()) {
    json out = cfg.config_json();
    out["record"] = "coupled-cover";
    out["measure"] = measure_text;
    out["coupling"] = coupling_text;
    out["k"] = k;
    out["n"] = n;
    out["trials"] = result.trials;
    out["covering_trials"] = result.covering_trials;
    out["frequency"] = result.frequency();
    std::cout << out << '\n';
  } else {
    std::cout << "# measure=" << measure_text << " coupling=" << coupling_text << " k=" << k
              << " n=" << n << " trials=" << result.trials << " seed=" << cfg.seed
              << " version=" << kVersion << '\n';
    std::cout << "covering_trials " << result.covering_trials << '\n';
    std::cout << "frequency " << result.frequency() << '\n';
  }
  return kExitOk;
}

// --- certificates ---------------------------------------------------------

CertPtr build_certificate(const std::string& lemma, const std::vector<std::string>& params,
                          KroneckerOracle& oracle) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw std::invalid_argument("certify " + lemma + ": expected " + std::to_string(count) +
                                  " parameter(s)");
  };
  auto as_int = [](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer parameter: " + s);
    }
  };
  if (lemma == "trivial-pair") {
    need(1);
    return axiom_trivial_pair(parse_partition(params[0]));
  }
  if (lemma == "symmetric-cube") {
    need(1);
    return axiom_symmetric_cube(parse_partition(params[0]), &oracle);
  }
  if (lemma == "rectcube") {
    need(3);
    return lemma_rectcube(as_int(params[0]), as_int(params[1]), as_int(params[2]), oracle);
  }
  if (lemma == "rectsquare") {
    need(3);
    return lemma_rectsquare(as_int(params[0]), as_int(params[1]), as_int(params[2]), oracle);
  }
  if (lemma == "squarecube") {
    need(1);
    return lemma_squarecube(as_int(params[0]), oracle).first;
  }
  if (lemma == "hookidempotent") {
    need(2);
    return lemma_hookidempotent(as_int(params[0]), as_int(params[1]), oracle);
  }
  if (lemma == "hooksquare") {
    need(3);
    return lemma_hooksquare(as_int(params[0]), as_int(params[1]), as_int(params[2]));
  }
  if (lemma == "pieri") {
    need(3);
    PieriVariant variant;
    if (params[2] == "two_row") variant = PieriVariant::TwoRow;
    else if (params[2] == "hook") variant = PieriVariant::Hook;
    else throw std::invalid_argument("pieri variant must be two_row or hook");
    return lemma_pieri(parse_partition(params[0]), as_int(params[1]), variant);
  }
  if (lemma == "neartensor") {
    need(2);
    return lemma_neartensor(parse_partition(params[0]), parse_partition(params[1]), oracle).first;
  }
  if (lemma == "nearsharedrows") {
    need(4);
    return lemma_nearsharedrows(parse_partition(params[0]), parse_partition(params[1]),
                                as_int(params[2]), parse_partition(params[3]), oracle);
  }
  throw std::invalid_argument(
      "unknown lemma '" + lemma +
      "' (expected one of: trivial-pair, symmetric-cube, rectcube, rectsquare, squarecube, "
      "hookidempotent, hooksquare, pieri, neartensor, nearsharedrows)");
}

int run_verify(const RunConfig& cfg, const std::string& path, const std::string& mode_text) {
  VerifyMode mode;
  if (mode_text == "structural") mode = VerifyMode::Structural;
  else if (mode_text == "leaves") mode = VerifyMode::Leaves;
  else if (mode_text == "full") mode = VerifyMode::Full;
  else throw std::invalid_argument("verify mode must be structural, leaves or full");

  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open certificate file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CertPtr cert = deserialize_certificate(buf.str());

  KroneckerOracle oracle = cfg.make_oracle();
  VerifyReport report = verify_certificate(*cert, mode, oracle);
  bool ok = report.passed(mode);
  if (cfg.structured()) {
    json out{{"record", "verify"},
             {"mode", mode_text},
             {"structural_ok", report.structural_ok},
             {"leaves_ok", report.leaves_ok},
             {"passed", ok},
             {"version", kVersion}};
    if (report.root_positive.has_value()) out["root_positive"] = *report.root_positive;
    json issues = json::array();
    for (const auto& f : report.failures)
      issues.push_back(json{{"path", f.path}, {"message", f.message}});
    out["failures"] = issues;
    json unverified = json::array();
    for (const auto& u : report.unverified)
      unverified.push_back(json{{"path", u.path}, {"message", u.message}});
    out["unverified"] = unverified;
    std::cout << out << '\n';
  } else {
    std::cout << report.to_string();
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kroncover: exact Kronecker-coefficient positivity toolkit for S_n"};
  app.name("kroncover");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  // CLI11 expands arguments of the form [a,b,...] fed to multi-value options
  // into their elements; partitions use exactly that syntax, so shield them
  // with a marker that parse_partition strips again.
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc) - 1 : 0);
  for (int i = argc - 1; i > 0; --i) {
    std::string arg = argv[i];
    if (!arg.empty() && arg.front() == '[') arg.insert(arg.begin(), '@');
    args.push_back(std::move(arg));
  }

  RunConfig cfg;
  if (const char* env = std::getenv("KRONCOVER_CACHE_DIR")) cfg.cache_dir = env;
  app.add_option("--cap", cfg.cap, "Oracle size cap for exact coefficient evaluation");
  app.add_option("--product-cap", cfg.product_cap, "Size cap for iterated support products");
  app.add_option("--cache-dir", cfg.cache_dir,
                 "Character table cache directory (env KRONCOVER_CACHE_DIR)");
  app.add_option("--seed", cfg.seed, "Random seed (recorded in experiment output)");
  app.add_option("--trials", cfg.trials, "Number of trials for sampling commands");
  app.add_option("--format", cfg.format, "Output format: table or structured")
      ->check(CLI::IsMember({"table", "structured"}));
  app.add_option("--threads", cfg.threads, "Worker thread count");

  int exit_code = kExitOk;
  auto run = [&](auto&& fn) {
    return [&, fn]() { exit_code = fn(); };
  };

  // --- diagram queries ---
  std::string arg_p, arg_q, arg_v;
  auto* dim_cmd = app.add_subcommand("dim", "Irreducible dimension of a partition");
  dim_cmd->add_option("partition", arg_p)->required();
  dim_cmd->callback(run([&] {
    std::cout << dimension(parse_partition(arg_p)).get_str() << '\n';
    return kExitOk;
  }));

  auto* hooks_cmd = app.add_subcommand("hooks", "Hook lengths of a partition");
  hooks_cmd->add_option("partition", arg_p)->required();
  hooks_cmd->callback(run([&] {
    auto t = hook_lengths(parse_partition(arg_p));
    for (const auto& row : t.full) {
      for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
      std::cout << '\n';
    }
    return kExitOk;
  }));

  auto* conj_cmd = app.add_subcommand("conj", "Conjugate partition");
  conj_cmd->add_option("partition", arg_p)->required();
  conj_cmd->callback(run([&] {
    std::cout << conjugate(parse_partition(arg_p)).to_string() << '\n';
    return kExitOk;
  }));

  auto* hsum_cmd = app.add_subcommand("hsum", "Horizontal sum of two partitions");
  hsum_cmd->add_option("p", arg_p)->required();
  hsum_cmd->add_option("q", arg_q)->required();
  hsum_cmd->callback(run([&] {
    std::cout << hsum(parse_partition(arg_p), parse_partition(arg_q)).to_string() << '\n';
    return kExitOk;
  }));

  auto* vsum_cmd = app.add_subcommand("vsum", "Vertical sum of two partitions");
  vsum_cmd->add_option("p", arg_p)->required();
  vsum_cmd->add_option("q", arg_q)->required();
  vsum_cmd->callback(run([&] {
    std::cout << vsum(parse_partition(arg_p), parse_partition(arg_q)).to_string() << '\n';
    return kExitOk;
  }));

  auto* dist_cmd = app.add_subcommand("dist", "Blockwise distance between equal-size partitions");
  dist_cmd->add_option("p", arg_p)->required();
  dist_cmd->add_option("q", arg_q)->required();
  dist_cmd->callback(run([&] {
    std::cout << blockwise_distance(parse_partition(arg_p), parse_partition(arg_q)) << '\n';
    return kExitOk;
  }));

  std::vector<std::string> arg_many;
  auto* distrows_cmd =
      app.add_subcommand("distrows", "Distinct row lengths (shared, with several partitions)");
  distrows_cmd->add_option("partitions", arg_many)->required()->expected(-1);
  distrows_cmd->callback(run([&] {
    std::vector<Partition> ps;
    for (const auto& text : arg_many) ps.push_back(parse_partition(text));
    std::cout << (ps.size() == 1 ? dist_rows(ps[0]) : shared_dist_rows(ps)) << '\n';
    return kExitOk;
  }));

  int arg_r = 0;
  std::string arg_rows;
  auto* stair_cmd = app.add_subcommand("staircase-extract",
                                       "Split p as vsum(mu, hsum(nu, staircase(r)))");
  stair_cmd->add_option("partition", arg_p)->required();
  stair_cmd->add_option("r", arg_r)->required();
  stair_cmd->add_option("--rows", arg_rows, "Comma-separated distinct row lengths to extract");
  stair_cmd->callback(run([&] {
    std::optional<std::vector<int>> chosen;
    if (!arg_rows.empty()) {
      std::vector<int> rows;
      std::istringstream is(arg_rows);
      std::string item;
      while (std::getline(is, item, ',')) rows.push_back(std::stoi(item));
      chosen = rows;
    }
    auto d = staircase_decompose(parse_partition(arg_p), arg_r, chosen);
    std::cout << "mu " << d.mu.to_string() << '\n';
    std::cout << "nu " << d.nu.to_string() << '\n';
    return kExitOk;
  }));

  // --- characters ---
  auto* char_cmd = app.add_subcommand("char", "Character value chi^lambda(rho)");
  char_cmd->add_option("lambda", arg_p)->required();
  char_cmd->add_option("rho", arg_q)->required();
  char_cmd->callback(run([&] {
    std::cout << character(parse_partition(arg_p), {parse_partition(arg_q)}) << '\n';
    return kExitOk;
  }));

  int arg_n = 0;
  auto* table_cmd = app.add_subcommand("table", "Full character table of S_n");
  table_cmd->add_option("n", arg_n)->required();
  table_cmd->callback(run([&] {
    CharacterTableCache cache(
        cfg.cache_dir.empty() ? std::filesystem::path{} : std::filesystem::path(cfg.cache_dir),
        cfg.threads, cfg.cap, &std::cerr);
    std::cout << serialize_character_table(*cache.get(arg_n));
    return kExitOk;
  }));

  // --- oracle ---
  auto* kron_cmd = app.add_subcommand("kron", "Kronecker coefficient g(l, m, v)");
  kron_cmd->add_option("l", arg_p)->required();
  kron_cmd->add_option("m", arg_q)->required();
  kron_cmd->add_option("v", arg_v)->required();
  kron_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    std::cout << oracle
                     .kronecker(parse_partition(arg_p), parse_partition(arg_q),
                                parse_partition(arg_v))
                     .get_str()
              << '\n';
    return kExitOk;
  }));

  auto* kron_ext_cmd =
      app.add_subcommand("kron-ext", "Extended Kronecker coefficient of 3 or more partitions");
  kron_ext_cmd->add_option("partitions", arg_many)->required()->expected(-1);
  kron_ext_cmd->callback(run([&] {
    std::vector<Partition> ps;
    for (const auto& text : arg_many) ps.push_back(parse_partition(text));
    KroneckerOracle oracle = cfg.make_oracle();
    std::cout << oracle.extended_kronecker(ps).get_str() << '\n';
    return kExitOk;
  }));

  auto* tensor_cmd = app.add_subcommand("tensor", "Support of l tensor m");
  tensor_cmd->add_option("l", arg_p)->required();
  tensor_cmd->add_option("m", arg_q)->required();
  tensor_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    print_support(oracle.tensor_support(parse_partition(arg_p), parse_partition(arg_q)), cfg);
    return kExitOk;
  }));

  int arg_t = 1;
  auto* power_cmd = app.add_subcommand("power", "Support of the t-th tensor power");
  power_cmd->add_option("l", arg_p)->required();
  power_cmd->add_option("t", arg_t)->required();
  power_cmd->callback(run([&] {
    if (arg_t < 1) throw std::invalid_argument("power: t must be >= 1");
    KroneckerOracle oracle = cfg.make_oracle();
    Partition l = parse_partition(arg_p);
    std::vector<KroneckerOracle::Factor> factors(static_cast<std::size_t>(arg_t), l);
    print_support(oracle.product_support(factors), cfg);
    return kExitOk;
  }));

  auto* covers_cmd = app.add_subcommand(
      "covers", "Does the support given as partitions (or a file via --file) cover Irrep(S_n)?");
  std::string arg_file;
  covers_cmd->add_option("members", arg_many)->expected(-1);
  covers_cmd->add_option("--file", arg_file, "Read support members from file (- for stdin)");
  covers_cmd->callback(run([&] {
    std::vector<Partition> members;
    if (!arg_file.empty()) {
      members = read_support_members(arg_file);
    } else {
      for (const auto& text : arg_many) members.push_back(parse_partition(text));
    }
    if (members.empty()) throw std::invalid_argument("covers: no support members given");
    KroneckerOracle oracle = cfg.make_oracle();
    std::cout << (oracle.covers(support_from(members)) ? "true" : "false") << '\n';
    return kExitOk;
  }));

  auto* saxl_cmd = app.add_subcommand("saxl", "Does l tensor l cover Irrep(S_n)?");
  saxl_cmd->add_option("l", arg_p)->required();
  saxl_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    std::cout << (oracle.saxl_check(parse_partition(arg_p)) ? "true" : "false") << '\n';
    return kExitOk;
  }));

  auto* saxl4_cmd =
      app.add_subcommand("saxl-fourth", "Does the staircase fourth power cover at r?");
  saxl4_cmd->add_option("r", arg_r)->required();
  saxl4_cmd->callback(run([&] {
    if (arg_r < 2) throw std::invalid_argument("saxl-fourth: r must be >= 2");
    KroneckerOracle oracle = cfg.make_oracle();
    Partition rho = staircase(arg_r);
    Support square = oracle.tensor_support(rho, rho);
    bool covered = oracle.covers(oracle.product_support({square, square}));
    std::cout << (covered ? "true" : "false") << '\n';
    return kExitOk;
  }));

  int arg_tmax = 64;
  auto* minpower_cmd = app.add_subcommand("min-power", "Least t with l^(t) covering");
  minpower_cmd->add_option("l", arg_p)->required();
  minpower_cmd->add_option("--tmax", arg_tmax, "Give up beyond this power");
  minpower_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    auto result = oracle.min_cover_power(parse_partition(arg_p), arg_tmax);
    std::cout << result.to_string() << '\n';
    if (result.kind == MinPowerResult::Kind::Never)
      for (const auto& p : result.stabilized.members) std::cout << "  " << p.to_string() << '\n';
    return kExitOk;
  }));

  // --- certificates ---
  std::string arg_lemma, arg_out;
  std::vector<std::string> arg_params;
  auto* certify_cmd = app.add_subcommand("certify", "Build a positivity certificate");
  certify_cmd->add_option("lemma", arg_lemma)->required();
  certify_cmd->add_option("params", arg_params)->expected(-1);
  certify_cmd->add_option("--out", arg_out, "Write the certificate to this file");
  certify_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    CertPtr cert = build_certificate(arg_lemma, arg_params, oracle);
    std::string text = serialize_certificate(*cert);
    if (arg_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(arg_out, std::ios::binary | std::ios::trunc);
      if (!out) throw std::invalid_argument("cannot write certificate file: " + arg_out);
      out << text;
    }
    return kExitOk;
  }));

  std::string arg_mode = "full";
  auto* verify_cmd = app.add_subcommand("verify", "Verify a certificate file");
  verify_cmd->add_option("file", arg_p)->required();
  verify_cmd->add_option("--mode", arg_mode, "structural, leaves or full");
  verify_cmd->callback(run([&] { return run_verify(cfg, arg_p, arg_mode); }));

  // --- random partitions ---
  std::string arg_measure = "plancherel";
  long long arg_size = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Draw random partitions");
  sample_cmd->add_option("measure", arg_measure)->check(CLI::IsMember({"plancherel", "uniform"}));
  sample_cmd->add_option("n", arg_size)->required();
  sample_cmd->callback(run([&] { return run_sample(cfg, arg_measure, arg_size); }));

  std::string arg_shape = "none";
  auto* stats_cmd = app.add_subcommand("stats-distrows", "Distinct-row statistics over samples");
  stats_cmd->add_option("measure", arg_measure)->check(CLI::IsMember({"plancherel", "uniform"}));
  stats_cmd->add_option("n", arg_size)->required();
  stats_cmd->add_option("--shape", arg_shape, "Also record distance to a limit curve")
      ->check(CLI::IsMember({"none", "lsvk", "uniform"}));
  stats_cmd->callback(
      run([&] { return run_stats_distrows(cfg, arg_measure, arg_size, arg_shape); }));

  int arg_k = 2;
  std::string arg_coupling = "independent";
  auto* cover_cmd =
      app.add_subcommand("exp-coupled-cover", "Covering frequency of k coupled random factors");
  cover_cmd->add_option("measure", arg_measure)->check(CLI::IsMember({"plancherel", "uniform"}));
  cover_cmd->add_option("k", arg_k)->required();
  cover_cmd->add_option("n", arg_size)->required();
  cover_cmd->add_option("--coupling", arg_coupling)
      ->check(CLI::IsMember({"independent", "identical"}));
  cover_cmd->callback(
      run([&] { return run_coupled_cover(cfg, arg_measure, arg_k, arg_size, arg_coupling); }));

  // --- Plancherel measure ---
  auto* measure_cmd =
      app.add_subcommand("measure", "Plancherel measure of a support (exact rational)");
  measure_cmd->add_option("members", arg_many)->expected(-1);
  measure_cmd->add_option("--file", arg_file, "Read support members from file (- for stdin)");
  measure_cmd->callback(run([&] {
    std::vector<Partition> members;
    if (!arg_file.empty()) members = read_support_members(arg_file);
    else
      for (const auto& text : arg_many) members.push_back(parse_partition(text));
    if (members.empty()) throw std::invalid_argument("measure: no support members given");
    std::cout << plancherel_measure(support_from(members)).get_str() << '\n';
    return kExitOk;
  }));

  std::string arg_wfile;
  auto* pigeon_cmd = app.add_subcommand("pigeonhole", "Check the measure pigeonhole lemma");
  pigeon_cmd->add_option("v_file", arg_file)->required();
  pigeon_cmd->add_option("w_file", arg_wfile)->required();
  pigeon_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    auto report = pigeonhole_check(support_from(read_support_members(arg_file)),
                                   support_from(read_support_members(arg_wfile)), oracle);
    std::cout << report.to_string() << '\n';
    return report.passed() ? kExitOk : kExitViolation;
  }));

  auto* mono_cmd = app.add_subcommand("monotonicity", "Check measure monotonicity M(V (x) l) >= M(V)");
  mono_cmd->add_option("v_file", arg_file)->required();
  mono_cmd->add_option("l", arg_p)->required();
  mono_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    auto report = monotonicity_check(support_from(read_support_members(arg_file)),
                                     parse_partition(arg_p), oracle);
    std::cout << report.to_string() << '\n';
    return report.passed() ? kExitOk : kExitViolation;
  }));

  int arg_prime = 3;
  auto* affine_cmd =
      app.add_subcommand("affine-demo", "Uniform-measure failure of the pigeonhole lemma");
  affine_cmd->add_option("p", arg_prime)->required();
  affine_cmd->callback(run([&] {
    auto report = affine_counterexample_demo(arg_prime);
    std::cout << report.to_string();
    return report.demonstrates_failure() ? kExitOk : kExitViolation;
  }));

  int arg_nmin = 5, arg_nmax = 10;
  auto* audit_cmd = app.add_subcommand(
      "constant-audit", "Empirical covering-exponent constant over a size range");
  audit_cmd->add_option("--nmin", arg_nmin);
  audit_cmd->add_option("--nmax", arg_nmax);
  audit_cmd->add_option("--tmax", arg_tmax);
  audit_cmd->callback(run([&] {
    KroneckerOracle oracle = cfg.make_oracle();
    auto rows = constant_audit(arg_nmin, arg_nmax, oracle, arg_tmax);
    double overall = 0;
    std::cout << "# n ratio t_min lambda\n";
    for (const auto& row : rows) {
      std::cout << row.n << ' ' << row.ratio << ' ' << row.t_min << ' ' << row.best.to_string()
                << '\n';
      overall = std::max(overall, row.ratio);
    }
    std::cout << "max_ratio " << overall << '\n';
    return kExitOk;
  }));

  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return exit_code;
}
