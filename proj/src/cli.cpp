#include "mesonet/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mesonet/analytic.hpp"
#include "mesonet/csv.hpp"
#include "mesonet/dtree.hpp"
#include "mesonet/pathquality.hpp"
#include "mesonet/simcore.hpp"

namespace fs = std::filesystem;

namespace mesonet {
namespace {

constexpr const char* kVersion = "0.1.0";

// exit code 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Common plumbing shared by every subcommand: output directory hygiene,
// seed resolution, and the manifest that pins the run down.
struct RunSetup {
  std::string subcommand;
  std::string config_path;
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  std::string out_dir;
};

void prepare_out_dir(const std::string& out, bool force) {
  fs::path p(out);
  if (fs::exists(p)) {
    if (!fs::is_directory(p))
      throw UsageError("output path exists and is not a directory: " + out);
    if (!fs::is_empty(p) && !force)
      throw UsageError("output directory not empty (use --force): " + out);
  } else {
    fs::create_directories(p);
  }
}

uint64_t resolve_seed(uint64_t config_seed, bool flag_given, uint64_t flag_seed) {
  uint64_t seed = flag_given ? flag_seed : config_seed;
  if (const char* env = std::getenv("MESONET_SEED")) {
    try {
      size_t used = 0;
      unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trail");
      seed = v;
    } catch (const std::exception&) {
      throw UsageError(std::string("MESONET_SEED is not an integer: ") + env);
    }
  }
  return seed;
}

// Written before any result file so a crashed run still identifies itself.
// Deliberately timestamp free: two runs of the same inputs must be
// byte-identical throughout the directory.
void write_manifest(const RunSetup& rs) {
  std::ofstream out(fs::path(rs.out_dir) / "manifest.txt");
  if (!out)
    throw std::runtime_error("cannot write manifest in " + rs.out_dir);
  out << "subcommand=" << rs.subcommand << '\n'
      << "config=" << rs.config_path << '\n'
      << "config_hash=" << hex64(rs.config_hash) << '\n'
      << "seed=" << rs.seed << '\n'
      << "out=" << rs.out_dir << '\n'
      << "version=" << kVersion << '\n';
}

std::string out_path(const RunSetup& rs, const std::string& name) {
  return (fs::path(rs.out_dir) / name).string();
}

// ---------------------------------------------------------------- analytic

struct GraphFile {
  bool aloha = false;
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<ConflictFlow> flows;
  std::vector<double> loads;  // aloha mode: offered loads to tabulate
};

[[noreturn]] void graph_error(const std::string& path, int line,
                              const std::string& msg) {
  throw UsageError(path + ":" + std::to_string(line) + ": " + msg);
}

GraphFile parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  GraphFile g;
  bool mode_seen = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word)) continue;  // blank or comment

    auto want_int = [&](const char* what) {
      long long v;
      if (!(ss >> v)) graph_error(path, lineno, std::string("expected ") + what);
      return static_cast<int>(v);
    };
    auto want_double = [&](const char* what) {
      double v;
      if (!(ss >> v)) graph_error(path, lineno, std::string("expected ") + what);
      return v;
    };
    auto check_node = [&](int v) {
      if (v < 0 || v >= g.nodes)
        graph_error(path, lineno,
                    "node " + std::to_string(v) + " out of range (nodes=" +
                        std::to_string(g.nodes) + ")");
    };

    if (word == "mode") {
      std::string m;
      if (!(ss >> m) || (m != "csma" && m != "aloha"))
        graph_error(path, lineno, "mode must be csma or aloha");
      g.aloha = m == "aloha";
      mode_seen = true;
    } else if (word == "nodes") {
      g.nodes = want_int("node count");
      if (g.nodes < 1 || g.nodes > 31)
        graph_error(path, lineno, "nodes must be in [1, 31]");
    } else if (word == "edge") {
      int a = want_int("node id"), b = want_int("node id");
      check_node(a);
      check_node(b);
      if (a == b) graph_error(path, lineno, "self edge");
      g.edges.emplace_back(a, b);
    } else if (word == "flow") {
      int a = want_int("node id"), b = want_int("node id");
      double rate = want_double("rate");
      check_node(a);
      check_node(b);
      if (rate <= 0.0) graph_error(path, lineno, "flow rate must be > 0");
      g.flows.push_back({a, b, rate});
    } else if (word == "g") {
      double v = want_double("offered load");
      if (v < 0.0) graph_error(path, lineno, "offered load must be >= 0");
      g.loads.push_back(v);
    } else {
      graph_error(path, lineno, "unknown directive '" + word + "'");
    }
    std::string extra;
    if (ss >> extra)
      graph_error(path, lineno, "trailing token '" + extra + "'");
  }
  if (!mode_seen) graph_error(path, lineno + 1, "missing 'mode' line");
  if (g.aloha) {
    if (g.loads.empty())
      graph_error(path, lineno + 1, "aloha mode needs at least one 'g' line");
  } else {
    if (g.nodes == 0) graph_error(path, lineno + 1, "missing 'nodes' line");
    if (g.flows.empty())
      graph_error(path, lineno + 1, "csma mode needs at least one 'flow' line");
  }
  return g;
}

int cmd_analytic(const std::string& graph_path, const std::string& out,
                 bool force) {
  GraphFile g = parse_graph_file(graph_path);

  RunSetup rs{"analytic", graph_path, fnv1a(read_file(graph_path)), 0, out};
  prepare_out_dir(out, force);
  write_manifest(rs);

  if (g.aloha) {
    CsvWriter csv(out_path(rs, "analytic.csv"), {"g", "s"});
    for (double load : g.loads)
      csv.write_row({fmt_double(load), fmt_double(aloha_throughput(load), 9)});
  } else {
    ConflictGraph cg(g.nodes);
    for (auto [a, b] : g.edges) cg.add_edge(a, b);
    for (const ConflictFlow& f : g.flows) cg.add_flow(f.src, f.dst, f.rate);
    ThroughputSolution sol = csma_flow_throughput(cg);
    CsvWriter csv(out_path(rs, "analytic.csv"),
                  {"flow_src", "flow_dst", "g", "s"});
    for (const FlowThroughput& ft : sol.flows)
      csv.write_row({std::to_string(ft.flow.src), std::to_string(ft.flow.dst),
                     fmt_double(ft.flow.rate), fmt_double(ft.s, 9)});
  }
  return 0;
}

// ------------------------------------------------------------- gen-dataset

const std::vector<std::string> kDatasetHeader = {
    "hn",    "lora_rssi",    "zigbee_prr", "zigbee_rnp",
    "label", "tput_zigbee", "tput_lora"};

void write_dataset_csv(const std::string& path, const LabeledDataset& data) {
  CsvWriter csv(path, kDatasetHeader);
  for (const LabeledRow& r : data) {
    csv.write_row({fmt_double(r.x.hn, 0), fmt_double(r.x.lora_rssi),
                   fmt_double(r.x.zigbee_prr), fmt_double(r.x.zigbee_rnp),
                   radio_name(r.label), fmt_double(r.tput_zigbee),
                   fmt_double(r.tput_lora)});
  }
}

LabeledDataset read_dataset_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.header.empty()) throw UsageError("dataset csv is empty: " + path);
  std::vector<int> cols;
  for (const std::string& name : kDatasetHeader) {
    try {
      cols.push_back(t.column(name));
    } catch (const std::exception&) {
      throw UsageError("dataset csv missing column '" + name + "': " + path);
    }
  }
  if (t.rows.empty()) throw UsageError("dataset csv has no rows: " + path);
  LabeledDataset data;
  data.reserve(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    if (row.size() != t.header.size())
      throw UsageError(path + ": row " + std::to_string(i + 2) +
                       " has wrong cell count");
    try {
      LabeledRow r;
      r.x.hn = std::stod(row[cols[0]]);
      r.x.lora_rssi = std::stod(row[cols[1]]);
      r.x.zigbee_prr = std::stod(row[cols[2]]);
      r.x.zigbee_rnp = std::stod(row[cols[3]]);
      r.label = radio_from_string(row[cols[4]]);
      r.tput_zigbee = std::stod(row[cols[5]]);
      r.tput_lora = std::stod(row[cols[6]]);
      data.push_back(r);
    } catch (const std::exception& e) {
      throw UsageError(path + ": row " + std::to_string(i + 2) + ": " +
                       e.what());
    }
  }
  return data;
}

// One scenario file typically drives several subcommands, so each command
// consumes the other commands' quota keys before the typo check.
void consume_scenario_extras(KeyValueConfig& cfg) {
  (void)cfg.get_int("min_rows", 0);
  (void)cfg.get_int("rpn_max", 0);
}

int cmd_gen_dataset(const std::string& config_path, const std::string& out,
                    bool force, bool seed_given, uint64_t seed_flag) {
  KeyValueConfig cfg = KeyValueConfig::from_file(config_path);
  SimConfig sim = SimConfig::from_config(cfg);
  int min_rows = cfg.get_int("min_rows", 1500);
  consume_scenario_extras(cfg);
  cfg.reject_unconsumed();
  sim.seed = resolve_seed(sim.seed, seed_given, seed_flag);

  RunSetup rs{"gen-dataset", config_path, fnv1a(cfg.canonical_text()),
              sim.seed, out};
  prepare_out_dir(out, force);
  write_manifest(rs);

  SimTrace trace = simulate_trace(sim);
  LabeledDataset data = dataset_from_trace(trace, sim.rpn);
  write_dataset_csv(out_path(rs, "dataset.csv"), data);
  std::cout << "rows=" << data.size() << "\n";
  if (static_cast<int>(data.size()) < min_rows)
    std::cerr << "warning: only " << data.size() << " labeled rows collected, "
              << min_rows << " wanted; extend duration_s\n";
  return 0;
}

// ------------------------------------------------------------------- train

DecisionTree train_with_method(const LabeledDataset& data,
                               const std::string& method) {
  DecisionTree tree = train_cart(data);
  if (method == "tao") tree = prune_dead(tao_optimize(tree, data), data);
  return tree;
}

int cmd_train(const std::string& dataset_path, const std::string& method,
              const std::string& out, bool force, bool seed_given,
              uint64_t seed_flag) {
  if (method != "cart" && method != "tao")
    throw UsageError("method must be cart or tao, got '" + method + "'");
  LabeledDataset data = read_dataset_csv(dataset_path);

  uint64_t seed = resolve_seed(1, seed_given, seed_flag);
  RunSetup rs{"train", dataset_path, fnv1a(read_file(dataset_path)), seed, out};
  prepare_out_dir(out, force);
  write_manifest(rs);

  bool single_class = true;
  for (const LabeledRow& r : data)
    if (r.label != data.front().label) {
      single_class = false;
      break;
    }
  if (single_class)
    std::cerr << "warning: every row has label "
              << radio_name(data.front().label)
              << "; the model is a single leaf\n";

  DecisionTree tree = train_with_method(data, method);
  {
    std::ofstream f(out_path(rs, "tree.txt"));
    f << tree.serialize();
  }
  {
    std::ofstream f(out_path(rs, "select_radio.c"));
    f << codegen(tree);
  }

  TreeTrainer trainer = [&](const LabeledDataset& d) {
    return train_with_method(d, method);
  };
  KfoldReport rep = kfold_accuracy(data, 5, trainer, seed);
  CsvWriter csv(out_path(rs, "kfold.csv"), {"stat", "value"});
  csv.write_row({"train_mean", fmt_double(rep.train_mean)});
  csv.write_row({"train_std", fmt_double(rep.train_std)});
  csv.write_row({"test_mean", fmt_double(rep.test_mean)});
  csv.write_row({"test_std", fmt_double(rep.test_std)});
  for (size_t i = 0; i < rep.test_fold_accuracy.size(); ++i)
    csv.write_row({"fold" + std::to_string(i + 1),
                   fmt_double(rep.test_fold_accuracy[i])});
  std::cout << "nodes=" << tree.node_count() << " depth=" << tree.depth()
            << " train_accuracy=" << fmt_double(accuracy(tree, data), 4)
            << " kfold_test=" << fmt_double(rep.test_mean, 4) << "\n";
  return 0;
}

// -------------------------------------------------------------------- eval

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

void write_cdf_rows(CsvWriter& csv, const std::string& selector,
                    const std::vector<double>& ascending) {
  const size_t n = ascending.size();
  if (n == 0) return;
  const size_t stride = std::max<size_t>(1, n / 200);
  for (size_t i = 0; i < n; i += stride) {
    size_t j = std::min(i + stride, n) - 1;  // right edge of the slice
    csv.write_row({selector, fmt_double(ascending[j]),
                   fmt_double(static_cast<double>(j + 1) / n)});
    if (j + 1 == n) return;
  }
  csv.write_row({selector, fmt_double(ascending[n - 1]), fmt_double(1.0)});
}

double quantile(const std::vector<double>& ascending, double q) {
  if (ascending.empty()) return 0.0;
  double idx = q * (ascending.size() - 1);
  size_t lo = static_cast<size_t>(idx);
  size_t hi = std::min(lo + 1, ascending.size() - 1);
  return ascending[lo] + (ascending[hi] - ascending[lo]) * (idx - lo);
}

int cmd_eval(const std::string& config_path, const std::string& selectors_arg,
             const std::string& model_path, const std::string& out, bool force,
             bool seed_given, uint64_t seed_flag, int jobs) {
  KeyValueConfig cfg = KeyValueConfig::from_file(config_path);
  SimConfig sim = SimConfig::from_config(cfg);
  consume_scenario_extras(cfg);
  cfg.reject_unconsumed();
  sim.seed = resolve_seed(sim.seed, seed_given, seed_flag);

  std::vector<SelectorKind> kinds;
  for (const std::string& name : split_list(selectors_arg))
    kinds.push_back(selector_kind_from_string(name));
  if (kinds.empty()) throw UsageError("empty selector list");

  std::string model_file = !model_path.empty() ? model_path : sim.model_file;
  DecisionTree model;
  for (SelectorKind k : kinds)
    if (k == SelectorKind::TaoCart) {
      if (model_file.empty())
        throw UsageError("selector taocart needs --model (or model_file=)");
      model = DecisionTree::deserialize(read_file(model_file));
    }

  RunSetup rs{"eval", config_path, fnv1a(cfg.canonical_text()), sim.seed, out};
  prepare_out_dir(out, force);
  write_manifest(rs);

  SimTrace trace = simulate_trace(sim);

  auto make = [&](SelectorKind k) -> std::unique_ptr<Selector> {
    switch (k) {
      case SelectorKind::FixedZigbee:
        return make_fixed_selector(RadioChoice::Zigbee);
      case SelectorKind::FixedLora:
        return make_fixed_selector(RadioChoice::LoRa);
      case SelectorKind::Threshold:
        return make_threshold_selector(ThresholdTable::defaults());
      case SelectorKind::TaoCart:
        return make_tree_selector(model);
      case SelectorKind::QLearning:
        return make_qlearning_selector(QTable{}, 0.1);
      case SelectorKind::Oracle:
        return make_oracle_selector();
    }
    throw std::logic_error("unreachable selector kind");
  };

  // each selector replays the same trace independently, so they can run on a
  // small worker pool; results land in fixed slots to keep files byte-stable
  std::vector<Metrics> results(kinds.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < kinds.size();
         i = next.fetch_add(1)) {
      auto sel = make(kinds[i]);
      results[i] = score_selector(trace, *sel, sim.seed);
    }
  };
  int pool = std::max(1, std::min<int>(jobs, static_cast<int>(kinds.size())));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  CsvWriter metrics_csv(
      out_path(rs, "metrics.csv"),
      {"selector", "packets", "delivered", "mean_tput_bps",
       "delivered_tput_bps", "mean_latency_s", "loss_rate", "zigbee_share",
       "switch_rate"});
  for (size_t i = 0; i < kinds.size(); ++i) {
    const Metrics& m = results[i];
    metrics_csv.write_row(
        {selector_kind_name(kinds[i]), std::to_string(m.packets),
         std::to_string(m.delivered), fmt_double(m.mean_tput_bps, 3),
         fmt_double(m.delivered_tput_bps, 3), fmt_double(m.mean_latency_s),
         fmt_double(m.loss_rate), fmt_double(m.zigbee_share),
         fmt_double(m.switch_rate)});
  }

  CsvWriter cdf_csv(out_path(rs, "tput_cdf.csv"),
                    {"selector", "tput_bps", "cum_fraction"});
  for (size_t i = 0; i < kinds.size(); ++i)
    write_cdf_rows(cdf_csv, selector_kind_name(kinds[i]), results[i].tputs_bps);

  CsvWriter lat_csv(out_path(rs, "latency_summary.csv"),
                    {"selector", "mean_s", "p50_s", "p90_s", "p99_s"});
  for (size_t i = 0; i < kinds.size(); ++i) {
    const Metrics& m = results[i];
    lat_csv.write_row({selector_kind_name(kinds[i]),
                       fmt_double(m.mean_latency_s),
                       fmt_double(quantile(m.latencies_s, 0.50)),
                       fmt_double(quantile(m.latencies_s, 0.90)),
                       fmt_double(quantile(m.latencies_s, 0.99))});
  }

  for (size_t i = 0; i < kinds.size(); ++i)
    std::cout << selector_kind_name(kinds[i])
              << " mean_tput_bps=" << fmt_double(results[i].mean_tput_bps, 1)
              << " mean_latency_ms="
              << fmt_double(results[i].mean_latency_s * 1e3, 2) << "\n";
  return 0;
}

// --------------------------------------------------------------------- rpn

int cmd_rpn(const std::string& config_path, const std::string& out, bool force,
            bool seed_given, uint64_t seed_flag) {
  KeyValueConfig cfg = KeyValueConfig::from_file(config_path);
  SimConfig sim = SimConfig::from_config(cfg);
  int max_depth = cfg.get_int("rpn_max", 6);
  consume_scenario_extras(cfg);
  cfg.reject_unconsumed();
  sim.seed = resolve_seed(sim.seed, seed_given, seed_flag);
  if (max_depth < 2) throw UsageError("rpn_max must be >= 2");

  RunSetup rs{"rpn", config_path, fnv1a(cfg.canonical_text()), sim.seed, out};
  prepare_out_dir(out, force);
  write_manifest(rs);

  SimTrace trace = simulate_trace(sim);
  int longest = trace.topo.max_hop_count();
  if (longest < 2)
    throw std::runtime_error("route depth study needs paths of 2+ hops, "
                             "longest here is " +
                             std::to_string(longest));
  std::map<int, LabeledDataset> by_depth;
  for (int n = 1; n <= std::min(max_depth, longest); ++n)
    by_depth[n] = dataset_from_trace(trace, n);

  TreeTrainer trainer = [](const LabeledDataset& d) {
    return train_with_method(d, "tao");
  };
  RpnReport rep = choose_rpn(by_depth, trainer, sim.seed);

  CsvWriter csv(out_path(rs, "rpn_curve.csv"), {"use_links", "test_accuracy"});
  for (const RpnCandidate& c : rep.curve)
    csv.write_row({std::to_string(c.use_links), fmt_double(c.test_accuracy)});

  // staleness curves: how similar the metric a node used was to the value
  // the link actually had, per information age, for both forwarding schemes
  CsvWriter sim_csv(out_path(rs, "similarity.csv"),
                    {"scheme", "hop", "mean_similarity", "stderr"});
  for (const auto& [hop, bucket] : trace.similarity.traditional)
    sim_csv.write_row({"traditional", std::to_string(hop),
                       fmt_double(bucket.mean()),
                       fmt_double(bucket.stderr_of_mean())});
  if (trace.similarity.partial.count > 0)
    sim_csv.write_row({"window_depth", std::to_string(sim.rpn),
                       fmt_double(trace.similarity.partial.mean()),
                       fmt_double(trace.similarity.partial.stderr_of_mean())});

  std::cout << "chosen_rpn=" << rep.chosen << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"desk-scale dual-radio mesh simulator and model toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config, graph, dataset, model, out;
  std::string method = "tao";
  std::string selectors = "oracle,fixed_zigbee,fixed_lora,threshold,taocart";
  uint64_t seed_flag = 0;
  bool force = false;
  int jobs = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", config, "scenario config file")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->add_flag("--force", force, "reuse a non-empty output directory");
    sub->add_option("--seed", seed_flag, "override the config seed");
    sub->add_option("--jobs", jobs, "worker threads where supported")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* analytic = app.add_subcommand(
      "analytic", "solve a conflict-graph file and write per-flow throughput");
  analytic->add_option("--graph", graph, "conflict graph description file")
      ->required();
  add_common(analytic, false);

  CLI::App* gen = app.add_subcommand(
      "gen-dataset", "simulate a scenario and write the labeled dataset");
  add_common(gen, true);

  CLI::App* train = app.add_subcommand(
      "train", "fit a radio-selection tree from a dataset csv");
  train->add_option("--dataset", dataset, "labeled dataset csv")->required();
  train->add_option("--method", method, "cart or tao (default tao)");
  add_common(train, false);

  CLI::App* eval = app.add_subcommand(
      "eval", "replay one simulated trace under several selection policies");
  eval->add_option("--selectors", selectors, "comma list of policies");
  eval->add_option("--model", model, "serialized tree for taocart");
  add_common(eval, true);

  CLI::App* rpn = app.add_subcommand(
      "rpn", "accuracy versus path-window depth study");
  add_common(rpn, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit 0, bad usage exits 2
  }

  try {
    CLI::App* parsed_sub = app.get_subcommands().front();
    bool seed_given = parsed_sub->count("--seed") > 0;
    if (analytic->parsed()) return cmd_analytic(graph, out, force);
    if (gen->parsed())
      return cmd_gen_dataset(config, out, force, seed_given, seed_flag);
    if (train->parsed())
      return cmd_train(dataset, method, out, force, seed_given, seed_flag);
    if (eval->parsed())
      return cmd_eval(config, selectors, model, out, force, seed_given,
                      seed_flag, jobs);
    if (rpn->parsed())
      return cmd_rpn(config, out, force, seed_given, seed_flag);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mesonet
