#include "partmodes_cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "partmodes/engine.hpp"
#include "partmodes/graph.hpp"
#include "partmodes/information.hpp"
#include "partmodes/objective.hpp"
#include "partmodes/sampler.hpp"
#include "partmodes/serialize.hpp"

namespace partmodes::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Write to a sibling temporary and rename, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

struct GenerateOptions {
  std::string kind;
  std::size_t n = 0, q = 0, cliques = 0, size = 0;
  double p_in = 0.0, p_out = 0.0, p_s = 0.0, p_m = 0.0, p_b = 0.0;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  std::string out, truth;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  GeneratedGraph g;
  if (o.kind == "planted") {
    g = planted_partition(o.n, o.q, o.p_in, o.p_out, o.seed);
  } else if (o.kind == "sbm") {
    g = sbm(o.sizes, MixingMatrix::nested(o.p_s, o.p_m, o.p_b), o.seed);
  } else {
    g = ring_of_cliques(o.cliques, o.size);
  }
  write_edge_list(g.graph, o.out);
  write_partitions(std::vector<Partition>{g.truth}, o.truth.empty() ? o.out + ".truth" : o.truth);
  out << "N " << g.graph.num_nodes() << "\nedges " << g.graph.num_edges() << "\n";
  return 0;
}

struct SampleOptions {
  std::string graph, out;
  McmcParams params;
};

int cmd_sample(const SampleOptions& o, std::ostream& out) {
  const Graph graph = read_edge_list(o.graph);
  const PartitionSet set = mcmc_sample(graph, o.params);
  write_atomic(o.out, format_partitions(set.partitions()));
  out << "wrote " << set.size() << " partitions of " << set.num_nodes() << " nodes\n";
  return 0;
}

struct PerturbOptions {
  std::string spec, out, truth;
};

int cmd_perturb(const PerturbOptions& o, std::ostream& out) {
  const PerturbedEnsemble ens = perturb_ensemble(parse_perturbation_spec(read_file(o.spec)));
  write_atomic(o.out, format_partitions(ens.set.partitions()));
  if (!o.truth.empty()) {
    std::string lines;
    for (std::size_t b : ens.base_of) lines += std::to_string(b) + "\n";
    write_atomic(o.truth, lines);
  }
  out << "wrote " << ens.set.size() << " partitions of " << ens.set.num_nodes() << " nodes\n";
  return 0;
}

struct ClusterOptions {
  std::string partitions, out, format = "text", modes_dir;
  EngineParams params;
  double exact_threshold = kDefaultExactThreshold;
};

// Per node and mode, the fraction of the mode's cluster whose label at that
// node maps onto the mode's label, each community of a member being mapped to
// the mode community it overlaps most.
std::vector<std::vector<double>> agreement(const PartitionSet& set, const ClusteringResult& r) {
  const std::size_t n = set.num_nodes();
  const auto members = r.clustering.members();
  std::vector<std::vector<double>> table(n, std::vector<double>(r.modes.size(), 0.0));
  for (std::size_t k = 0; k < r.modes.size(); ++k) {
    const Partition& mode = r.modes[k];
    for (std::size_t p : members[k]) {
      const ContingencyTable t = contingency_table(mode, set[p]);
      std::vector<Label> best(t.cols, 0);
      for (std::size_t s = 0; s < t.cols; ++s) {
        for (std::size_t row = 1; row < t.rows; ++row) {
          if (t(row, s) > t(static_cast<std::size_t>(best[s]), s)) best[s] = static_cast<Label>(row);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (best[static_cast<std::size_t>(set[p][i])] == mode[i]) table[i][k] += 1.0;
      }
    }
    for (std::size_t i = 0; i < n; ++i) table[i][k] /= static_cast<double>(members[k].size());
  }
  return table;
}

void write_modes(const PartitionSet& set, const ClusteringResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t k = 0; k < r.modes.size(); ++k) {
    write_atomic(dir / ("mode_" + std::to_string(k) + ".txt"), format_partitions({r.modes[k]}));
  }
  std::string tsv = "node";
  for (std::size_t k = 0; k < r.modes.size(); ++k) tsv += "\tmode_" + std::to_string(k);
  tsv += "\n";
  const auto table = agreement(set, r);
  for (std::size_t i = 0; i < table.size(); ++i) {
    tsv += std::to_string(i);
    for (double v : table[i]) tsv += "\t" + fixed(v, 4);
    tsv += "\n";
  }
  write_atomic(dir / "agreement.tsv", tsv);
}

int cmd_cluster(ClusterOptions o, std::ostream& out) {
  o.params.omega.exact_threshold = o.exact_threshold;
  const PartitionSet set = load_partitions(o.partitions);
  const ClusteringResult result = run(set, o.params);
  const std::string json = to_json(result);
  if (!o.out.empty()) write_atomic(o.out, json);
  if (!o.modes_dir.empty()) write_modes(set, result, o.modes_dir);
  if (o.format == "json") {
    out << json;
  } else {
    out << "K " << result.clustering.num_clusters() << "\nweights";
    for (double w : result.weights) out << ' ' << fixed(w, 4);
    out << "\ntotal " << fixed(result.breakdown.total) << " bits\n";
  }
  return 0;
}

struct DescribeOptions {
  std::string partitions, clustering, format = "text";
  double exact_threshold = kDefaultExactThreshold;
  std::optional<double> lambda;
};

int cmd_describe(const DescribeOptions& o, std::ostream& out) {
  const PartitionSet set = load_partitions(o.partitions);
  const StoredClustering stored = parse_clustering_json(read_file(o.clustering));
  if (stored.clustering.assignment.size() != set.size()) {
    throw std::invalid_argument("clustering covers " + std::to_string(stored.clustering.assignment.size()) +
                                " partitions but the ensemble has " + std::to_string(set.size()));
  }
  OmegaOptions omega;
  omega.exact_threshold = o.exact_threshold;
  const double lambda = o.lambda.value_or(stored.lambda);
  const ObjectiveBreakdown b = description_length(set, stored.clustering, lambda, omega);
  const EncodingLength l = full_description_length(set, stored.clustering, omega);
  if (o.format == "json") {
    out << "{\"objective\": " << to_json(b) << ", \"encoding\": " << to_json(l) << "}\n";
    return 0;
  }
  out << "mode_entropy   " << fixed(b.mode_entropy) << "\n"
      << "cluster_labels " << fixed(b.cluster_labels) << "\n"
      << "conditional    " << fixed(b.conditional) << "\n"
      << "penalty        " << fixed(b.penalty) << "\n"
      << "total          " << fixed(b.total) << "\n"
      << "L1             " << fixed(l.l1) << "\n"
      << "L2             " << fixed(l.l2) << "\n"
      << "L3             " << fixed(l.l3) << "\n"
      << "L4             " << fixed(l.l4) << "\n"
      << "L_total        " << fixed(l.total) << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representative partitions of community-detection ensembles", "partmodes"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a benchmark graph and its planted partition");
  generate->add_option("kind", gen.kind, "Generator")->required()->check(CLI::IsMember({"planted", "sbm", "cliques"}));
  generate->add_option("--n", gen.n, "Nodes (planted)");
  generate->add_option("--q", gen.q, "Groups (planted)");
  generate->add_option("--pin", gen.p_in, "Within-group edge probability (planted)");
  generate->add_option("--pout", gen.p_out, "Between-group edge probability (planted)");
  generate->add_option("--sizes", gen.sizes, "Group sizes (sbm)")->delimiter(',');
  generate->add_option("--ps", gen.p_s, "Diagonal probability (sbm)");
  generate->add_option("--pm", gen.p_m, "Probability between groups 0 and 1 (sbm)");
  generate->add_option("--pb", gen.p_b, "Probability between group 2 and the others (sbm)");
  generate->add_option("--cliques", gen.cliques, "Number of cliques (cliques)");
  generate->add_option("--size", gen.size, "Clique size (cliques)");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen.out, "Edge list output")->required();
  generate->add_option("--truth", gen.truth, "Ground-truth partition output (default <out>.truth)");
  generate->callback([&] {
    auto need = [&](const char* flag) {
      if (generate->count(flag) == 0) throw CLI::RequiredError(std::string(flag) + " (required by " + gen.kind + ")");
    };
    if (gen.kind == "planted") {
      for (const char* f : {"--n", "--q", "--pin", "--pout"}) need(f);
    } else if (gen.kind == "sbm") {
      for (const char* f : {"--sizes", "--ps", "--pm", "--pb"}) need(f);
    } else {
      for (const char* f : {"--cliques", "--size"}) need(f);
    }
  });

  SampleOptions smp;
  auto* sample = app.add_subcommand("sample", "Draw partitions with the built-in Metropolis sampler");
  sample->add_option("--graph", smp.graph, "Edge list")->required();
  sample->add_option("--samples", smp.params.samples, "Number of partitions S")->required();
  sample->add_option("--sweeps", smp.params.sweeps_between, "Sweeps between recorded samples");
  sample->add_option("--beta", smp.params.beta, "Inverse temperature");
  sample->add_option("--qmax", smp.params.q_max, "Maximum number of communities");
  sample->add_option("--seed", smp.params.seed, "Random seed");
  sample->add_option("--out", smp.out, "Partition output")->required();

  PerturbOptions per;
  auto* perturb = app.add_subcommand("perturb", "Draw a perturbation ensemble from a JSON spec");
  perturb->add_option("--spec", per.spec, "Perturbation spec (JSON)")->required();
  perturb->add_option("--out", per.out, "Partition output")->required();
  perturb->add_option("--truth", per.truth, "Generating base index per sample");

  ClusterOptions clu;
  auto* cluster = app.add_subcommand("cluster", "Find representative partitions");
  cluster->add_option("partitions", clu.partitions, "Partition file")->required();
  cluster->add_option("--lambda", clu.params.lambda, "Penalty per cluster")->capture_default_str();
  cluster->add_option("--k0", clu.params.k0, "Initial number of clusters")->capture_default_str();
  cluster->add_option("--sample-size", clu.params.mode_sample_size, "Mode-search sample size")->capture_default_str();
  cluster->add_option("--patience", clu.params.patience, "Consecutive rejections before stopping")
      ->capture_default_str();
  cluster->add_option("--seed", clu.params.seed, "Random seed")->capture_default_str();
  cluster->add_option("--exact-omega-threshold", clu.exact_threshold, "Largest exact table-count cost")
      ->capture_default_str();
  cluster->add_option("--restarts", clu.params.restarts, "Independent runs")->capture_default_str();
  cluster->add_option("--max-moves", clu.params.max_moves, "Cap on proposals per run (0: none)");
  cluster->add_option("--format", clu.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cluster->add_option("--out", clu.out, "Result JSON");
  cluster->add_option("--modes-dir", clu.modes_dir, "Directory for mode partitions and agreement.tsv");

  DescribeOptions des;
  auto* describe = app.add_subcommand("describe", "Evaluate the description length of a clustering");
  describe->add_option("partitions", des.partitions, "Partition file")->required();
  describe->add_option("clustering", des.clustering, "Result JSON from cluster")->required();
  describe->add_option("--lambda", des.lambda, "Override the stored penalty");
  describe->add_option("--exact-omega-threshold", des.exact_threshold, "Largest exact table-count cost");
  describe->add_option("--format", des.format, "Report format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*sample) return cmd_sample(smp, out);
    if (*perturb) return cmd_perturb(per, out);
    if (*cluster) return cmd_cluster(clu, out);
    return cmd_describe(des, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace partmodes::cli
