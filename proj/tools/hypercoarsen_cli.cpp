#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hypercoarsen/hypercoarsen.hpp"

namespace hc = hypercoarsen;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string out_dir = ".";
  std::string clusters_path;  // eval only
  std::size_t rho = 3;
  std::size_t levels = 3;
  std::string delta = "q:0.5";
  std::uint64_t seed = 42;
  bool no_local = false;
  std::size_t max_clique = 300;
  bool dump_pool = false;
};

hc::ContractionPolicy parse_delta(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    double v = 0.0;
    if (!hc::detail::parse_double(spec.substr(colon + 1), v))
      throw std::invalid_argument("invalid --delta value '" + spec + "'");
    if (kind == "abs") return hc::ContractionPolicy::absolute(v);
    if (kind == "q") return hc::ContractionPolicy::quantile(v);
  }
  throw std::invalid_argument("invalid --delta '" + spec + "' (expected abs:x or q:y)");
}

// Every artifact starts with this header so a run can be reproduced from any
// of its outputs.
void write_provenance(std::ostream& out, const RunConfig& cfg) {
  out << "% hypercoarsen " << cfg.command << '\n';
  out << "% input=" << cfg.input << " out=" << cfg.out_dir;
  if (!cfg.clusters_path.empty()) out << " clusters=" << cfg.clusters_path;
  out << " rho=" << cfg.rho << " levels=" << cfg.levels << " delta=" << cfg.delta
      << " seed=" << cfg.seed << " local=" << (cfg.no_local ? "off" : "on")
      << " max-clique=" << cfg.max_clique << '\n';
}

std::ofstream open_artifact(const RunConfig& cfg, const std::string& name) {
  const fs::path path = fs::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  write_provenance(out, cfg);
  return out;
}

hc::Hypergraph load_input(const RunConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file " + cfg.input);
  hc::Hypergraph h = hc::parse_hgr(in);
  if (h.dropped_singleton_edges() > 0)
    std::cerr << "warning: dropped " << h.dropped_singleton_edges()
              << " hyperedge(s) with fewer than two distinct pins\n";
  return h;
}

void dump_pool(const hc::EmbeddingPool& pool, const RunConfig& cfg) {
  auto out = open_artifact(cfg, "pool.txt");
  if (pool.empty()) return;
  const std::size_t n = pool.vectors[0].size();
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i > 0) out << '\t';
      out << hc::detail::format_double(pool.vectors[i][row]);
    }
    out << '\n';
  }
}

hc::CoarsenConfig to_coarsen_config(const RunConfig& cfg) {
  hc::CoarsenConfig c;
  c.levels = cfg.levels;
  c.rho = cfg.rho;
  c.seed = cfg.seed;
  c.policy = parse_delta(cfg.delta);
  c.local_clustering = !cfg.no_local;
  c.max_clique_cardinality = cfg.max_clique;
  return c;
}

int run_coarsen(const RunConfig& cfg) {
  const hc::Hypergraph h = load_input(cfg);
  const hc::CoarseningHierarchy hier = hc::coarsen_multilevel(h, to_coarsen_config(cfg));

  {
    auto out = open_artifact(cfg, "clusters.txt");
    hc::write_clusters(hier.composed_clusters, out);
  }
  {
    auto out = open_artifact(cfg, "coarse.hgr");
    const hc::Hypergraph& coarse = hier.levels.empty() ? h : hier.levels.back().coarse;
    hc::write_hgr(coarse, out, /*include_weights=*/true);
  }
  {
    auto out = open_artifact(cfg, "levels.tsv");
    out << "level\tfine_vertices\tfine_edges\tcoarse_vertices\tcoarse_edges\tcontracted\tnr\t"
           "seeds_found\tseeds_merged\tseeds_singleton\n";
    const double n0 = static_cast<double>(h.num_vertices());
    for (std::size_t l = 0; l < hier.levels.size(); ++l) {
      const auto& lv = hier.levels[l];
      out << l << '\t' << lv.fine.num_vertices() << '\t' << lv.fine.num_edges() << '\t'
          << lv.coarse.num_vertices() << '\t' << lv.coarse.num_edges() << '\t'
          << lv.contracted_edges.size() << '\t'
          << hc::detail::format_double(1.0 - static_cast<double>(lv.coarse.num_vertices()) / n0)
          << '\t' << lv.merge.seeds_found << '\t' << lv.merge.seeds_merged << '\t'
          << lv.merge.seeds_left_singleton << '\n';
    }
  }
  const hc::EvaluationReport rep = hc::evaluate_clustering(h, hier.composed_clusters);
  {
    auto out = open_artifact(cfg, "report.tsv");
    hc::write_report_tsv(rep, out);
  }
  if (cfg.dump_pool) {
    // Level-0 pool, same seed derivation the pipeline uses.
    std::mt19937_64 seeder(cfg.seed);
    dump_pool(hc::build_embedding_pool(h, cfg.rho, seeder(), {cfg.max_clique}), cfg);
  }
  std::cout << "coarsened " << h.num_vertices() << " -> "
            << hier.composed_clusters.num_clusters << " vertices over " << hier.levels.size()
            << " level(s)\n";
  hc::print_report(rep, std::cout);
  return 0;
}

int run_eval(const RunConfig& cfg) {
  const hc::Hypergraph h = load_input(cfg);
  std::ifstream in(cfg.clusters_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cluster file " + cfg.clusters_path);
  const hc::ClusterAssignment a = hc::read_clusters(in, h.num_vertices());
  const hc::EvaluationReport rep = hc::evaluate_clustering(h, a);
  {
    auto out = open_artifact(cfg, "report.tsv");
    hc::write_report_tsv(rep, out);
  }
  hc::print_report(rep, std::cout);
  return 0;
}

hc::ResistanceVector level0_resistances(const hc::Hypergraph& h, const RunConfig& cfg,
                                        bool want_pool_dump) {
  std::mt19937_64 seeder(cfg.seed);
  const hc::EmbeddingPool pool = hc::build_embedding_pool(h, cfg.rho, seeder(), {cfg.max_clique});
  if (pool.empty()) throw std::runtime_error("empty embedding pool: degenerate hypergraph");
  if (want_pool_dump) dump_pool(pool, cfg);
  return hc::estimate_resistances(h, pool);
}

int run_resist(const RunConfig& cfg) {
  const hc::Hypergraph h = load_input(cfg);
  const hc::ResistanceVector rv = level0_resistances(h, cfg, cfg.dump_pool);
  auto out = open_artifact(cfg, "resistances.tsv");
  out << "edge\tresistance\n";
  for (hc::EdgeId e = 0; e < h.num_edges(); ++e)
    out << e << '\t' << hc::detail::format_double(rv.r[e]) << '\n';
  std::cout << "estimated resistances for " << h.num_edges() << " hyperedge(s)\n";
  return 0;
}

int run_rate(const RunConfig& cfg) {
  const hc::Hypergraph h = load_input(cfg);
  const hc::ResistanceVector rv = level0_resistances(h, cfg, cfg.dump_pool);
  const auto rows = hc::rating_export(h, rv);
  std::size_t guarded = 0;
  for (const auto& row : rows) guarded += row.guarded ? 1 : 0;
  auto out = open_artifact(cfg, "rating.tsv");
  out << "% guarded_denominators=" << guarded << '\n';
  out << "edge\tweight\tresistance\tdenominator\n";
  for (const auto& row : rows)
    out << row.edge << '\t' << hc::detail::format_double(row.weight) << '\t'
        << hc::detail::format_double(row.resistance) << '\t'
        << hc::detail::format_double(row.denominator) << '\n';
  std::cout << "exported rating data for " << rows.size() << " hyperedge(s), " << guarded
            << " guarded\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral hypergraph coarsening via Krylov-subspace effective resistances"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub, bool with_pipeline_opts) {
    sub->add_option("--input", cfg.input, "input hypergraph (.hgr)")->required();
    sub->add_option("--out", cfg.out_dir, "output directory (created if missing)");
    if (with_pipeline_opts) {
      sub->add_option("--rho", cfg.rho, "Krylov order per expansion (default 3)");
      sub->add_option("--seed", cfg.seed, "RNG seed (default 42)");
      sub->add_option("--max-clique", cfg.max_clique,
                      "largest hyperedge expanded into a clique (default 300)");
      sub->add_flag("--dump-pool", cfg.dump_pool, "write the embedding pool to pool.txt");
    }
  };

  CLI::App* coarsen = app.add_subcommand("coarsen", "multilevel resistance coarsening");
  add_common(coarsen, true);
  coarsen->add_option("--levels", cfg.levels, "coarsening levels (default 3)");
  coarsen->add_option("--delta", cfg.delta, "contraction threshold: abs:x or q:y (default q:0.5)");
  coarsen->add_flag("--no-local", cfg.no_local, "disable resistance-based local clustering");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a cluster file against a hypergraph");
  add_common(eval, false);
  eval->add_option("--clusters", cfg.clusters_path, "cluster file (one id per line)")->required();

  CLI::App* resist = app.add_subcommand("resist", "estimate hyperedge effective resistances");
  add_common(resist, true);

  CLI::App* rate = app.add_subcommand("rate", "export rating-function data per hyperedge");
  add_common(rate, true);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
    if (coarsen->parsed()) return run_coarsen(cfg);
    if (eval->parsed()) return run_eval(cfg);
    if (resist->parsed()) return run_resist(cfg);
    if (rate->parsed()) return run_rate(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
