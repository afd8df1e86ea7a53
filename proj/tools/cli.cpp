#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>

#include "analyses.hpp"
#include "cn4/derived_io.hpp"
#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4::cli {

namespace {

struct Options {
  std::string input;
  std::string kb;
  std::string out;
  std::string delimiter = "tab";
  unsigned threads = 1;
  std::uint64_t seed = 0;

  std::string score = "positive";
  std::string loops = "keep";
  std::string polarity = "both";
  std::string freq = "-10:10";
  std::string relations;

  std::size_t top = 20;
  std::string view = "undirected";
  std::size_t bootstrap = 100;
  std::size_t k = 3;
  std::string algo = "multilevel";
  std::size_t runs = 100;
  std::uint64_t min_support = 300;
  double min_ratio = 0.05;
  std::size_t min_count = 300;
  bool conclusion_positive = false;
  std::string rule;
  bool witnesses = false;
  bool emit = false;
  bool paths = false;
};

std::string env_name(const std::string& flag) {
  std::string e = "CN4_";
  for (char c : flag.substr(2)) e += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return e;
}

template <class T>
CLI::Option* option(CLI::App* app, const std::string& flag, T& var, const std::string& help) {
  return app->add_option(flag, var, help)->envname(env_name(flag))->capture_default_str();
}

CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
  return app->add_flag(name, var, help)->envname(env_name(name));
}

void input_options(CLI::App* app, Options& o, bool derived_allowed = true) {
  option(app, "--input", o.input, "directory holding the table dump");
  if (derived_allowed) option(app, "--kb", o.kb, "directory holding derived files");
  option(app, "--delimiter", o.delimiter, "dump delimiter: tab or comma");
  option(app, "--out", o.out, "report directory (stdout when omitted)");
  option(app, "--threads", o.threads, "worker threads, 0 for all cores");
}

void graph_options(CLI::App* app, Options& o) {
  option(app, "--score", o.score, "all | positive");
  option(app, "--loops", o.loops, "keep | drop");
  option(app, "--polarity", o.polarity, "neg | pos | both");
  option(app, "--freq", o.freq, "frequency range lo:hi");
  option(app, "--relations", o.relations, "comma separated relation names (default all)");
}

void seed_option(CLI::App* app, Options& o) { option(app, "--seed", o.seed, "random seed"); }

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\t") return '\t';
  if (s == "comma" || s == ",") return ',';
  throw ParameterError("delimiter must be tab or comma, got '" + s + "'");
}

std::int64_t parse_int(std::string_view s, const std::string& what) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParameterError("bad " + what + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

// Relation names are resolved once the KB is loaded.
GraphSpec parse_spec(const Options& o) {
  GraphSpec s;
  if (o.score == "all")
    s.score = ScoreFilter::all;
  else if (o.score == "positive" || o.score == "pos")
    s.score = ScoreFilter::positive;
  else
    throw ParameterError("score must be all or positive");
  if (o.loops == "keep")
    s.loops = Loops::keep;
  else if (o.loops == "drop")
    s.loops = Loops::drop;
  else
    throw ParameterError("loops must be keep or drop");
  if (o.polarity == "neg" || o.polarity == "negative")
    s.polarity = Polarity::negative;
  else if (o.polarity == "pos" || o.polarity == "positive")
    s.polarity = Polarity::positive;
  else if (o.polarity == "both")
    s.polarity = Polarity::both;
  else
    throw ParameterError("polarity must be neg, pos or both");
  auto colon = o.freq.find(':');
  if (colon == std::string::npos) throw ParameterError("frequency range must be lo:hi");
  s.frequency.lo = parse_int(std::string_view(o.freq).substr(0, colon), "frequency bound");
  s.frequency.hi = parse_int(std::string_view(o.freq).substr(colon + 1), "frequency bound");
  s.validate();
  return s;
}

void resolve_relations(const Options& o, const ClosedKB& kb, GraphSpec& s) {
  if (o.relations.empty()) return;
  std::vector<Index> rel;
  for (const auto& name : split(o.relations, ',')) rel.push_back(relation_by_name(kb, name));
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  s.relations = std::move(rel);
}

CoreView parse_view(const std::string& v) {
  if (v == "undirected") return CoreView::undirected;
  if (v == "directed") return CoreView::directed;
  if (v == "multigraph" || v == "multi") return CoreView::multigraph;
  throw ParameterError("view must be undirected, directed or multigraph");
}

struct Loaded {
  Source source;
  std::optional<RawTables> tables;
  std::optional<IdRegistry> registry;
};

void check_source(const Options& o) {
  if (o.input.empty() == o.kb.empty())
    throw ParameterError("exactly one of --input and --kb is required");
  if (!o.input.empty()) parse_delimiter(o.delimiter);
}

Loaded load(const Options& o, unsigned threads) {
  Loaded l;
  if (!o.kb.empty()) {
    l.source.kb = load_derived_files(o.kb);
    return l;
  }
  l.tables = load_dump(o.input, parse_delimiter(o.delimiter), threads);
  l.registry = IdRegistry::build(*l.tables);
  auto r = compute_closure(*l.tables, *l.registry);
  l.source.kb = std::move(r.kb);
  l.source.stats = std::move(r.stats);
  return l;
}

void print_bundle(const Bundle& b, std::ostream& out) {
  for (const auto& [name, content] : b.files) {
    if (b.files.size() > 1) out << "==> " << name << " <==\n";
    out << content;
  }
}

Rule parse_rule(const std::string& text, const ClosedKB& kb) {
  auto parts = split(text, ',');
  if (parts.size() != 3) throw ParameterError("rule must be X,Y,Z");
  return {relation_by_name(kb, parts[0]), relation_by_name(kb, parts[1]),
          relation_by_name(kb, parts[2])};
}

MineOptions mine_options(const Options& o) {
  MineOptions m;
  m.min_support = o.min_support;
  m.min_ratio = o.min_ratio;
  m.min_relation_count = o.min_count;
  m.conclusion_positive_polarity = o.conclusion_positive;
  return m;
}

void reproduce(const Loaded& l, const Options& o, unsigned threads, Bundle& b) {
  const ClosedKB& kb = l.source.kb;
  if (l.tables) {
    add_validation(*l.tables, *l.registry, b);
    add_closure(l.source, b);
  }
  if (o.emit) add_derived(kb, b);
  add_edge_tables(kb, b);

  FitOptions fit{o.bootstrap, o.seed, threads};
  add_powerlaw_table(kb, fit, b);
  for (Polarity p : {Polarity::negative, Polarity::positive, Polarity::both}) {
    GraphSpec spec;
    spec.polarity = p;
    std::string tag = "table_" + std::string(to_string(p)) + "_";
    add_degree_stats(kb, spec, o.top, threads, b, tag);
    add_components(kb, spec, b, tag);
    spec.loops = Loops::drop;
    add_cores(kb, spec, CoreView::undirected, b, tag);
  }
  add_clique_table(kb, threads, b);
  {
    GraphSpec spec;
    spec.frequency = {0, 10};
    add_cliques(kb, spec, threads, b, "table_");
  }
  add_percolation_table(kb, threads, b);
  GraphSpec negative;
  negative.polarity = Polarity::negative;
  negative.loops = Loops::drop;
  for (auto algo : {CommunityAlgorithm::label_propagation, CommunityAlgorithm::multilevel})
    add_communities(kb, negative, {algo, o.runs, o.seed, threads}, b, "table_");
  add_rules(kb, mine_options(o), threads, b, "table_");
  if (o.paths) {
    GraphSpec positive;
    positive.polarity = Polarity::positive;
    add_paths(kb, positive, threads, b, "table_positive_");
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closure, graph and rule analyses over a semantic network table dump", "cn4"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "parse the dump and check references");
  input_options(validate, o, false);

  auto* closure = app.add_subcommand("closure", "closure, indicator tables and contradictions");
  input_options(closure, o, false);
  flag(closure, "--emit", o.emit, "also write the derived files");

  auto* graph = app.add_subcommand("graph", "edge counts of the induced graphs");
  input_options(graph, o);
  graph_options(graph, o);

  auto* stats = app.add_subcommand("stats", "degree distributions and clustering");
  input_options(stats, o);
  graph_options(stats, o);
  option(stats, "--top", o.top, "highest-degree concepts to list");

  auto* components = app.add_subcommand("components", "weakly and strongly connected components");
  input_options(components, o);
  graph_options(components, o);

  auto* cores = app.add_subcommand("cores", "core decomposition");
  input_options(cores, o);
  graph_options(cores, o);
  option(cores, "--view", o.view, "undirected | directed | multigraph");

  auto* paths = app.add_subcommand("paths", "shortest path length histograms");
  input_options(paths, o);
  graph_options(paths, o);

  auto* fit = app.add_subcommand("fit", "discrete power-law fit of the multigraph degrees");
  input_options(fit, o);
  graph_options(fit, o);
  seed_option(fit, o);
  option(fit, "--bootstrap", o.bootstrap, "bootstrap replicates for the p-value");

  auto* cliques = app.add_subcommand("cliques", "maximal cliques");
  input_options(cliques, o);
  graph_options(cliques, o);

  auto* percolate = app.add_subcommand("percolate", "k-clique percolation communities");
  input_options(percolate, o);
  graph_options(percolate, o);
  option(percolate, "--k", o.k, "clique size, at least 3");

  auto* communities = app.add_subcommand("communities", "label propagation or multilevel");
  input_options(communities, o);
  graph_options(communities, o);
  seed_option(communities, o);
  option(communities, "--algo", o.algo, "lp | multilevel");
  option(communities, "--runs", o.runs, "runs per subgraph");

  auto* mine = app.add_subcommand("mine", "frequent relation rules");
  input_options(mine, o);
  option(mine, "--min-support", o.min_support, "minimum support");
  option(mine, "--min-ratio", o.min_ratio, "minimum success rate");
  option(mine, "--min-count", o.min_count, "positive-score assertions a relation needs");
  flag(mine, "--conclusion-positive-polarity", o.conclusion_positive,
       "conclusions must also have positive polarity");
  option(mine, "--rule", o.rule, "report one rule X,Y,Z instead of mining");
  flag(mine, "--witnesses", o.witnesses, "with --rule, list every support triple");

  auto* repro = app.add_subcommand("reproduce", "every report table in one run");
  input_options(repro, o);
  seed_option(repro, o);
  option(repro, "--runs", o.runs, "community runs per subgraph");
  option(repro, "--bootstrap", o.bootstrap, "bootstrap replicates for the p-value");
  option(repro, "--top", o.top, "highest-degree concepts to list");
  option(repro, "--min-support", o.min_support, "minimum rule support");
  option(repro, "--min-ratio", o.min_ratio, "minimum rule success rate");
  option(repro, "--min-count", o.min_count, "positive-score assertions a relation needs");
  flag(repro, "--emit", o.emit, "also write the derived files");
  flag(repro, "--paths", o.paths, "include all-pairs path histograms (slow on full data)");

  std::vector<const char*> argv{"cn4"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    // Validate every flag before touching data.
    check_source(o);
    GraphSpec spec = parse_spec(o);
    CoreView view = parse_view(o.view);
    CommunityAlgorithm algo = parse_community_algorithm(o.algo);
    if (o.k < 3) throw ParameterError("clique percolation needs k >= 3");
    if (o.runs < 1) throw ParameterError("runs must be at least 1");
    if (o.min_ratio < 0 || o.min_ratio > 1) throw ParameterError("min ratio must lie in [0, 1]");
    if (o.witnesses && o.rule.empty()) throw ParameterError("--witnesses needs --rule");
    unsigned threads = effective_threads(o.threads);

    Loaded l = load(o, threads);
    const ClosedKB& kb = l.source.kb;
    resolve_relations(o, kb, spec);

    Bundle b;
    b.command = cmd->get_name();
    b.seed = o.seed;
    const std::string name = cmd->get_name();
    if (name == "validate") {
      add_validation(*l.tables, *l.registry, b);
    } else if (name == "closure") {
      add_closure(l.source, b);
      if (o.emit) add_derived(kb, b);
    } else if (name == "graph") {
      add_graph_summary(kb, spec, b);
      add_edge_tables(kb, b);
    } else if (name == "stats") {
      add_degree_stats(kb, spec, o.top, threads, b);
    } else if (name == "components") {
      add_components(kb, spec, b);
    } else if (name == "cores") {
      add_cores(kb, spec, view, b);
    } else if (name == "paths") {
      add_paths(kb, spec, threads, b);
    } else if (name == "fit") {
      add_fit(kb, spec, {o.bootstrap, o.seed, threads}, b);
    } else if (name == "cliques") {
      add_cliques(kb, spec, threads, b);
    } else if (name == "percolate") {
      add_percolation(kb, spec, o.k, threads, b);
    } else if (name == "communities") {
      add_communities(kb, spec, {algo, o.runs, o.seed, threads}, b);
    } else if (name == "mine") {
      if (o.rule.empty())
        add_rules(kb, mine_options(o), threads, b);
      else
        add_rule(kb, parse_rule(o.rule, kb), o.conclusion_positive, o.witnesses, b);
    } else if (name == "reproduce") {
      if (o.out.empty()) throw ParameterError("reproduce needs --out");
      reproduce(l, o, threads, b);
    }

    if (o.out.empty())
      print_bundle(b, out);
    else
      emit_report(b, o.out);
    return 0;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n" << cmd->help();
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cn4::cli
