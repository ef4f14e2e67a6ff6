#include "patmine/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "patmine/error.hpp"
#include "patmine/fst.hpp"
#include "patmine/match.hpp"
#include "patmine/mine.hpp"
#include "patmine/report.hpp"
#include "patmine/sequence_db.hpp"

namespace patmine::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Inputs {
  std::string data_text;
  std::string hierarchy_text;
  Dataset dataset;
};

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  if (!config.data_path.empty()) in.data_text = read_file(config.data_path);
  if (config.hierarchy_path) in.hierarchy_text = read_file(*config.hierarchy_path);
  in.dataset = load_dataset(in.data_text, in.hierarchy_text);
  return in;
}

// Writes to the configured output file, or to `out` when none is given.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (!config.output_path) {
    out << text;
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + *config.output_path + "'");
  file << text;
}

MatchMode mode_of(const RunConfig& config) { return config.partial ? MatchMode::Partial : MatchMode::Full; }

CFst compile_checked(const RunConfig& config, const Dictionary& dict, std::ostream& err) {
  for (const auto& gid : unknown_items(parse_pattern(config.pattern), dict)) {
    err << "warning: pattern item '" << gid << "' occurs in neither the data nor the hierarchy\n";
  }
  return compile_pattern(config.pattern, dict, mode_of(config));
}

int cmd_mine(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto algorithm = parse_algorithm(config.algorithm);
  if (!algorithm) {
    err << "error: unknown algorithm '" << config.algorithm << "' (expected naive, count or dfs)\n";
    return kUsage;
  }
  if (!config.sigma || *config.sigma < 1) {
    err << "error: --sigma must be a positive integer\n";
    return kUsage;
  }
  auto in = load_inputs(config);
  const auto& ds = in.dataset;
  CFst fst = compile_checked(config, ds.dict, err);
  MiningOptions options;
  options.mode = mode_of(config);
  PatternSet patterns = mine(*algorithm, ds.db, fst, ds.dict, *config.sigma, options);

  std::ostringstream text;
  text << "# pattern=" << config.pattern << " sigma=" << *config.sigma
       << " algorithm=" << to_string(*algorithm) << " partial=" << (config.partial ? 1 : 0)
       << " dataset=" << fnv1a_hex(in.data_text + '\0' + in.hierarchy_text) << '\n';
  text << format_patterns(patterns, ds.dict);
  emit(config, out, text.str());
  return kSuccess;
}

int cmd_match(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto in = load_inputs(config);
  const auto& ds = in.dataset;
  CFst fst = compile_checked(config, ds.dict, err);
  std::ostringstream text;
  for (std::size_t i = 0; i < ds.db.size(); ++i) {
    auto generated = config.sigma
                         ? generate_filtered(fst, ds.db[i], ds.dict, *config.sigma, mode_of(config))
                         : generate(fst, ds.db[i], ds.dict, mode_of(config));
    text << format_generated(generated, i + 1, ds.dict);
  }
  emit(config, out, text.str());
  return kSuccess;
}

int cmd_compile(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto in = load_inputs(config);
  CFst fst = compile_checked(config, in.dataset.dict, err);
  check_output_restriction(fst, in.dataset.dict);
  if (config.dot_path) {
    auto dot = to_dot(fst, in.dataset.dict);
    if (*config.dot_path == "-") {
      out << dot;
    } else {
      std::ofstream file(*config.dot_path, std::ios::binary);
      if (!file) throw DataError("cannot write '" + *config.dot_path + "'");
      file << dot;
    }
    if (!config.output_path) return kSuccess;
  }
  emit(config, out, to_text(fst, in.dataset.dict));
  return kSuccess;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream&) {
  auto in = load_inputs(config);
  const auto& dict = in.dataset.dict;
  auto s = stats(in.dataset.db);
  std::ostringstream text;
  text.setf(std::ios::fixed);
  text.precision(1);
  text << "sequences\t" << s.count << '\n'
       << "avg_length\t" << s.average_length << '\n'
       << "max_length\t" << s.max_length << '\n'
       << "total_items\t" << s.total_items << '\n'
       << "distinct_items\t" << s.distinct_items << '\n';
  if (config.hierarchy_path) {
    std::size_t leaves = 0, intermediate = 0, roots = 0, depth = 0;
    // Number of items on the longest chain from an item to a root.
    std::vector<std::size_t> levels(dict.size() + 1, 0);
    std::function<std::size_t(ItemId)> level = [&](ItemId id) -> std::size_t {
      if (levels[id]) return levels[id];
      std::size_t best = 0;
      for (ItemId p : dict.parents(id)) best = std::max(best, level(p));
      return levels[id] = best + 1;
    };
    for (ItemId id = 1; id <= dict.size(); ++id) {
      bool has_children = !dict.children(id).empty();
      bool has_parents = !dict.parents(id).empty();
      leaves += !has_children;
      roots += !has_parents;
      intermediate += has_children && has_parents;
      depth = std::max(depth, level(id));
    }
    text << "hierarchy_items\t" << dict.size() << '\n'
         << "leaf_items\t" << leaves << '\n'
         << "intermediate_items\t" << intermediate << '\n'
         << "root_items\t" << roots << '\n'
         << "max_depth\t" << depth << '\n';
  }
  emit(config, out, text.str());
  return kSuccess;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "mine") return cmd_mine(config, out, err);
    if (config.command == "match") return cmd_match(config, out, err);
    if (config.command == "compile") return cmd_compile(config, out, err);
    if (config.command == "stats") return cmd_stats(config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kUsage;
  } catch (const PatternError& e) {
    err << "pattern error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violation: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequent sequence mining under pattern-expression constraints", "patmine"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_hierarchy = [&](CLI::App* cmd) {
    cmd->add_option("--hierarchy", config.hierarchy_path, "child<TAB>parent edge file");
  };
  auto add_pattern = [&](CLI::App* cmd) {
    cmd->add_option("--pattern", config.pattern, "pattern expression")->required();
  };

  auto* mine_cmd = app.add_subcommand("mine", "mine frequent sequences");
  mine_cmd->add_option("--data", config.data_path, "sequence file")->required();
  add_hierarchy(mine_cmd);
  add_pattern(mine_cmd);
  mine_cmd->add_option("--sigma", config.sigma, "minimum support (>= 1)")->required();
  mine_cmd->add_option("--algorithm", config.algorithm, "naive | count | dfs")
      ->check(CLI::IsMember({"naive", "count", "dfs"}));
  mine_cmd->add_flag("--partial", config.partial, "match anywhere in the sequence");
  mine_cmd->add_option("--output", config.output_path, "result file (default: stdout)");

  auto* match_cmd = app.add_subcommand("match", "print generated subsequences per input line");
  match_cmd->add_option("--input,--data", config.data_path, "sequence file")->required();
  add_hierarchy(match_cmd);
  add_pattern(match_cmd);
  match_cmd->add_flag("--partial", config.partial, "match anywhere in the sequence");
  match_cmd->add_option("--sigma", config.sigma, "drop outputs containing items below this frequency");
  match_cmd->add_option("--output", config.output_path, "result file (default: stdout)");

  auto* compile_cmd = app.add_subcommand("compile", "compile a pattern to a compressed FST");
  add_pattern(compile_cmd);
  add_hierarchy(compile_cmd);
  compile_cmd->add_option("--data", config.data_path, "sequence file (vocabulary and ids)");
  compile_cmd->add_flag("--partial", config.partial, "compile for partial matching");
  compile_cmd->add_option("--dot", config.dot_path, "write Graphviz output ('-' for stdout)");
  compile_cmd->add_option("--output", config.output_path, "transition dump (default: stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "print dataset statistics");
  stats_cmd->add_option("--data", config.data_path, "sequence file")->required();
  add_hierarchy(stats_cmd);
  stats_cmd->add_option("--output", config.output_path, "result file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kSuccess : kUsage;
  }
  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  return execute(config, out, err);
}

}  // namespace patmine::cli
