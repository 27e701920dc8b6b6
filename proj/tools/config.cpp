#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nysbench {

namespace {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty()) out.push_back(strip(cur));
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean for " + key + ": " + v);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + key + ": " + v);
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for " + key + ": " + v);
  }
}

}  // namespace

MethodSpec parse_method(const std::string& raw) {
  std::string token;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) token.push_back(c);
  MethodSpec m;
  std::string name = token;
  std::map<std::string, std::string> args;
  auto paren = token.find('(');
  if (paren != std::string::npos) {
    if (token.back() != ')')
      throw ConfigError("config: malformed method token: " + raw);
    name = token.substr(0, paren);
    std::string inner = token.substr(paren + 1, token.size() - paren - 2);
    for (const std::string& part : split_top_level(inner, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config: malformed method argument: " + part);
      args[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  m.name = name;
  if (name == "uniform" || name == "diag2" || name == "detmax_greedy") {
    if (!args.empty())
      throw ConfigError("config: method " + name + " takes no arguments");
  } else if (name == "detmc") {
    for (const auto& [k, v] : args) {
      if (k == "s")
        m.s = parse_double(v, "detmc.s");
      else if (k == "steps")
        m.steps = parse_long(v, "detmc.steps");
      else
        throw ConfigError("config: unknown detmc argument: " + k);
    }
  } else if (name == "detmax_random") {
    for (const auto& [k, v] : args) {
      if (k == "trials")
        m.search_trials = parse_long(v, "detmax_random.trials");
      else
        throw ConfigError("config: unknown detmax_random argument: " + k);
    }
  } else {
    throw ConfigError("config: unknown method: " + name);
  }
  m.label = token;
  return m;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not key = value");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key == "dataset")
      cfg.dataset = val;
    else if (key == "dataset.n")
      cfg.dataset_n = static_cast<int>(parse_long(val, key));
    else if (key == "dataset.cap_z")
      cfg.cap_z = parse_double(val, key);
    else if (key == "dataset.seed")
      cfg.dataset_seed = static_cast<std::uint64_t>(parse_long(val, key));
    else if (key == "dataset.path")
      cfg.dataset_path = val;
    else if (key == "dataset.header")
      cfg.csv_header = parse_bool(val, key);
    else if (key == "dataset.tag")
      cfg.csv_tag = parse_bool(val, key);
    else if (key == "standardize")
      cfg.standardize_points = parse_bool(val, key);
    else if (key == "kernel")
      cfg.kernel = val;
    else if (key == "kernel.sigma")
      cfg.sigma = parse_double(val, key);
    else if (key == "kernel.knn")
      cfg.k_nn = static_cast<int>(parse_long(val, key));
    else if (key == "methods") {
      cfg.methods.clear();
      for (const std::string& tok : split_top_level(val, ','))
        cfg.methods.push_back(parse_method(tok));
    } else if (key == "rank.min")
      cfg.rank_min = static_cast<int>(parse_long(val, key));
    else if (key == "rank.max")
      cfg.rank_max = static_cast<int>(parse_long(val, key));
    else if (key == "trials")
      cfg.trials = parse_long(val, key);
    else if (key == "embed.dim")
      cfg.embed_dim = static_cast<int>(parse_long(val, key));
    else if (key == "embed.m")
      cfg.embed_m = static_cast<int>(parse_long(val, key));
    else if (key == "embed.rank")
      cfg.embed_rank = static_cast<int>(parse_long(val, key));
    else if (key == "embed.trials")
      cfg.embed_trials = parse_long(val, key);
    else if (key == "bounds.n")
      cfg.bounds_n = static_cast<int>(parse_long(val, key));
    else if (key == "bounds.k_max")
      cfg.bounds_k_max = static_cast<int>(parse_long(val, key));
    else if (key == "bounds.instances")
      cfg.bounds_instances = parse_long(val, key);
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(parse_long(val, key));
    else if (key == "out")
      cfg.out = val;
    else
      throw ConfigError("config: unknown key at line " + std::to_string(lineno) +
                        ": " + key);
  }
  return cfg;
}

void validate_error_config(const ExperimentConfig& cfg, int n_points) {
  if (cfg.methods.empty())
    throw ConfigError("config: methods must be non-empty");
  if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
  if (cfg.rank_min < 1 || cfg.rank_min > cfg.rank_max)
    throw ConfigError("config: need 1 <= rank.min <= rank.max");
  if (cfg.rank_max >= n_points)
    throw ConfigError("config: rank.max must be below the point count");
  if (cfg.kernel != "rbf" && cfg.kernel != "knn")
    throw ConfigError("config: kernel must be rbf or knn");
}

void validate_embed_config(const ExperimentConfig& cfg, int n_points) {
  if (cfg.methods.empty())
    throw ConfigError("config: methods must be non-empty");
  if (cfg.embed_trials < 1) throw ConfigError("config: embed.trials must be >= 1");
  if (cfg.embed_dim < 1) throw ConfigError("config: embed.dim must be >= 1");
  if (cfg.embed_m < 1) throw ConfigError("config: embed.m must be >= 1");
  if (cfg.embed_rank <= cfg.embed_dim)
    throw ConfigError("config: embed.rank must exceed embed.dim");
  if (cfg.embed_rank > n_points)
    throw ConfigError("config: embed.rank must not exceed the point count");
  if (cfg.kernel != "rbf")
    throw ConfigError("config: embedding experiment requires the rbf kernel");
}

std::uint64_t trial_stream(const std::string& label, int k, long t) {
  std::string key = label + "|" + std::to_string(k) + "|" + std::to_string(t);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace nysbench
