#include "slabsens/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "slabsens/bvp.hpp"

namespace slabsens {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ConfigError("config: bad number for '" + key + "': " + text);
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '-')
    throw ConfigError("config: bad unsigned integer for '" + key +
                      "': " + text);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size())
    throw ConfigError("config: bad unsigned integer for '" + key +
                      "': " + text);
  return v;
}

std::vector<double> parse_list(const std::string& key,
                               const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(key, item));
  return out;
}

std::size_t sigma_index(const std::string& suffix) {
  if (suffix == "sigma_a_rel") return 0;
  if (suffix == "diff_coeff_rel") return 1;
  if (suffix == "source_q_rel") return 2;
  if (suffix == "sigma_d_rel") return 3;
  throw ConfigError("config: unknown case parameter '" + suffix + "'");
}

} // namespace

OutputFormat parse_format(const std::string& text) {
  const std::string t = trim(text);
  if (t == "tsv") return OutputFormat::tsv;
  if (t == "json") return OutputFormat::json;
  if (t == "both") return OutputFormat::both;
  throw ConfigError("config: unknown output format '" + t +
                    "' (expected tsv, json, or both)");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<unsigned long long, UncertaintyCase> cases; // ordered by index

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "params.sigma_a")
      cfg.base.sigma_a = parse_double(key, value);
    else if (key == "params.diff_coeff")
      cfg.base.diff_coeff = parse_double(key, value);
    else if (key == "params.source_q")
      cfg.base.source_q = parse_double(key, value);
    else if (key == "params.sigma_d")
      cfg.base.sigma_d = parse_double(key, value);
    else if (key == "params.half_thickness_a")
      cfg.base.half_thickness_a = parse_double(key, value);
    else if (key == "detectors")
      cfg.detectors = parse_list(key, value);
    else if (key == "grid.n_nodes")
      cfg.n_nodes = static_cast<std::size_t>(parse_unsigned(key, value));
    else if (key == "tolerance.fd_first")
      cfg.tolerances.fd_first = parse_double(key, value);
    else if (key == "tolerance.fd_second")
      cfg.tolerances.fd_second = parse_double(key, value);
    else if (key == "tolerance.quad_vs_closed")
      cfg.tolerances.quad_vs_closed = parse_double(key, value);
    else if (key == "tolerance.symmetry_quad")
      cfg.tolerances.symmetry_quad = parse_double(key, value);
    else if (key == "tolerance.symmetry_closed")
      cfg.tolerances.symmetry_closed = parse_double(key, value);
    else if (key == "tolerance.duality")
      cfg.tolerances.duality = parse_double(key, value);
    else if (key == "tolerance.convergence_order")
      cfg.tolerances.convergence_order = parse_double(key, value);
    else if (key == "mc.seed")
      cfg.seed = parse_unsigned(key, value);
    else if (key == "mc.samples")
      cfg.mc_samples = static_cast<std::size_t>(parse_unsigned(key, value));
    else if (key == "output.dir")
      cfg.out_dir = value;
    else if (key == "output.format")
      cfg.format = parse_format(value);
    else if (key.rfind("case.", 0) == 0) {
      const std::size_t dot = key.find('.', 5);
      if (dot == std::string::npos)
        throw ConfigError("config: malformed case key '" + key + "'");
      const unsigned long long idx = parse_unsigned(key, key.substr(5, dot - 5));
      auto [it, inserted] = cases.try_emplace(idx);
      if (inserted) it->second.name = "case" + std::to_string(idx);
      it->second.sigma_rel[sigma_index(key.substr(dot + 1))] =
          parse_double(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }

  if (!cases.empty()) {
    cfg.cases.clear();
    for (auto& [idx, c] : cases) cfg.cases.push_back(std::move(c));
  }
  for (const auto& c : cfg.cases)
    for (double s : c.sigma_rel)
      if (!(s >= 0.0))
        throw ConfigError("config: negative sigma in " + c.name);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate_for_run(const RunConfig& cfg) {
  if (cfg.detectors.empty())
    throw ConfigError("config: at least one detector position is required");
  Grid grid = [&] {
    try {
      return Grid(cfg.n_nodes, cfg.base.half_thickness_a);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }();
  for (double b : cfg.detectors) {
    try {
      (void)grid.node_of(b);
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << "config: detector " << b << " is not representable on a "
          << cfg.n_nodes << "-node grid";
      throw ConfigError(msg.str());
    }
    try {
      cfg.base.with_detector(b).validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
}

} // namespace slabsens
