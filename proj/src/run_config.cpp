#include "degeis/run_config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace degeis {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: invalid number '" + t + "' for key '" + key + "'");
  return d;
}

long long parse_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const long long d = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: invalid integer '" + t + "' for key '" + key + "'");
  return d;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  if (!t.empty() && t[0] == '-') throw ConfigError("config: negative value for key '" + key + "'");
  const unsigned long long d = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: invalid unsigned integer '" + t + "' for key '" + key + "'");
  return d;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  const std::string t = trim(v);
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  return out;
}

std::string list_string(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

struct Field {
  const char* name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"command", [](const RunConfig& c) { return c.command; },
       [](RunConfig& c, const std::string& v) { c.command = trim(v); }},
      {"n", [](const RunConfig& c) { return std::to_string(c.n); },
       [](RunConfig& c, const std::string& v) { c.n = static_cast<int>(parse_int("n", v)); }},
      {"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
       [](RunConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); }},
      {"samples", [](const RunConfig& c) { return std::to_string(c.samples); },
       [](RunConfig& c, const std::string& v) { c.samples = parse_int("samples", v); }},
      {"threads", [](const RunConfig& c) { return std::to_string(c.threads); },
       [](RunConfig& c, const std::string& v) { c.threads = static_cast<int>(parse_int("threads", v)); }},
      {"s", [](const RunConfig& c) { return list_string(c.s); },
       [](RunConfig& c, const std::string& v) { c.s = parse_list("s", v); }},
      {"z_x", [](const RunConfig& c) { return list_string(c.z_x); },
       [](RunConfig& c, const std::string& v) { c.z_x = parse_list("z_x", v); }},
      {"z_y", [](const RunConfig& c) { return list_string(c.z_y); },
       [](RunConfig& c, const std::string& v) { c.z_y = parse_list("z_y", v); }},
      {"lattice_cutoff", [](const RunConfig& c) { return std::to_string(c.lattice_cutoff); },
       [](RunConfig& c, const std::string& v) {
         c.lattice_cutoff = static_cast<int>(parse_int("lattice_cutoff", v));
       }},
      {"grid", [](const RunConfig& c) { return std::to_string(c.grid); },
       [](RunConfig& c, const std::string& v) { c.grid = static_cast<int>(parse_int("grid", v)); }},
      {"t_grid", [](const RunConfig& c) { return list_string(c.t_grid); },
       [](RunConfig& c, const std::string& v) { c.t_grid = parse_list("t_grid", v); }},
      {"box_a_x", [](const RunConfig& c) { return list_string(c.box_a_x); },
       [](RunConfig& c, const std::string& v) { c.box_a_x = parse_list("box_a_x", v); }},
      {"box_a_y", [](const RunConfig& c) { return list_string(c.box_a_y); },
       [](RunConfig& c, const std::string& v) { c.box_a_y = parse_list("box_a_y", v); }},
      {"box_b_x", [](const RunConfig& c) { return list_string(c.box_b_x); },
       [](RunConfig& c, const std::string& v) { c.box_b_x = parse_list("box_b_x", v); }},
      {"box_b_y", [](const RunConfig& c) { return list_string(c.box_b_y); },
       [](RunConfig& c, const std::string& v) { c.box_b_y = parse_list("box_b_y", v); }},
      {"stade_count", [](const RunConfig& c) { return std::to_string(c.stade_count); },
       [](RunConfig& c, const std::string& v) { c.stade_count = static_cast<int>(parse_int("stade_count", v)); }},
      {"ramanujan_count", [](const RunConfig& c) { return std::to_string(c.ramanujan_count); },
       [](RunConfig& c, const std::string& v) {
         c.ramanujan_count = static_cast<int>(parse_int("ramanujan_count", v));
       }},
      {"ramanujan_terms", [](const RunConfig& c) { return std::to_string(c.ramanujan_terms); },
       [](RunConfig& c, const std::string& v) { c.ramanujan_terms = parse_int("ramanujan_terms", v); }},
      {"stade_extra", [](const RunConfig& c) { return list_string(c.stade_extra); },
       [](RunConfig& c, const std::string& v) { c.stade_extra = parse_list("stade_extra", v); }},
      {"eta", [](const RunConfig& c) { return list_string(c.eta); },
       [](RunConfig& c, const std::string& v) { c.eta = parse_list("eta", v); }},
      {"tolerance", [](const RunConfig& c) { return format_double(c.tolerance); },
       [](RunConfig& c, const std::string& v) { c.tolerance = parse_double("tolerance", v); }},
      {"ratio_tolerance", [](const RunConfig& c) { return format_double(c.ratio_tolerance); },
       [](RunConfig& c, const std::string& v) { c.ratio_tolerance = parse_double("ratio_tolerance", v); }},
      {"out", [](const RunConfig& c) { return c.out; },
       [](RunConfig& c, const std::string& v) { c.out = trim(v); }},
  };
  return f;
}

}  // namespace

std::string RunConfig::serialize() const {
  std::string s = "# degeis run configuration\n";
  for (const auto& f : fields()) {
    const std::string v = f.get(*this);
    s += f.name;
    s += v.empty() ? " =\n" : " = " + v + "\n";
  }
  return s;
}

RunConfig RunConfig::parse(const std::string& text) {
  std::map<std::string, const Field*> by_name;
  for (const auto& f : fields()) by_name[f.name] = &f;
  RunConfig c;
  std::set<std::string> seen;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const auto it = by_name.find(key);
    if (it == by_name.end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");
    it->second->set(c, line.substr(eq + 1));
  }
  if (c.samples < 0) throw ConfigError("config: samples must be non-negative");
  if (c.threads < 0) throw ConfigError("config: threads must be non-negative");
  if (!c.s.empty() && c.s.size() != 2) throw ConfigError("config: s must be 're, im'");
  if (c.stade_extra.size() % 6 != 0) throw ConfigError("config: stade_extra needs groups of six numbers");
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::uint64_t RunConfig::hash() const {
  RunConfig c = *this;
  c.threads = 0;
  const std::string s = c.serialize();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace degeis
