#include "anisobec/config.hpp"

#include "anisobec/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace anisobec::bench {

std::string_view to_string(Method m) {
  switch (m) {
  case Method::FormulaFirstOrder:
    return "formula-first-order";
  case Method::FormulaExactRL:
    return "formula-exact-RL";
  case Method::Variational:
    return "variational";
  case Method::Solver3D:
    return "solver-3d";
  }
  return "?";
}

Method method_from_string(std::string_view name) {
  for (Method m : {Method::FormulaFirstOrder, Method::FormulaExactRL,
                   Method::Variational, Method::Solver3D})
    if (name == to_string(m))
      return m;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected formula-first-order, formula-exact-RL, "
                    "variational or solver-3d)");
}

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

class Parser {
public:
  Parser(std::istream& is, const std::string& name) : name_(name) {
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos)
        line.erase(hash);
      line = trim(line);
      if (line.empty())
        continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          fail(lineno, "unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        fail(lineno, "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        fail(lineno, "empty key");
      const std::string full = section.empty() ? key : section + "." + key;
      if (entries_.count(full))
        fail(lineno, "duplicate key '" + full + "'");
      entries_[full] = Entry{value, lineno};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string get_string(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ConfigError(name_ + ": missing required field '" + key + "'");
    it->second.used = true;
    return it->second.value;
  }

  double get_double(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ConfigError(name_ + ": missing required field '" + key + "'");
    it->second.used = true;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size())
        throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(it->second.line, "field '" + key + "': '" + it->second.value +
                                "' is not a number");
    }
  }

  long get_long(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ConfigError(name_ + ": missing required field '" + key + "'");
    it->second.used = true;
    try {
      std::size_t pos = 0;
      const long v = std::stol(it->second.value, &pos);
      if (pos != it->second.value.size())
        throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(it->second.line, "field '" + key + "': '" + it->second.value +
                                "' is not an integer");
    }
  }

  bool get_bool(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ConfigError(name_ + ": missing required field '" + key + "'");
    it->second.used = true;
    const std::string& v = it->second.value;
    if (v == "true" || v == "1")
      return true;
    if (v == "false" || v == "0")
      return false;
    fail(it->second.line,
         "field '" + key + "': expected true/false, got '" + v + "'");
  }

  std::vector<std::string> get_list(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(get_string(key));
    std::string item;
    while (std::getline(ss, item, ','))
      out.push_back(trim(item));
    return out;
  }

  int line_of(const std::string& key) const {
    return entries_.at(key).line;
  }

  void reject_unknown() const {
    for (const auto& [key, e] : entries_)
      if (!e.used)
        fail(e.line, "unknown field '" + key + "'");
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(name_ + ":" + std::to_string(line) + ": " + msg);
  }

private:
  std::string name_;
  std::map<std::string, Entry> entries_;
};

} // namespace

RunConfig parse_config(std::istream& is, const std::string& source_name) {
  Parser p(is, source_name);
  RunConfig cfg;

  if (p.has("species.name")) {
    const std::string name = p.get_string("species.name");
    if (name != "Rb87")
      p.fail(p.line_of("species.name"),
             "unknown species '" + name + "' (only Rb87 is built in; give "
             "mass_u and scattering_length_a0 instead)");
    cfg.species = AtomSpecies::rubidium87();
  }
  if (p.has("species.mass_u"))
    cfg.species.mass = p.get_double("species.mass_u") *
                       constants::atomic_mass_unit;
  if (p.has("species.scattering_length_a0"))
    cfg.species.scattering_length =
        p.get_double("species.scattering_length_a0") * constants::bohr_radius;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (p.has("trap.omega_T_Hz"))
    cfg.trap.omega_T = two_pi * p.get_double("trap.omega_T_Hz");
  if (p.has("trap.omega_L_Hz"))
    cfg.trap.omega_L = two_pi * p.get_double("trap.omega_L_Hz");
  if (p.has("trap.d"))
    cfg.trap.d = static_cast<int>(p.get_long("trap.d"));
  if (p.has("trap.q"))
    cfg.trap.q = p.get_double("trap.q");
  if (p.has("trap.k_si"))
    cfg.trap.k = p.get_double("trap.k_si");

  if (p.has("sweep.N_list"))
    for (const std::string& s : p.get_list("sweep.N_list")) {
      try {
        cfg.N_list.push_back(std::stod(s));
      } catch (const std::exception&) {
        p.fail(p.line_of("sweep.N_list"),
               "field 'sweep.N_list': '" + s + "' is not a number");
      }
    }
  if (p.has("sweep.N_min"))
    cfg.N_min = p.get_double("sweep.N_min");
  if (p.has("sweep.N_max"))
    cfg.N_max = p.get_double("sweep.N_max");
  if (p.has("sweep.points"))
    cfg.points = static_cast<int>(p.get_long("sweep.points"));
  if (p.has("sweep.units")) {
    const std::string u = p.get_string("sweep.units");
    if (u == "absolute")
      cfg.range_absolute = true;
    else if (u == "NT")
      cfg.range_absolute = false;
    else
      p.fail(p.line_of("sweep.units"),
             "field 'sweep.units': expected absolute or NT");
  }
  if (p.has("sweep.methods")) {
    for (const std::string& s : p.get_list("sweep.methods")) {
      try {
        cfg.methods.push_back(method_from_string(s));
      } catch (const ConfigError& e) {
        p.fail(p.line_of("sweep.methods"), e.what());
      }
    }
  }

  if (p.has("grid.nx"))
    cfg.nx = static_cast<int>(p.get_long("grid.nx"));
  if (p.has("grid.ny"))
    cfg.ny = static_cast<int>(p.get_long("grid.ny"));
  if (p.has("grid.nz"))
    cfg.nz = static_cast<int>(p.get_long("grid.nz"));
  if (p.has("grid.Lx"))
    cfg.Lx = p.get_double("grid.Lx");
  if (p.has("grid.Ly"))
    cfg.Ly = p.get_double("grid.Ly");
  if (p.has("grid.Lz"))
    cfg.Lz = p.get_double("grid.Lz");

  if (p.has("numerics.dt"))
    cfg.numerics.dt = p.get_double("numerics.dt");
  if (p.has("numerics.tol"))
    cfg.numerics.tol = p.get_double("numerics.tol");
  if (p.has("numerics.max_iters"))
    cfg.numerics.max_iters = p.get_long("numerics.max_iters");
  if (p.has("numerics.fixed_iters"))
    cfg.numerics.fixed_iters = p.get_long("numerics.fixed_iters");
  if (p.has("numerics.coarse_stages"))
    cfg.numerics.coarse_stages = p.get_bool("numerics.coarse_stages");

  if (p.has("ground_state.N"))
    cfg.ground_state_N = p.get_double("ground_state.N");

  if (p.has("output.path"))
    cfg.output_path = p.get_string("output.path");
  if (p.has("output.workers"))
    cfg.workers = static_cast<int>(p.get_long("output.workers"));
  if (p.has("output.mem_cap_gib"))
    cfg.mem_cap_gib = p.get_double("output.mem_cap_gib");

  p.reject_unknown();

  try {
    cfg.trap.validate();
    cfg.species.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  if (cfg.methods.empty())
    throw ConfigError(source_name + ": sweep.methods must name at least one "
                      "method");
  if (cfg.N_list.empty()) {
    if (!(cfg.N_min > 0.0) || !(cfg.N_max > cfg.N_min) || cfg.points < 1)
      throw ConfigError(source_name + ": sweep range needs 0 < N_min < "
                        "N_max and points >= 1");
  } else {
    for (double n : cfg.N_list)
      if (!(n >= 1.0))
        throw ConfigError(source_name + ": sweep.N_list values must be >= 1");
  }
  if (cfg.workers < 1)
    throw ConfigError(source_name + ": output.workers must be >= 1");
  if (!(cfg.mem_cap_gib > 0.0))
    throw ConfigError(source_name + ": output.mem_cap_gib must be > 0");
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is)
    throw ConfigError("cannot open config file " + path.string());
  return parse_config(is, path.filename().string());
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "mass=" << species.mass << ";a=" << species.scattering_length
     << ";wT=" << trap.omega_T << ";wL=" << trap.omega_L << ";d=" << trap.d
     << ";q=" << trap.q << ";k=" << trap.k << ";";
  os << "N=[";
  for (double n : N_list)
    os << n << ",";
  os << "];range=" << N_min << ":" << N_max << ":" << points
     << ";abs=" << range_absolute << ";";
  os << "methods=[";
  for (Method m : methods)
    os << to_string(m) << ",";
  os << "];";
  const auto opt_i = [&](const char* k, const std::optional<int>& v) {
    os << k << "=" << (v ? std::to_string(*v) : "-") << ";";
  };
  const auto opt_d = [&](const char* k, const std::optional<double>& v) {
    if (v)
      os << k << "=" << *v << ";";
    else
      os << k << "=-;";
  };
  opt_i("nx", nx);
  opt_i("ny", ny);
  opt_i("nz", nz);
  opt_d("Lx", Lx);
  opt_d("Ly", Ly);
  opt_d("Lz", Lz);
  os << "dt=" << numerics.dt << ";tol=" << numerics.tol
     << ";max_iters=" << numerics.max_iters
     << ";fixed_iters=" << numerics.fixed_iters
     << ";coarse=" << numerics.coarse_stages << ";";
  os << "gsN=" << ground_state_N << ";";
  return os.str();
}

std::uint64_t RunConfig::hash() const { return io::fnv1a(canonical()); }

} // namespace anisobec::bench
