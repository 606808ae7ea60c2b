#include "crn/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace crn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string fmt_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  std::string im = fmt_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return fmt_double(z.real()) + im + "j";
}

struct Context {
  int line = 0;
  std::string section;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("parse error at line " + std::to_string(line) + " [" + section + "]: " + what);
  }
};

double parse_double(const std::string& s, const Context& ctx) {
  std::string t = trim(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) ctx.fail("not a number: '" + t + "'");
  return v;
}

long long parse_int(const std::string& s, const Context& ctx) {
  const std::string t = trim(s);
  long long v = 0;
  auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) ctx.fail("not an integer: '" + t + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const Context& ctx) {
  const std::string t = trim(s);
  std::uint64_t v = 0;
  auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) ctx.fail("not an unsigned integer: '" + t + "'");
  return v;
}

bool parse_bool(const std::string& s, const Context& ctx) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  ctx.fail("not a boolean: '" + t + "'");
}

// Accepts "a", "bj", "a+bj", "a-bj".
std::complex<double> parse_complex(const std::string& s, const Context& ctx) {
  const std::string t = trim(s);
  if (t.empty()) ctx.fail("empty complex literal");
  if (t.back() != 'j') return {parse_double(t, ctx), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_double(body, ctx)};
  return {parse_double(body.substr(0, split), ctx), parse_double(body.substr(split), ctx)};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

SnrProfile parse_profile(const std::string& s, const Context& ctx) {
  const auto items = split_list(s);
  if (items.empty()) ctx.fail("empty SNR entry");
  SnrProfile prof;
  if (items.size() == 1 && items[0].find(':') == std::string::npos) {
    prof.knots.push_back({0, parse_double(items[0], ctx)});
    return prof;
  }
  for (const auto& it : items) {
    const auto colon = it.find(':');
    if (colon == std::string::npos) ctx.fail("SNR knot must be cpi:dB, got '" + it + "'");
    prof.knots.push_back({static_cast<int>(parse_int(it.substr(0, colon), ctx)), parse_double(it.substr(colon + 1), ctx)});
  }
  return prof;
}

std::string fmt_profile(const SnrProfile& p) {
  if (p.knots.size() == 1 && p.knots[0].first == 0) return fmt_double(p.knots[0].second);
  std::string out;
  for (std::size_t i = 0; i < p.knots.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(p.knots[i].first) + ":" + fmt_double(p.knots[i].second);
  }
  return out;
}

const char* clutter_kind_name(ClutterKind k) {
  switch (k) {
    case ClutterKind::default_model: return "default";
    case ClutterKind::white: return "white";
    case ClutterKind::separable: return "separable";
    case ClutterKind::general: return "general";
  }
  return "default";
}

void parse_radar(RadarParams& r, const std::string& key, const std::string& val, const Context& ctx) {
  if (key == "n_tx") r.n_tx = static_cast<int>(parse_int(val, ctx));
  else if (key == "n_rx") r.n_rx = static_cast<int>(parse_int(val, ctx));
  else if (key == "pulses_per_cpi") r.pulses_per_cpi = static_cast<int>(parse_int(val, ctx));
  else if (key == "n_bins") r.n_bins = static_cast<int>(parse_int(val, ctx));
  else if (key == "kappa") r.kappa = parse_double(val, ctx);
  else if (key == "kappa_cap") r.kappa_cap = parse_double(val, ctx);
  else if (key == "total_power") r.total_power = parse_double(val, ctx);
  else if (key == "pri_seconds") r.pri_seconds = parse_double(val, ctx);
  else if (key == "pfa_nominal") r.pfa_nominal = parse_double(val, ctx);
  else ctx.fail("unknown key '" + key + "'");
}

void parse_network(NetworkConfig& n, const std::string& key, const std::string& val, const Context& ctx) {
  if (key == "n_radars") {
    n.n_radars = static_cast<int>(parse_int(val, ctx));
  } else if (key == "fusion_mode") {
    try {
      n.fusion_mode = parse_fusion_mode(trim(val));
    } catch (const ConfigError& e) {
      ctx.fail(e.what());
    }
  } else if (key == "rng_seeds") {
    n.rng_seeds.clear();
    for (const auto& it : split_list(val)) n.rng_seeds.push_back(parse_u64(it, ctx));
  } else if (key == "bin_mapping") {
    std::vector<int> m;
    for (const auto& it : split_list(val)) m.push_back(static_cast<int>(parse_int(it, ctx)));
    n.bin_mapping.push_back(std::move(m));
  } else {
    ctx.fail("unknown key '" + key + "'");
  }
}

void parse_timeline(ScenarioTimeline& t, const std::string& key, const std::string& val, const Context& ctx) {
  if (key == "n_cpis") t.n_cpis = static_cast<int>(parse_int(val, ctx));
  else if (key == "t_max") t.t_max = static_cast<int>(parse_int(val, ctx));
  else if (key == "m_acq") t.m_acq = static_cast<int>(parse_int(val, ctx));
  else if (key == "n_acq") t.n_acq = static_cast<int>(parse_int(val, ctx));
  else ctx.fail("unknown key '" + key + "'");
}

void parse_clutter(ClutterConfig& c, const std::string& key, const std::string& val, const Context& ctx) {
  const std::string v = trim(val);
  if (key == "model") {
    if (v == "default") c.model = ClutterKind::default_model;
    else if (v == "white") c.model = ClutterKind::white;
    else if (v == "separable") c.model = ClutterKind::separable;
    else if (v == "general") c.model = ClutterKind::general;
    else ctx.fail("unknown clutter model '" + v + "'");
  } else if (key == "innovation") {
    if (v == "complex_t") c.innovation = InnovationKind::complex_t;
    else if (v == "complex_gaussian") c.innovation = InnovationKind::complex_gaussian;
    else ctx.fail("unknown innovation '" + v + "'");
  } else if (key == "nu") {
    c.nu = parse_double(v, ctx);
  } else if (key == "sigma2") {
    c.sigma2 = parse_double(v, ctx);
  } else if (key == "burn_in") {
    c.burn_in = static_cast<int>(parse_int(v, ctx));
  } else if (key == "shared_across_bins") {
    c.shared_across_bins = parse_bool(v, ctx);
  } else if (key == "phi_spatial" || key == "phi_temporal" || key == "phi") {
    std::vector<std::complex<double>> coeffs;
    for (const auto& it : split_list(v)) coeffs.push_back(parse_complex(it, ctx));
    if (key == "phi_spatial") c.phi_spatial = std::move(coeffs);
    else if (key == "phi_temporal") c.phi_temporal = std::move(coeffs);
    else c.phi = std::move(coeffs);
  } else if (key == "p") {
    c.p = static_cast<int>(parse_int(v, ctx));
  } else if (key == "q") {
    c.q = static_cast<int>(parse_int(v, ctx));
  } else {
    ctx.fail("unknown key '" + key + "'");
  }
}

void parse_sarsa(SarsaConfig& s, const std::string& key, const std::string& val, const Context& ctx) {
  if (key == "learning_rate") s.learning_rate = parse_double(val, ctx);
  else if (key == "discount") s.discount = parse_double(val, ctx);
  else if (key == "epsilon") s.epsilon = parse_double(val, ctx);
  else if (key == "epsilon_decay") s.epsilon_decay = parse_bool(val, ctx);
  else if (key == "epsilon_final") s.epsilon_final = parse_double(val, ctx);
  else if (key == "epsilon_decay_cpis") s.epsilon_decay_cpis = static_cast<int>(parse_int(val, ctx));
  else ctx.fail("unknown key '" + key + "'");
}

void parse_target(TargetEvent& t, const std::string& key, const std::string& val, const Context& ctx) {
  if (key == "cpi_start") {
    t.cpi_start = static_cast<int>(parse_int(val, ctx));
  } else if (key == "cpi_end") {
    t.cpi_end = static_cast<int>(parse_int(val, ctx));
  } else if (key == "bin") {
    t.bin = static_cast<int>(parse_int(val, ctx));
  } else if (key == "angle_offset") {
    t.angle_offset = parse_double(val, ctx);
  } else if (key == "snr_db_per_radar") {
    t.snr_db_per_radar.clear();
    std::stringstream ss(val);
    std::string part;
    while (std::getline(ss, part, ';')) t.snr_db_per_radar.push_back(parse_profile(part, ctx));
  } else {
    ctx.fail("unknown key '" + key + "'");
  }
}

void fill_network_defaults(Scenario& s) {
  NetworkConfig& n = s.network;
  if (n.bin_mapping.empty() && n.n_radars >= 1) {
    std::vector<int> id(static_cast<std::size_t>(std::max(s.radar.n_bins, 0)));
    for (std::size_t l = 0; l < id.size(); ++l) id[l] = static_cast<int>(l);
    n.bin_mapping.assign(static_cast<std::size_t>(n.n_radars), id);
  }
  if (n.rng_seeds.empty() && n.n_radars >= 1) {
    for (int i = 0; i < n.n_radars; ++i) n.rng_seeds.push_back(static_cast<std::uint64_t>(i + 1));
  }
}

int model_order(const ClutterConfig& c, bool spatial) {
  switch (c.model) {
    case ClutterKind::default_model: return 6;
    case ClutterKind::white: return 0;
    case ClutterKind::separable: return static_cast<int>(spatial ? c.phi_spatial.size() : c.phi_temporal.size());
    case ClutterKind::general: return spatial ? c.p : c.q;
  }
  return 0;
}

}  // namespace

double SnrProfile::at(int cpi) const {
  if (knots.empty()) throw ConfigError("empty SNR profile");
  if (cpi <= knots.front().first) return knots.front().second;
  if (cpi >= knots.back().first) return knots.back().second;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (cpi <= knots[i].first) {
      const auto [c0, d0] = knots[i - 1];
      const auto [c1, d1] = knots[i];
      const double w = static_cast<double>(cpi - c0) / static_cast<double>(c1 - c0);
      return d0 + w * (d1 - d0);
    }
  }
  return knots.back().second;
}

std::string to_string(FusionMode m) {
  switch (m) {
    case FusionMode::centralized: return "centralized";
    case FusionMode::decentralized: return "decentralized";
    case FusionMode::none: return "none";
  }
  return "none";
}

FusionMode parse_fusion_mode(const std::string& s) {
  if (s == "centralized") return FusionMode::centralized;
  if (s == "decentralized") return FusionMode::decentralized;
  if (s == "none") return FusionMode::none;
  throw ConfigError("unknown fusion_mode '" + s + "'");
}

Scenario load_scenario(const std::string& text) {
  Scenario s;
  Context ctx;
  std::istringstream in(text);
  std::string raw;
  bool radars_given = false;
  while (std::getline(in, raw)) {
    ++ctx.line;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') ctx.fail("unterminated section header");
      ctx.section = trim(line.substr(1, line.size() - 2));
      if (ctx.section == "target") {
        s.timeline.events.emplace_back();
      } else if (ctx.section != "radar" && ctx.section != "network" && ctx.section != "timeline" &&
                 ctx.section != "clutter" && ctx.section != "sarsa") {
        ctx.fail("unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (ctx.section.empty()) ctx.fail("key outside of a section");
    if (ctx.section == "radar") parse_radar(s.radar, key, val, ctx);
    else if (ctx.section == "network") {
      parse_network(s.network, key, val, ctx);
      if (key == "n_radars") radars_given = true;
    } else if (ctx.section == "timeline") parse_timeline(s.timeline, key, val, ctx);
    else if (ctx.section == "clutter") parse_clutter(s.clutter, key, val, ctx);
    else if (ctx.section == "sarsa") parse_sarsa(s.sarsa, key, val, ctx);
    else parse_target(s.timeline.events.back(), key, val, ctx);
  }
  if (!radars_given && !s.network.bin_mapping.empty()) s.network.n_radars = static_cast<int>(s.network.bin_mapping.size());
  fill_network_defaults(s);
  validate(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return load_scenario(ss.str());
}

std::string to_text(const Scenario& s) {
  std::ostringstream o;
  const RadarParams& r = s.radar;
  o << "[radar]\n"
    << "n_tx = " << r.n_tx << "\n"
    << "n_rx = " << r.n_rx << "\n"
    << "pulses_per_cpi = " << r.pulses_per_cpi << "\n"
    << "n_bins = " << r.n_bins << "\n"
    << "kappa = " << fmt_double(r.kappa) << "\n"
    << "kappa_cap = " << fmt_double(r.kappa_cap) << "\n"
    << "total_power = " << fmt_double(r.total_power) << "\n"
    << "pri_seconds = " << fmt_double(r.pri_seconds) << "\n"
    << "pfa_nominal = " << fmt_double(r.pfa_nominal) << "\n";
  const NetworkConfig& n = s.network;
  o << "\n[network]\n"
    << "n_radars = " << n.n_radars << "\n"
    << "fusion_mode = " << to_string(n.fusion_mode) << "\n"
    << "rng_seeds =";
  for (auto seed : n.rng_seeds) o << " " << seed;
  o << "\n";
  for (const auto& m : n.bin_mapping) {
    o << "bin_mapping =";
    for (int b : m) o << " " << b;
    o << "\n";
  }
  const ScenarioTimeline& t = s.timeline;
  o << "\n[timeline]\n"
    << "n_cpis = " << t.n_cpis << "\n"
    << "t_max = " << t.t_max << "\n"
    << "m_acq = " << t.m_acq << "\n"
    << "n_acq = " << t.n_acq << "\n";
  const ClutterConfig& c = s.clutter;
  o << "\n[clutter]\n"
    << "model = " << clutter_kind_name(c.model) << "\n"
    << "innovation = " << (c.innovation == InnovationKind::complex_t ? "complex_t" : "complex_gaussian") << "\n"
    << "nu = " << fmt_double(c.nu) << "\n"
    << "sigma2 = " << fmt_double(c.sigma2) << "\n"
    << "burn_in = " << c.burn_in << "\n"
    << "shared_across_bins = " << (c.shared_across_bins ? "true" : "false") << "\n";
  auto list = [&o](const char* key, const std::vector<std::complex<double>>& v) {
    if (v.empty()) return;
    o << key << " =";
    for (auto z : v) o << " " << fmt_complex(z);
    o << "\n";
  };
  list("phi_spatial", c.phi_spatial);
  list("phi_temporal", c.phi_temporal);
  if (c.p || c.q) o << "p = " << c.p << "\nq = " << c.q << "\n";
  list("phi", c.phi);
  const SarsaConfig& a = s.sarsa;
  o << "\n[sarsa]\n"
    << "learning_rate = " << fmt_double(a.learning_rate) << "\n"
    << "discount = " << fmt_double(a.discount) << "\n"
    << "epsilon = " << fmt_double(a.epsilon) << "\n"
    << "epsilon_decay = " << (a.epsilon_decay ? "true" : "false") << "\n"
    << "epsilon_final = " << fmt_double(a.epsilon_final) << "\n"
    << "epsilon_decay_cpis = " << a.epsilon_decay_cpis << "\n";
  for (const auto& e : t.events) {
    o << "\n[target]\n"
      << "bin = " << e.bin << "\n"
      << "cpi_start = " << e.cpi_start << "\n"
      << "cpi_end = " << e.cpi_end << "\n"
      << "snr_db_per_radar = ";
    for (std::size_t i = 0; i < e.snr_db_per_radar.size(); ++i) {
      if (i) o << " ; ";
      o << fmt_profile(e.snr_db_per_radar[i]);
    }
    o << "\n";
    if (e.angle_offset != 0.0) o << "angle_offset = " << fmt_double(e.angle_offset) << "\n";
  }
  return o.str();
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw ConfigError("validation failed: " + what); };
  const RadarParams& r = s.radar;
  if (r.n_tx < 1 || r.n_rx < 1 || r.pulses_per_cpi < 1 || r.n_bins < 1) fail("radar counts must be >= 1");
  if (r.n_total() < 2) fail("N = n_tx*n_rx*pulses_per_cpi must be >= 2");
  if (!(r.kappa > 0.0 && r.kappa < 1.0)) fail("kappa must lie strictly inside (0,1)");
  if (!(r.kappa_cap > 0.0 && r.kappa_cap <= 1.0)) fail("kappa_cap must lie in (0,1]");
  if (!(r.pfa_nominal > 0.0 && r.pfa_nominal < 1.0)) fail("pfa_nominal must lie strictly inside (0,1)");
  if (!(r.total_power > 0.0)) fail("total_power must be > 0");
  if (!(r.pri_seconds > 0.0)) fail("pri_seconds must be > 0");

  const NetworkConfig& n = s.network;
  if (n.n_radars < 1) fail("n_radars must be >= 1");
  if (n.fusion_mode == FusionMode::none && n.n_radars != 1) fail("fusion_mode none requires a single radar");
  if (static_cast<int>(n.bin_mapping.size()) != n.n_radars) fail("one bin_mapping per radar required");
  for (const auto& m : n.bin_mapping) {
    if (static_cast<int>(m.size()) != r.n_bins) fail("bin_mapping length must equal n_bins");
    std::vector<char> seen(static_cast<std::size_t>(r.n_bins), 0);
    for (int b : m) {
      if (b < 0 || b >= r.n_bins || seen[static_cast<std::size_t>(b)]) fail("bijection violated");
      seen[static_cast<std::size_t>(b)] = 1;
    }
  }
  if (static_cast<int>(n.rng_seeds.size()) != n.n_radars) fail("one rng seed per radar required");
  for (std::size_t i = 0; i < n.rng_seeds.size(); ++i)
    for (std::size_t j = i + 1; j < n.rng_seeds.size(); ++j)
      if (n.rng_seeds[i] == n.rng_seeds[j]) fail("rng_seeds must be pairwise distinct");

  const ScenarioTimeline& t = s.timeline;
  if (t.n_cpis < 1) fail("n_cpis must be >= 1");
  if (t.t_max < 1) fail("t_max must be >= 1");
  if (t.m_acq < 1 || t.n_acq < 1 || t.m_acq > t.n_acq) fail("m_acq <= n_acq required");
  for (const auto& e : t.events) {
    if (e.cpi_start < 0 || e.cpi_start > e.cpi_end) fail("cpi_start <= cpi_end required");
    if (e.cpi_end >= t.n_cpis) fail("target event extends beyond n_cpis");
    if (e.bin < 0 || e.bin >= r.n_bins) fail("target bin out of range");
    if (static_cast<int>(e.snr_db_per_radar.size()) != n.n_radars) fail("snr_db_per_radar length must equal n_radars");
    for (const auto& p : e.snr_db_per_radar) {
      if (p.knots.empty()) fail("empty SNR profile");
      for (std::size_t k = 1; k < p.knots.size(); ++k)
        if (p.knots[k].first <= p.knots[k - 1].first) fail("SNR knots must have increasing cpi");
    }
    if (!(std::abs(e.angle_offset) <= 0.5)) fail("angle_offset must lie in [-0.5, 0.5]");
  }
  // Sweep CPI boundaries: the active set only changes at event starts.
  std::vector<int> starts;
  for (const auto& e : t.events) starts.push_back(e.cpi_start);
  for (int p : starts) {
    std::vector<int> bins;
    for (const auto& e : t.events)
      if (e.cpi_start <= p && p <= e.cpi_end) bins.push_back(e.bin);
    if (static_cast<int>(bins.size()) > t.t_max) fail("more active targets than t_max at cpi " + std::to_string(p));
    std::sort(bins.begin(), bins.end());
    if (std::adjacent_find(bins.begin(), bins.end()) != bins.end())
      fail("active targets must occupy distinct bins (cpi " + std::to_string(p) + ")");
  }

  const ClutterConfig& c = s.clutter;
  if (c.innovation == InnovationKind::complex_t && !(c.nu > 1.0)) fail("nu must be > 1 for complex_t");
  if (!(c.sigma2 > 0.0)) fail("sigma2 must be > 0");
  if (c.model == ClutterKind::separable && (c.phi_spatial.empty() || c.phi_temporal.empty()))
    fail("separable clutter needs phi_spatial and phi_temporal");
  if (c.model == ClutterKind::general &&
      (c.p < 1 || c.q < 1 || static_cast<int>(c.phi.size()) != c.p * c.q))
    fail("general clutter needs p, q and p*q phi coefficients");
  const int order = std::max(model_order(c, true), model_order(c, false));
  if (c.burn_in < 10 * order) fail("burn_in must be >= 10*max(p,q)");

  const SarsaConfig& a = s.sarsa;
  if (!(a.learning_rate > 0.0 && a.learning_rate <= 1.0)) fail("learning_rate must lie in (0,1]");
  if (!(a.discount >= 0.0 && a.discount <= 1.0)) fail("discount must lie in [0,1]");
  if (!(a.epsilon >= 0.0 && a.epsilon <= 1.0)) fail("epsilon must lie in [0,1]");
  if (!(a.epsilon_final >= 0.0 && a.epsilon_final <= 1.0)) fail("epsilon_final must lie in [0,1]");
  if (a.epsilon_decay_cpis < 1) fail("epsilon_decay_cpis must be >= 1");
}

std::vector<ActiveTarget> active_targets(const ScenarioTimeline& timeline, int p) {
  if (p < 0 || p >= timeline.n_cpis) throw std::out_of_range("cpi index out of range");
  std::vector<ActiveTarget> out;
  for (std::size_t i = 0; i < timeline.events.size(); ++i) {
    const TargetEvent& e = timeline.events[i];
    if (p < e.cpi_start || p > e.cpi_end) continue;
    ActiveTarget a;
    a.bin = e.bin;
    a.angle_offset = e.angle_offset;
    a.event = static_cast<int>(i);
    for (const auto& prof : e.snr_db_per_radar) a.snr_db.push_back(prof.at(p));
    out.push_back(std::move(a));
  }
  return out;
}

int max_beam_bins(const Scenario& s) { return std::min(s.timeline.t_max, s.radar.n_tx); }

}  // namespace crn
