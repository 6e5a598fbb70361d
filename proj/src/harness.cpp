#include "zmeta/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "zmeta/errors.hpp"

namespace zmeta {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  return x;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
  return x;
}

template <typename T, typename F>
std::string join(const T& xs, F f) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ",";
    out += f(x);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json mother_json(const MotherInstance& m) {
  return {{"U", m.U},
          {"L", m.L},
          {"ladder", m.model.describe()},
          {"mode", mode_name(m.mode)},
          {"base", {m.base.lo, m.base.hi}},
          {"lifted", {m.lifted.lo, m.lifted.hi}},
          {"alpha1", m.alpha1},
          {"alpha0", m.alpha0},
          {"c", m.c},
          {"g", m.g},
          {"a", m.a},
          {"theta", m.theta},
          {"three_term_residual", m.three_term_residual()},
          {"mean_defect", m.mean_defect},
          {"flagged", m.flagged}};
}

json params_json(const ParameterSet& p) { return {{"n", p.n}, {"p", p.p}, {"k", p.k}}; }

const char* generation_name(Generation g) { return g == Generation::FIRST ? "first" : "second"; }

}  // namespace

void RunConfig::validate() const {
  if (!(U > 0.0 && U < std::numbers::pi / 4)) throw ConfigError("U must lie in (0, pi/4)");
  if (L_list.empty()) throw ConfigError("L list is empty");
  for (int L : L_list) {
    if (L < kMinL) throw ConfigError("L = " + std::to_string(L) + " is below " + std::to_string(kMinL));
  }
  if (!(tol.quad_rel >= 1e-12 && tol.level_res > 0.0 && tol.eq_res > 0.0)) {
    throw ConfigError("tolerances must be positive (quad_rel at least 1e-12)");
  }
  if (draws < 0) throw ConfigError("draws must be nonnegative");
  if (!(arc_step > 1e-4 && arc_step < 1e-1)) throw ConfigError("arc_step must lie in (1e-4, 1e-1)");
  if (arc_count < 0) throw ConfigError("arc_count must be nonnegative");
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (ladder.kind == LadderKind::AFFINE && !std::isfinite(ladder.delta)) {
    throw ConfigError("affine ladder shift must be finite");
  }
}

LadderModel parse_ladder(const std::string& text) {
  const std::string t = trim(text);
  if (t == "asymptotic") return LadderModel::asymptotic();
  if (t.rfind("affine:", 0) == 0) return LadderModel::affine(to_double("ladder", t.substr(7)));
  throw ConfigError("ladder must be 'asymptotic' or 'affine:DELTA', got '" + t + "'");
}

MotherMode parse_mode(const std::string& text) {
  const std::string t = trim(text);
  if (t == "exact") return MotherMode::EXACT;
  if (t == "asymptotic") return MotherMode::ASYMPTOTIC;
  throw ConfigError("mode must be 'exact' or 'asymptotic', got '" + t + "'");
}

std::string mode_name(MotherMode mode) {
  return mode == MotherMode::EXACT ? "exact" : "asymptotic";
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  const auto six = [&](auto parse) {
    const auto items = split(v, ',');
    if (items.size() != 6) throw ConfigError(key + ": expected 6 comma-separated values");
    std::array<decltype(parse(items[0])), 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = parse(items[i]);
    return out;
  };
  if (key == "U") {
    c.U = to_double(key, v);
  } else if (key == "L") {
    c.L_list.clear();
    if (!v.empty()) {
      for (const auto& item : split(v, ',')) c.L_list.push_back(to_int<int>(key, item));
    }
  } else if (key == "ladder") {
    c.ladder = parse_ladder(v);
  } else if (key == "mode") {
    c.mode = parse_mode(v);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, v);
  } else if (key == "draws") {
    c.draws = to_int<int>(key, v);
  } else if (key == "n") {
    c.params.n = six([&](const std::string& s) { return to_int<int>(key, s); });
  } else if (key == "p") {
    c.params.p = six([&](const std::string& s) { return to_int<int>(key, s); });
  } else if (key == "k") {
    c.params.k = six([&](const std::string& s) { return to_double(key, s); });
  } else if (key == "quad_rel") {
    c.tol.quad_rel = to_double(key, v);
  } else if (key == "level_res") {
    c.tol.level_res = to_double(key, v);
  } else if (key == "eq_res") {
    c.tol.eq_res = to_double(key, v);
  } else if (key == "arc_step") {
    c.arc_step = to_double(key, v);
  } else if (key == "arc_count") {
    c.arc_count = to_int<int>(key, v);
  } else if (key == "report") {
    c.report_path = v;
  } else if (key == "scaling_out") {
    c.scaling_path = v;
  } else if (key == "atlas_dir") {
    c.atlas_dir = v;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string serialize_config(const RunConfig& c) {
  const auto itoa = [](auto x) { return std::to_string(x); };
  std::ostringstream s;
  s << "U = " << fmt(c.U) << "\n";
  s << "L = " << join(c.L_list, itoa) << "\n";
  s << "ladder = " << c.ladder.describe() << "\n";
  s << "mode = " << mode_name(c.mode) << "\n";
  s << "seed = " << c.seed << "\n";
  s << "draws = " << c.draws << "\n";
  s << "n = " << join(c.params.n, itoa) << "\n";
  s << "p = " << join(c.params.p, itoa) << "\n";
  s << "k = " << join(c.params.k, fmt) << "\n";
  s << "quad_rel = " << fmt(c.tol.quad_rel) << "\n";
  s << "level_res = " << fmt(c.tol.level_res) << "\n";
  s << "eq_res = " << fmt(c.tol.eq_res) << "\n";
  s << "arc_step = " << fmt(c.arc_step) << "\n";
  s << "arc_count = " << c.arc_count << "\n";
  s << "report = " << c.report_path << "\n";
  s << "scaling_out = " << c.scaling_path << "\n";
  s << "atlas_dir = " << c.atlas_dir << "\n";
  return s.str();
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<ParameterSet> draw_parameter_sets(std::uint64_t seed, int count) {
  Xorshift64Star rng(seed);
  std::vector<ParameterSet> out;
  for (int d = 0; d < count; ++d) {
    ParameterSet ps;
    for (auto& n : ps.n) n = 1 + static_cast<int>(rng.next() % 4);
    for (auto& p : ps.p) p = static_cast<int>(rng.next() % 7) - 3;
    for (auto& k : ps.k) k = std::sqrt(0.05 + 0.9 * rng.uniform());
    out.push_back(ps);
  }
  return out;
}

std::vector<ParameterSet> run_parameter_sets(const RunConfig& config) {
  if (config.draws == 0) return {config.params};
  return draw_parameter_sets(config.seed, config.draws);
}

RunResult run(const RunConfig& config) {
  config.validate();
  const auto param_sets = run_parameter_sets(config);

  json payload;
  payload["schema_version"] = kSchemaVersion;
  {
    json cfg = json::object();
    std::istringstream in(serialize_config(config));
    std::string line;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    payload["config"] = cfg;
  }
  payload["interpretations"] = interpretation_log();
  json typos = json::array();
  for (const auto& t : reconciled_typos()) {
    typos.push_back({{"where", t.where}, {"printed", t.printed}, {"used", t.used}, {"rule", t.rule}});
  }
  payload["reconciled_typos"] = typos;
  json sets = json::array();
  for (const auto& ps : param_sets) sets.push_back(params_json(ps));
  payload["parameter_sets"] = sets;

  json timing = json::object();
  json grid = json::array();
  json failures = json::array();
  double max_eq = 0.0;
  int eq_count = 0;

  for (int L : config.L_list) {
    const auto t0 = std::chrono::steady_clock::now();
    json entry;
    entry["U"] = config.U;
    entry["L"] = L;
    const auto fail = [&](int draw, const std::string& what) {
      failures.push_back({{"L", L}, {"draw", draw}, {"what", what}});
    };
    try {
      const MotherInstance inst =
          build_mother_instance(config.U, L, config.ladder, config.mode, config.tol.quad_rel);
      entry["mother"] = mother_json(inst);
      for (int i = 0; i < 3; ++i) {
        if (inst.flagged[i]) fail(-1, "mean-value point " + std::to_string(i + 1) + " flagged");
      }
      json draws = json::array();
      for (std::size_t d = 0; d < param_sets.size(); ++d) {
        const int di = static_cast<int>(d);
        json dj;
        dj["draw"] = di;
        try {
          const LevelAssignment assign = build_level_assignments(inst, param_sets[d]);
          json pts = json::array();
          for (int n = 3; n <= 12; ++n) {
            for (int l = 1; l <= 3; ++l) {
              const LevelPoint& p = assign.at(n, l);
              pts.push_back({{"n", n},
                             {"l", l},
                             {"family", p.spec.family.name()},
                             {"generation", generation_name(p.spec.generation)},
                             {"target", p.spec.target},
                             {"s", complex_json(p.s)},
                             {"residual", p.residual},
                             {"method", p.method}});
              if (!(p.residual <= config.tol.level_res * std::max(1.0, p.spec.target))) {
                fail(di, "level point (" + std::to_string(n) + ", " + std::to_string(l) +
                             ") residual " + fmt(p.residual));
              }
            }
          }
          dj["level_points"] = pts;
          const SecondGeneration g = second_generation(inst, assign, config.tol.eq_res);
          json tj = json::array();
          for (const auto& t : g.transmutations) {
            json terms = json::array();
            for (const auto& term : t.terms) terms.push_back(term.text());
            tj.push_back({{"name", transmutation_name(t.id)},
                          {"b", t.b},
                          {"terms", terms},
                          {"term_defect", t.term_defect},
                          {"three_term_residual", t.three_term_residual}});
          }
          dj["transmutations"] = tj;
          json ej = json::array();
          for (const auto& e : g.equations) {
            ej.push_back({{"index", e.index},
                          {"label", e.label},
                          {"lhs", e.lhs},
                          {"rhs", e.rhs},
                          {"residual", e.residual},
                          {"identity", e.text}});
            max_eq = std::max(max_eq, e.residual);
            ++eq_count;
            if (!(e.residual <= config.tol.eq_res)) {
              fail(di, e.label + " residual " + fmt(e.residual));
            }
          }
          dj["meta_equations"] = ej;
        } catch (const std::exception& e) {
          dj["error"] = e.what();
          fail(di, e.what());
        }
        draws.push_back(dj);
      }
      entry["draws"] = draws;
    } catch (const std::exception& e) {
      entry["error"] = e.what();
      fail(-1, e.what());
    }
    grid.push_back(entry);
    timing[std::to_string(L)] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  payload["grid"] = grid;
  const bool certified = failures.empty();
  payload["summary"] = {{"certified", certified},
                        {"failures", failures},
                        {"meta_equation_count", eq_count},
                        {"max_meta_equation_residual", max_eq}};

  RunResult out;
  out.certified = certified;
  out.report["payload"] = payload;
  out.report["header"] = {{"schema", "zmeta-report"},
                          {"schema_version", kSchemaVersion},
                          {"generated_utc", utc_timestamp()},
                          {"timing_seconds", timing},
                          {"payload_fnv1a64", fnv1a(payload.dump())}};
  return out;
}

std::string payload_text(const json& report) { return report.at("payload").dump(); }

double lnln_over_ln(double T) { return std::log(std::log(T)) / std::log(T); }

ScalingResult scaling_study(const RunConfig& config) {
  config.validate();
  if (config.mode != MotherMode::ASYMPTOTIC) throw ConfigError("scaling study needs mode = asymptotic");
  if (config.L_list.size() < 3) throw ConfigError("scaling study needs at least three L values");
  if (!std::is_sorted(config.L_list.begin(), config.L_list.end()) ||
      std::adjacent_find(config.L_list.begin(), config.L_list.end()) != config.L_list.end()) {
    throw ConfigError("scaling study needs strictly increasing L values");
  }
  ScalingResult r;
  for (int L : config.L_list) {
    const auto m = build_mother_instance(config.U, L, config.ladder, MotherMode::ASYMPTOTIC,
                                         config.tol.quad_rel);
    ScalingRow row;
    row.L = L;
    row.theta = m.theta;
    row.abs_theta_minus_1 = std::abs(m.theta - 1.0);
    row.lnln_over_ln = lnln_over_ln(std::numbers::pi * L);
    row.ratio = row.abs_theta_minus_1 / row.lnln_over_ln;
    r.rows.push_back(row);
  }
  const std::size_t lower = (r.rows.size() + 1) / 2;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lower; ++i) {
    sxy += r.rows[i].abs_theta_minus_1 * r.rows[i].lnln_over_ln;
    sxx += r.rows[i].lnln_over_ln * r.rows[i].lnln_over_ln;
  }
  r.fitted_constant = sxy / sxx;
  for (std::size_t i = lower; i < r.rows.size(); ++i) {
    r.max_upper_ratio = std::max(r.max_upper_ratio, r.rows[i].ratio);
  }
  r.within_bound = r.max_upper_ratio <= 2.0 * r.fitted_constant;
  return r;
}

std::string scaling_csv(const ScalingResult& result) {
  std::ostringstream s;
  s << "L,theta,abs_theta_minus_1,lnln_over_ln,ratio\n";
  for (const auto& r : result.rows) {
    s << r.L << "," << fmt(r.theta) << "," << fmt(r.abs_theta_minus_1) << ","
      << fmt(r.lnln_over_ln) << "," << fmt(r.ratio) << "\n";
  }
  return s.str();
}

std::vector<Slot> parse_slots(const std::string& text) {
  std::vector<Slot> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("slot must be n:l, got '" + item + "'");
    out.push_back({to_int<int>("slots", trim(item.substr(0, colon))),
                   to_int<int>("slots", trim(item.substr(colon + 1)))});
  }
  return out;
}

AtlasResult emit_atlas(const RunConfig& config, const std::vector<Slot>& slots,
                       const std::filesystem::path& out_dir) {
  config.validate();
  AtlasResult out;
  out.summary["arcs"] = json::array();
  out.summary["warnings"] = json::array();
  if (slots.empty()) {
    out.summary["note"] = "no arcs requested";
    return out;
  }
  const int L = config.L_list.front();
  const ParameterSet params = run_parameter_sets(config).front();
  const MotherInstance inst =
      build_mother_instance(config.U, L, config.ladder, config.mode, config.tol.quad_rel);
  const LevelAssignment assign = build_level_assignments(inst, params);
  out.summary["U"] = config.U;
  out.summary["L"] = L;
  out.summary["parameters"] = params_json(params);

  std::filesystem::create_directories(out_dir);
  for (const Slot& slot : slots) {
    if (slot.n < 3 || slot.n > 12 || slot.l < 1 || slot.l > 3) {
      out.summary["warnings"].push_back("slot " + std::to_string(slot.n) + ":" +
                                        std::to_string(slot.l) + " does not exist; skipped");
      continue;
    }
    const LevelPoint& start = assign.at(slot.n, slot.l);
    double step = config.arc_step;
    if (start.spec.family.kind == FamilyKind::POWER && config.arc_count > 0) {
      // The locus is a circle: spread the vertices once around it.
      step = std::clamp(2.0 * std::numbers::pi * std::abs(Complex(start.s)) / config.arc_count,
                        1.0001e-4, 0.0999);
    }
    const LevelArc arc = trace_level_arc(start.spec, start, step, config.arc_count);
    const std::filesystem::path file =
        out_dir / ("slot_" + std::to_string(slot.n) + "_" + std::to_string(slot.l) + ".csv");
    std::ofstream csv(file);
    csv << "re,im,residual\n";
    const double bound = 1e-9 * std::max(1.0, start.spec.target);
    double worst = 0.0;
    for (const auto& v : arc.vertices) {
      const double res = level_residual(start.spec, v);
      worst = std::max(worst, res);
      csv << fmt(v.re()) << "," << fmt(v.im()) << "," << fmt(res) << "\n";
    }
    const bool ok = worst <= bound;
    out.certified = out.certified && ok;
    out.files.push_back(file);
    out.summary["arcs"].push_back({{"n", slot.n},
                                   {"l", slot.l},
                                   {"family", start.spec.family.name()},
                                   {"target", start.spec.target},
                                   {"file", file.filename().string()},
                                   {"vertices", arc.vertices.size()},
                                   {"step", step},
                                   {"truncated", arc.truncated},
                                   {"reason", arc.reason},
                                   {"max_residual", worst},
                                   {"certified", ok}});
  }
  std::ofstream(out_dir / "atlas.json") << out.summary.dump(2) << "\n";
  return out;
}

}  // namespace zmeta
