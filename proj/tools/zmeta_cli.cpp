// zmeta verify | scaling | atlas
//
// Exit status: 0 certified, 1 certification failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "zmeta/errors.hpp"
#include "zmeta/harness.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string U, L, mode, ladder, seed;
  std::string out;
};

void add_overrides(CLI::App* cmd, Overrides& o, bool full) {
  cmd->add_option("--config", o.config, "configuration file")->required();
  if (full) {
    cmd->add_option("--U", o.U, "half-width U in (0, pi/4)");
    cmd->add_option("--L", o.L, "comma-separated L values");
    cmd->add_option("--mode", o.mode, "exact | asymptotic");
    cmd->add_option("--ladder", o.ladder, "asymptotic | affine:DELTA");
    cmd->add_option("--seed", o.seed, "parameter draw seed");
  }
}

zmeta::RunConfig resolve(const Overrides& o) {
  zmeta::RunConfig c = zmeta::load_config(o.config);
  const std::pair<const char*, const std::string*> keys[] = {
      {"U", &o.U}, {"L", &o.L}, {"mode", &o.mode}, {"ladder", &o.ladder}, {"seed", &o.seed}};
  for (const auto& [key, value] : keys) {
    if (!value->empty()) zmeta::set_config_value(c, key, *value);
  }
  c.validate();
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw zmeta::ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify zeta-line three-term formulas and their transmutations"};
  app.require_subcommand(1);

  Overrides verify_o, scaling_o, atlas_o;
  auto* verify = app.add_subcommand("verify", "run the certification grid and write a report");
  add_overrides(verify, verify_o, true);
  verify->add_option("--out", verify_o.out, "report path");

  auto* scaling = app.add_subcommand("scaling", "measure |theta - 1| against L");
  add_overrides(scaling, scaling_o, false);
  scaling->add_option("--out", scaling_o.out, "CSV path");

  std::string slots;
  auto* atlas = app.add_subcommand("atlas", "trace level-curve arcs for chosen slots");
  add_overrides(atlas, atlas_o, false);
  atlas->add_option("--slots", slots, "n:l pairs, e.g. 8:1,12:2")->required();
  atlas->add_option("--out-dir", atlas_o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      const auto c = resolve(verify_o);
      const auto result = zmeta::run(c);
      const std::string path = verify_o.out.empty() ? c.report_path : verify_o.out;
      write_file(path, result.report.dump(2) + "\n");
      const auto& s = result.report["payload"]["summary"];
      std::cout << (result.certified ? "CERTIFIED" : "NOT CERTIFIED") << ": "
                << s["meta_equation_count"] << " meta-equations, max residual "
                << s["max_meta_equation_residual"] << ", " << s["failures"].size()
                << " failures; report " << path << "\n";
      return result.certified ? 0 : 1;
    }
    if (*scaling) {
      const auto c = resolve(scaling_o);
      const auto result = zmeta::scaling_study(c);
      const std::string path = scaling_o.out.empty() ? c.scaling_path : scaling_o.out;
      write_file(path, zmeta::scaling_csv(result));
      std::cout << "fitted C = " << result.fitted_constant << ", max upper ratio "
                << result.max_upper_ratio << (result.within_bound ? " (within 2C)" : " (exceeds 2C)")
                << "; wrote " << path << "\n";
      return result.within_bound ? 0 : 1;
    }
    if (*atlas) {
      const auto c = resolve(atlas_o);
      const std::string dir = atlas_o.out.empty() ? c.atlas_dir : atlas_o.out;
      const auto result = zmeta::emit_atlas(c, zmeta::parse_slots(slots), dir);
      std::cout << result.summary.dump(2) << "\n";
      return result.certified ? 0 : 1;
    }
  } catch (const zmeta::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
