// copa: command-line front end for the CoPA knowledge base.
//
//   copa [--config PATH] [settings...] <stats|match|invent|eval|features> [args]
//
// Settings come from the config file, then COPA_* environment variables, then
// flags. Exit codes: 0 ok, 2 configuration, 3 domain, 4 I/O.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "copa/cli/commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Match debate motions to classes of principled arguments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "Settings file (key = value)");

  // Every setting is also a flag; values are validated by the config layer.
  std::map<std::string, std::string> values;
  for (const auto& name : copa::cli::setting_names()) {
    if (name == "exclude_general") continue;
    std::string flag = "--" + name;
    for (char& c : flag)
      if (c == '_') c = '-';
    app.add_option(flag, values[name], "Override setting '" + name + "'");
  }
  bool exclude_general = false;
  app.add_flag("--exclude-general", exclude_general, "Leave the general CoPAs out of statistics and curves");

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  auto* match = app.add_subcommand("match", "Rank CoPAs for a motion and instantiate their claims");
  auto* invent = app.add_subcommand("invent", "Build a syllogism-style argument for a motion");
  auto* eval = app.add_subcommand("eval", "Leave-one-out evaluation; writes curves and a summary");
  auto* features = app.add_subcommand("features", "Dump the 17 pair features as CSV");

  std::string action, topic, copa_key, stance = "pro", minor, lead = "we should";
  for (auto* sub : {match, invent}) {
    sub->add_option("--action", action, "Motion action id")->required();
    sub->add_option("--topic", topic, "Motion topic")->required();
  }
  invent->add_option("--copa", copa_key, "CoPA id or name")->required();
  invent->add_option("--stance", stance, "pro or con")->check(CLI::IsMember({"pro", "con"}));
  auto* minor_opt = invent->add_option("--minor", minor, "Minor premise to use instead of the default");
  invent->add_option("--lead", lead, "Subject and modal opening the conclusion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    std::vector<std::pair<std::string, std::string>> flags;
    for (const auto& [name, value] : values) {
      std::string flag = "--" + name;
      for (char& c : flag)
        if (c == '_') c = '-';
      if (app.count(flag) > 0) flags.emplace_back(name, value);
    }
    if (exclude_general) flags.emplace_back("exclude_general", "true");
    if (config_path.empty())
      if (const char* env = std::getenv("COPA_CONFIG")) config_path = env;
    copa::cli::AppConfig cfg = copa::cli::resolve_config(config_path, flags);

    if (*stats) {
      copa::cli::cmd_stats(cfg, std::cout);
    } else if (*match) {
      copa::cli::cmd_match(cfg, action, topic, std::cout);
    } else if (*invent) {
      copa::SyllogismOptions opts;
      if (minor_opt->count() > 0) opts.minor_override = minor;
      opts.conclusion_lead = lead;
      copa::cli::cmd_invent(cfg, action, topic, copa_key, copa::parse_stance(stance), opts, std::cout);
    } else if (*eval) {
      copa::cli::cmd_eval(cfg, std::cerr);
    } else if (*features) {
      copa::cli::cmd_features(cfg, std::cout);
    }
    std::cout.flush();
    if (!std::cout) throw copa::IoError("failed writing to stdout");
  } catch (const copa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const copa::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const copa::ParseError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const copa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
