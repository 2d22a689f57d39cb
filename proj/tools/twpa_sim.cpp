#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "twpa/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Josephson travelling-wave parametric amplifier simulator"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  for (std::string_view name : twpa::subcommands) {
    CLI::App* sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : twpa::exit_config;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  const std::optional<std::filesystem::path> out =
      out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);
  return twpa::run(subcommand, config_path, out, std::cerr);
}
