#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "algchar/parallel.hpp"
#include "algchar/scenario.hpp"

using namespace algchar;

int main(int argc, char** argv) {
  CLI::App app{"Exact characteristic-class engine for Lie algebroids"};
  app.require_subcommand(1);

  std::string path, field_str, format = "human", out_path;
  bool check = false;
  int truncation = -1;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", path, "scenario file")->required();
  run->add_option("--field", field_str, "override the field (Q or Qi)");
  run->add_flag("--check", check, "run the invariant suite on every object");
  run->add_option("--truncation", truncation,
                  "polynomial degree bound for primitive searches");
  run->add_option("--format", format, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));
  run->add_option("--out", out_path, "write the report to a file");
  run->add_option("--threads", threads, "0 = serial kernels");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<Field> field;
    if (!field_str.empty()) {
      if (field_str == "Q")
        field = Field::Q;
      else if (field_str == "Qi")
        field = Field::Qi;
      else {
        std::cerr << "field must be Q or Qi\n";
        return 2;
      }
    }
    par::set_enabled(threads != 0);

    Scenario sc = parse_scenario_file(path, field);
    RunOptions opts;
    opts.check = check;
    if (truncation >= 0) opts.truncation = truncation;
    Report rep = run_scenario(sc, opts);

    std::string text = format == "machine" ? rep.machine().dump(2) + "\n"
                                           : rep.human();
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
      }
      out << text;
    }
    return rep.exit_code();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
