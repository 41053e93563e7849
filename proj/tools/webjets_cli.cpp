#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "webjets/commands.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw webjets::Error(webjets::ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

webjets::WebSpec load(const std::string& path) { return webjets::parse_web_spec(slurp(path)); }

int emit(const webjets::CommandResult& r, bool json) {
  if (json)
    std::cout << r.json.dump(2) << "\n";
  else
    std::cout << r.text;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact jets, normal forms and isomorphism obstructions of planar linear 3-webs"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string input;
  std::optional<int> jet;
  auto* characteristic = app.add_subcommand("characteristic", "car_W at the origin (and optionally its jet)");
  characteristic->add_option("web", input, "Web spec JSON file (default: stdin)");
  characteristic->add_option("--jet", jet, "Also print the characteristic jet to this order");
  characteristic->add_flag("--json", json);

  int k = 3;
  auto* normal_form = app.add_subcommand("normal-form", "mu and the E_ij of the normal form");
  normal_form->add_option("web", input, "Web spec JSON file (default: stdin)");
  normal_form->add_option("-k,--order", k, "Normal-form order")->check(CLI::NonNegativeNumber);
  normal_form->add_flag("--json", json);

  std::string second;
  auto* compare = app.add_subcommand("compare", "Compare two webs through order k");
  compare->add_option("first", input, "First web spec")->required();
  compare->add_option("second", second, "Second web spec (default: stdin)");
  compare->add_option("-k,--order", k, "Comparison order")->check(CLI::NonNegativeNumber);
  compare->add_flag("--json", json);

  int order = 1, samples = 3;
  std::uint64_t seed = 1;
  auto* obstruct = app.add_subcommand("obstruct", "Obstruction equations T_ij = 0 and their solutions");
  obstruct->add_option("web", input, "Web spec JSON file (default: stdin)");
  obstruct->add_option("-k,--order", order, "Obstruction order (1..5)")->check(CLI::Range(1, 5));
  obstruct->add_option("--samples", samples, "Random samples for orders 3..5")->check(CLI::PositiveNumber);
  obstruct->add_option("--seed", seed, "First sample seed");
  obstruct->add_flag("--json", json);

  auto* verify = app.add_subcommand("verify-paper", "Check the published identities");
  verify->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*characteristic) return emit(webjets::cmd_characteristic(load(input), jet), json);
    if (*normal_form) return emit(webjets::cmd_normal_form(load(input), k), json);
    if (*compare) return emit(webjets::cmd_compare(load(input), load(second), k), json);
    if (*obstruct) return emit(webjets::cmd_obstruct(load(input), order, samples, seed), json);
    if (*verify) return emit(webjets::cmd_verify_paper(), json);
  } catch (const webjets::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
