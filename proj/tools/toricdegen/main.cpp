#include "toricdegen/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

bool read_all(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  text = os.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = toricdegen::cli;
  CLI::App app{"Semi-stable degenerations from partitions of lattice polytopes"};
  app.require_subcommand(1);

  std::string spec_path, dot_path, svg_path;
  cli::Overrides overrides;
  std::size_t anchor = 0;
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"verify", "classify the partition"},
      {"lift", "classify and build the lifted polytope"},
      {"degenerate", "lift and report components, charts and family equations"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("spec", spec_path, "JSON job file, or - for stdin")->required();
    sub->add_flag("--compact-cap", overrides.compact_cap, "cap the lifted polytope from above");
    sub->add_flag("--multi-base", overrides.multi_base, "also run the iterated multi-parameter lift");
    sub->add_option("--anchor", anchor, "piece on which the family exponents vanish");
    sub->add_option("--seed", seed, "seed for numeric coefficients");
    sub->add_option("--dot", dot_path, "write the dual graph in DOT format");
    sub->add_option("--svg", svg_path, "write an SVG of a 2-dimensional partition");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << cli::error_line("usage", e.what()) << "\n";
    return cli::BadInput;
  }

  const auto* sub = app.get_subcommands().front();
  if (sub->count("--anchor")) overrides.anchor_piece = anchor;
  if (sub->count("--seed")) overrides.coefficient_seed = seed;

  std::string text;
  if (!read_all(spec_path, text)) {
    std::cout << cli::error_line("input", "cannot read " + spec_path, spec_path) << "\n";
    return cli::BadInput;
  }

  cli::Outcome out = cli::run(sub->get_name(), text, overrides);
  if (out.exit_code == cli::Ok) {
    if (!dot_path.empty() && out.dot && !write_file(dot_path, *out.dot)) {
      out.lines.push_back(cli::error_line("output", "cannot write " + dot_path, dot_path));
      out.exit_code = cli::BadInput;
    }
    if (!svg_path.empty()) {
      if (!out.svg) {
        out.lines.push_back(cli::error_line("output", "SVG output needs a 2-dimensional polytope", svg_path));
        out.exit_code = cli::BadInput;
      } else if (!write_file(svg_path, *out.svg)) {
        out.lines.push_back(cli::error_line("output", "cannot write " + svg_path, svg_path));
        out.exit_code = cli::BadInput;
      }
    }
  }
  for (const auto& line : out.lines) std::cout << line << "\n";
  return out.exit_code;
}
