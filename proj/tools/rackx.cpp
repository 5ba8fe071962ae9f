// rackx: finite racks, crossed modules and pullback certification.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rackx/cli.hpp"

namespace {

struct InputFlags {
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd, std::initializer_list<const char*> names) {
    for (const char* name : names) {
      values[name];
      cmd->add_option(std::string("--") + name, values[name], std::string(name) + " file");
    }
  }

  rackx::cli::Inputs inputs(std::vector<std::string> positional) const {
    rackx::cli::Inputs in;
    for (const auto& [k, v] : values)
      if (!v.empty()) in.named[k] = v;
    in.positional = std::move(positional);
    return in;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rackx - finite racks, crossed modules of racks and their pullbacks"};
  app.require_subcommand(1);

  std::string report;
  bool timing = false;
  auto options = [&] {
    rackx::cli::Options o;
    if (!report.empty()) o.report_path = report;
    o.timing = timing;
    return o;
  };

  auto* check = app.add_subcommand("check", "validate a structure file of any kind");
  std::string check_path;
  check->add_option("path", check_path, "structure file")->required();
  check->add_option("--report", report, "also write the report here");
  check->add_flag("--timing", timing, "include wall-clock timing in the report");

  auto* construct = app.add_subcommand("construct", "build a structure and write it");
  std::string construct_kind, out;
  std::vector<std::string> construct_args;
  InputFlags construct_flags;
  construct
      ->add_option("kind", construct_kind,
                   "conj|core|point|product|hemisemi|fiber|pullback|group-pullback")
      ->required();
  construct->add_option("inputs", construct_args, "positional inputs (product)");
  construct_flags.attach(construct, {"group", "rack", "action", "left", "right", "xmod", "hom",
                                     "request", "gxmod", "ghom"});
  construct->add_option("--out", out, "output file (default: standard output)");

  auto* certify = app.add_subcommand("certify", "run a verifier and print a certificate");
  std::string certify_kind;
  InputFlags certify_flags;
  certify->add_option("kind", certify_kind, "universal|adjunction|xmod-adjunction|conj-preserves")
      ->required();
  certify_flags.attach(certify, {"xmod", "hom", "test", "request", "rack", "group", "gxmod", "ghom"});
  certify->add_option("--report", report, "also write the certificate here");
  certify->add_flag("--timing", timing, "include wall-clock timing in the report");

  auto* corpus = app.add_subcommand("corpus", "write the enumerated corpus to a directory");
  std::size_t bound = 0;
  std::string corpus_out = "corpus";
  corpus->add_option("n", bound, "largest rack order to enumerate");
  corpus->add_option("--bound", bound, "largest rack order to enumerate");
  corpus->add_option("--out", corpus_out, "output directory");
  corpus->add_option("--report", report, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rackx::cli::kBadInput;
  }

  if (check->parsed()) return rackx::cli::check(check_path, std::cout, std::cerr, options());
  if (construct->parsed())
    return rackx::cli::construct(construct_kind, construct_flags.inputs(construct_args),
                                 out.empty() ? std::nullopt : std::optional<std::string>(out),
                                 std::cout, std::cerr);
  if (certify->parsed())
    return rackx::cli::certify(certify_kind, certify_flags.inputs({}), std::cout, std::cerr,
                               options());
  if (bound == 0) bound = rackx::configured_bound();
  return rackx::cli::corpus(bound, corpus_out, std::cout, std::cerr, options());
}
