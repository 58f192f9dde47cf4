#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prokit/cli.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const prokit::cli::Result& r, bool verbose, const std::string& out_path) {
  std::cout << r.report;
  if (verbose || r.exit_code != prokit::cli::kHolds) std::cerr << r.summary;
  if (r.document && !out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return prokit::cli::kUsage;
    }
    out << *r.document;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prokit: delay-inverse systems and their morphisms"};
  app.require_subcommand(1);

  std::string file, mode = "delay", op, subset, out_path, backend = "finset";
  std::optional<std::size_t> horizon, probe, start;
  bool verbose = false, inject = false;
  std::size_t seeds = 200, len = 64, max_delay = 8;
  std::uint64_t base_seed = 0;

  auto window_flags = [&](CLI::App* c) {
    c->add_option("--horizon", horizon, "window horizon H (default: document, PROKIT_HORIZON, 32)");
    c->add_option("--probe", probe, "rank bound for universally quantified elements");
    c->add_flag("--verbose", verbose, "human-readable summary on stderr");
  };

  auto* check = app.add_subcommand("check", "well-formedness plus delay or strict commutativity");
  check->add_option("document", file, "system document")->required();
  check->add_option("--mode", mode, "delay | strict");
  window_flags(check);

  auto* reduce = app.add_subcommand("reduce", "restrict, mardesic, sequence or extract");
  reduce->add_option("document", file, "system document")->required();
  reduce->add_option("--op", op, "restrict | mardesic | sequence | extract")->required();
  reduce->add_option("--subset", subset, "evens | odds | tail:N | comma-separated members");
  reduce->add_option("--start", start, "position of the first chain element (extract)");
  reduce->add_option("--out", out_path, "write the reduced system document here");
  window_flags(reduce);

  auto* morph = app.add_subcommand("morphism", "delay-morphism checks");
  morph->add_option("document", file, "morphism document")->required();
  morph->add_option("--op", op, "check | equiv | special | level | extract-iso")->required();
  window_flags(morph);

  auto* fuzz = app.add_subcommand("fuzz", "plant-and-verify suite");
  fuzz->add_option("--seeds", seeds, "number of seeds");
  fuzz->add_option("--len", len, "sequence length");
  fuzz->add_option("--backend", backend, "finset | matmod");
  fuzz->add_option("--max-delay", max_delay, "largest planted delay");
  fuzz->add_option("--base-seed", base_seed, "first seed");
  fuzz->add_flag("--inject-fault", inject)->group("");
  window_flags(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return prokit::cli::kUsage;
  }

  const prokit::cli::Window window{horizon, probe};
  if (*fuzz) {
    if (backend != "finset" && backend != "matmod") {
      std::cerr << "--backend must be finset or matmod\n";
      return prokit::cli::kUsage;
    }
    prokit::FuzzOptions o;
    o.length = len;
    o.backend = backend == "finset" ? prokit::Backend::FinSet : prokit::Backend::MatMod;
    o.horizon = horizon ? *horizon : 64;
    o.probe = probe ? *probe : o.horizon / 2;
    o.max_delay = max_delay;
    o.base_seed = base_seed;
    o.inject_fault = inject;
    return emit(prokit::cli::fuzz(o, seeds), verbose, "");
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "cannot read " << file << "\n";
    return prokit::cli::kUsage;
  }
  if (*check) return emit(prokit::cli::check(text, mode, window), verbose, "");
  if (*reduce) return emit(prokit::cli::reduce(text, op, subset, start, window), verbose, out_path);
  return emit(prokit::cli::morphism(text, op, window), verbose, "");
}
