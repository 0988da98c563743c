// fatpoints: Hilbert functions, regularity indices and Segre bounds of fat
// point schemes from the command line.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fatpoints/error.hpp"
#include "fatpoints/generate.hpp"
#include "fatpoints/io.hpp"
#include "fatpoints/scheme.hpp"
#include "fatpoints/segre.hpp"
#include "fatpoints/verify.hpp"

using namespace fatpoints;

namespace {

struct SchemeArgs {
  std::string path;
  std::string field;  // empty: keep the file's field
  std::uint64_t prime = kDefaultPrime;
};

void add_scheme_args(CLI::App* cmd, SchemeArgs& a) {
  cmd->add_option("scheme,-s,--scheme", a.path, "Scheme JSON file");
  cmd->add_option("--field", a.field, "Recompute over this field (rational or prime)")
      ->check(CLI::IsMember({"rational", "prime"}));
  cmd->add_option("--prime", a.prime, "Modulus for --field prime");
}

FatPointScheme load(const SchemeArgs& a) {
  if (a.path.empty()) throw InvalidInput("no scheme file given");
  FatPointScheme z = read_scheme_file(a.path);
  if (a.field == "prime") return z.reduced_to(Field::prime(a.prime));
  if (a.field == "rational" && !z.field().is_rational()) throw InvalidInput("a prime-field scheme cannot be lifted to Q");
  return z;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

std::vector<unsigned> parse_multiplicities(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw InvalidInput("multiplicities must be positive integers, got '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty multiplicity list");
  return out;
}

std::vector<std::string> split_suites(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity index and Segre bound of fat points in P^n"};
  app.require_subcommand(1);

  SchemeArgs scheme_args;
  std::string format;
  std::string out_path;

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert function table");
  add_scheme_args(hilbert_cmd, scheme_args);
  std::optional<unsigned> t_max;
  hilbert_cmd->add_option("--t-max", t_max, "Last degree (default: the regularity index)");
  hilbert_cmd->add_option("--format", format, "plain, json or csv");

  auto* reg_cmd = app.add_subcommand("reg", "Regularity index");
  add_scheme_args(reg_cmd, scheme_args);
  reg_cmd->add_option("--format", format, "plain, json or csv");

  auto* segre_cmd = app.add_subcommand("segre", "Segre bound with per-j witnesses");
  add_scheme_args(segre_cmd, scheme_args);
  segre_cmd->add_option("--format", format, "plain, json or csv (default json)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a scheme from a configuration family");
  std::string family = "generic";
  std::size_t gen_n = 2;
  std::size_t gen_s = 0;
  std::string gen_m = "1";
  std::uint64_t seed = 0;
  std::size_t gen_r = 0;
  long long coord_bound = 10000;
  std::string gen_field = "rational";
  std::uint64_t gen_prime = kDefaultPrime;
  gen_cmd->add_option("--family", family, "generic, nondegenerate, collinear, simplex, rnc, on-flat-general-position, "
                                          "two-lines, two-lines-lifted");
  gen_cmd->add_option("--n", gen_n, "Ambient dimension");
  gen_cmd->add_option("--s", gen_s, "Number of points (0: family default)");
  gen_cmd->add_option("--m", gen_m, "Multiplicity, or a comma-separated list with one entry per point");
  gen_cmd->add_option("--seed", seed, "Seed");
  gen_cmd->add_option("--r", gen_r, "Flat dimension for on-flat-general-position");
  gen_cmd->add_option("--coord-bound", coord_bound, "Coordinates are drawn from [-b, b]");
  gen_cmd->add_option("--field", gen_field, "rational or prime")->check(CLI::IsMember({"rational", "prime"}));
  gen_cmd->add_option("--prime", gen_prime, "Modulus for --field prime");
  gen_cmd->add_option("-o,--out", out_path, "Output file (default: standard output)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized check suites");
  std::vector<std::string> suites;
  std::size_t trials = 25;
  std::uint64_t verify_seed = 42;
  std::string verify_field = "prime";
  verify_cmd->add_option("--suite", suites, "Suite name(s) or all");
  verify_cmd->add_option("--trials", trials, "Schemes per suite");
  verify_cmd->add_option("--seed", verify_seed, "Seed");
  verify_cmd->add_option("--field", verify_field, "prime: compute over F_p and recheck failures over Q; rational: Q only")
      ->check(CLI::IsMember({"rational", "prime"}));
  verify_cmd->add_option("-o,--out", out_path, "Write the JSON report here");
  verify_cmd->add_option("--format", format, "plain or json for standard output");

  auto* cmp_cmd = app.add_subcommand("compare-embedding", "Profiles of a scheme and of a seeded embedding");
  add_scheme_args(cmp_cmd, scheme_args);
  std::optional<std::size_t> target_n;
  cmp_cmd->add_option("--target-n", target_n, "Target dimension (default n+1)");
  cmp_cmd->add_option("--seed", seed, "Seed for the embedding map");
  cmp_cmd->add_option("--t-max", t_max, "Last degree (default: the larger regularity index)");
  cmp_cmd->add_option("--format", format, "json or plain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (hilbert_cmd->parsed()) {
      const FatPointScheme z = load(scheme_args);
      const unsigned tm = t_max ? *t_max : regularity_index(z);
      std::cout << format_profile(hilbert_profile(z, tm), parse_format(format.empty() ? "plain" : format));
      return 0;
    }
    if (reg_cmd->parsed()) {
      const FatPointScheme z = load(scheme_args);
      const unsigned reg = regularity_index(z);
      switch (parse_format(format.empty() ? "plain" : format)) {
        case OutputFormat::plain:
          std::cout << reg << "\n";
          break;
        case OutputFormat::json:
          std::cout << Json{{"regularity_index", reg}, {"multiplicity", multiplicity(z)}}.dump(2) << "\n";
          break;
        case OutputFormat::csv:
          std::cout << "regularity_index,multiplicity\n" << reg << "," << multiplicity(z) << "\n";
          break;
      }
      return 0;
    }
    if (segre_cmd->parsed()) {
      const FatPointScheme z = load(scheme_args);
      std::cout << format_segre(segre_bound(z), parse_format(format.empty() ? "json" : format));
      return 0;
    }
    if (gen_cmd->parsed()) {
      GenSpec spec;
      spec.family = parse_family(family);
      spec.n = gen_n;
      spec.s = gen_s;
      const auto ms = parse_multiplicities(gen_m);
      if (ms.size() == 1) {
        spec.m = ms[0];
      } else {
        spec.multiplicities = ms;
      }
      spec.seed = seed;
      spec.r = gen_r;
      spec.coord_bound = coord_bound;
      spec.field = gen_field == "prime" ? Field::prime(gen_prime) : Field::rational();
      emit(serialize_scheme(generate(spec)), out_path);
      return 0;
    }
    if (verify_cmd->parsed()) {
      SuiteConfig cfg;
      cfg.suites = suites.empty() ? std::vector<std::string>{"all"} : split_suites(suites);
      cfg.trials = trials;
      cfg.seed = verify_seed;
      cfg.options.prime_fast_path = verify_field == "prime";
      const SuiteReport report = run_theorem_suite(cfg);
      const std::string json = report_to_json(report, cfg).dump(2) + "\n";
      if (!out_path.empty()) write_text_file(out_path, json);
      const OutputFormat fmt = parse_format(format.empty() ? "plain" : format);
      if (fmt == OutputFormat::csv) throw InvalidInput("verify prints plain or json");
      std::cout << (fmt == OutputFormat::json ? json : format_report_plain(report));
      return report.ok() ? 0 : 1;
    }
    if (cmp_cmd->parsed()) {
      const FatPointScheme z = load(scheme_args);
      const std::size_t target = target_n ? *target_n : z.n() + 1;
      const Matrix map = random_embedding_map(z.n(), target, seed, z.field());
      const FatPointScheme up = embed(z, target, map);
      const unsigned r0 = regularity_index(z);
      const unsigned r1 = regularity_index(up);
      const unsigned tm = t_max ? *t_max : std::max(r0, r1);
      const HilbertProfile p0 = hilbert_profile(z, tm);
      const HilbertProfile p1 = hilbert_profile(up, tm);
      const OutputFormat fmt = parse_format(format.empty() ? "json" : format);
      if (fmt == OutputFormat::json) {
        Json map_json = Json::array();
        for (std::size_t i = 0; i < map.rows(); ++i) {
          Json row = Json::array();
          for (std::size_t j = 0; j < map.cols(); ++j) row.push_back(map.at(i, j).to_string());
          map_json.push_back(row);
        }
        Json j;
        j["target_n"] = target;
        j["seed"] = seed;
        j["map"] = map_json;
        j["original"] = profile_to_json(p0);
        j["embedded"] = profile_to_json(p1);
        j["regularity_equal"] = r0 == r1;
        std::cout << j.dump(2) << "\n";
      } else if (fmt == OutputFormat::plain) {
        std::cout << "P^" << z.n() << ":\n" << format_profile(p0, fmt) << "P^" << target << ":\n"
                  << format_profile(p1, fmt);
      } else {
        throw InvalidInput("compare-embedding prints json or plain");
      }
      return r0 == r1 ? 0 : 1;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedCharacteristic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
