// blockdec: validate, check and decompose persistence modules on finite grids.
//
// Exit codes: 0 positive verdict, 1 negative verdict, 2 input error,
// 3 incomplete (probabilistic residue or an engine self-check failure).

#include "blockdec/corpus.hpp"
#include "blockdec/decomp.hpp"
#include "blockdec/fixtures.hpp"
#include "blockdec/io.hpp"
#include "blockdec/koszul.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace blockdec;

namespace {

enum Exit { kPositive = 0, kNegative = 1, kInputError = 2, kIncomplete = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::uint32_t> field;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  const char* env = std::getenv("BLOCKDEC_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const std::string s(env);
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("BLOCKDEC_SEED is not an unsigned integer: ") + env);
  }
}

PrimeField field_of(const Common& c) { return c.field ? PrimeField(*c.field) : PrimeField(); }

GridModule load(const std::string& path, const Common& c) {
  GridModule m = read_module_file(path, c.field);
  if (const auto v = validate(m); !v.empty())
    throw InputError("module does not commute at " + to_string(v.front().point));
  return m;
}

int emit(const json& report, int code) {
  std::cout << dump(report);
  return code;
}

std::vector<int> parse_shape(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad shape entry '" + item + "'");
    }
  }
  if (sizes.empty()) throw InputError("empty shape");
  for (int s : sizes)
    if (s < 1) throw InputError("shape entries must be at least 1");
  return sizes;
}

int cmd_validate(const std::string& path, const Common& c) {
  const GridModule m = read_module_file(path, c.field);
  const auto v = validate(m);
  if (v.empty()) return emit({{"verdict", "valid"}}, kPositive);
  return emit({{"verdict", "invalid"}, {"violation", to_json(v.front())}}, kNegative);
}

struct CheckFlags {
  bool profile = false;
  bool witness = false;
  int jobs = 1;
};

int cmd_check(const std::string& path, const Common& c, const CheckFlags& fl) {
  const GridModule m = load(path, c);
  CheckOptions opt;
  opt.jobs = fl.jobs;
  const auto w = local_block_witness(m, opt);
  json report = {{"verdict", w ? "not_block_decomposable" : "block_decomposable"}};
  if (w) {
    report["witness"] = to_json(*w);
    if (fl.witness)
      report["witness"]["homology"] = homology_dims(m.field(), koszul_complex(m, w->cube));
  }
  if (fl.profile) report["profile"] = to_json(exactness_profile(m, opt));
  return emit(report, w ? kNegative : kPositive);
}

struct DecomposeFlags {
  std::string method = "auto";
  int trials = 24;
  int retries = 3;
  int jobs = 1;
  bool timing = false;
  bool trace = false;
};

int cmd_decompose(const std::string& path, const Common& c, const DecomposeFlags& fl) {
  const GridModule m = load(path, c);
  DecomposeOptions opt;
  const auto method = parse_method(fl.method);
  if (!method) throw InputError("unknown method '" + fl.method + "'");
  opt.method = *method;
  opt.seed = resolve_seed(c);
  opt.trials = fl.trials;
  opt.retries = fl.retries;
  opt.jobs = fl.jobs;

  const auto start = std::chrono::steady_clock::now();
  json report;
  int code = kPositive;
  try {
    const DecomposeResult r = decompose_blocks(m, opt);
    const Decomposition& d = r.decomposition;
    switch (r.status) {
      case DecomposeStatus::decomposed:
        report = {{"verdict", "block_decomposable"}, {"method", to_string(d.method)},
                  {"decomposition", to_json(d.blocks)}};
        break;
      case DecomposeStatus::failure:
        report = {{"verdict", "not_block_decomposable"}, {"witness", to_json(*r.witness)}};
        code = kNegative;
        break;
      case DecomposeStatus::incomplete:
        report = {{"verdict", "incomplete"}, {"method", to_string(d.method)},
                  {"decomposition", to_json(d.blocks)}, {"unsplit", d.unsplit.size()}};
        code = kIncomplete;
        break;
    }
    if (fl.trace && r.status != DecomposeStatus::failure) report["trace"] = d.trace;
  } catch (const InternalInconsistency& e) {
    report = {{"verdict", "incomplete"}, {"error", e.what()}};
    code = kIncomplete;
  }
  if (fl.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["timing"] = {{"seconds", dt.count()}};
  }
  return emit(report, code);
}

struct GenFlags {
  std::string shape;
  std::optional<int> blocks;
  std::optional<int> intervals;
  std::string out;
};

int cmd_gen(const Common& c, const GenFlags& fl) {
  const GridShape shape(parse_shape(fl.shape));
  const PrimeField f = field_of(c);
  const std::uint64_t seed = resolve_seed(c);
  if (fl.blocks) {
    if (*fl.blocks < 0) throw InputError("--blocks must be non-negative");
    if (shape.ndim() < 2) throw InputError("block sums need at least two axes");
    const BlockSample s = random_block_sum(shape, *fl.blocks, seed, f);
    write_module_file(fl.out, s.module);
    write_text_file(fl.out + ".truth.json", dump({{"decomposition", to_json(s.truth)}}));
  } else {
    if (*fl.intervals < 0) throw InputError("--intervals must be non-negative");
    const IntervalSample s = random_interval_sum(shape, *fl.intervals, seed, f);
    json ivs = json::array();
    bool blocks_only = true;
    for (const auto& iv : s.intervals) {
      ivs.push_back(iv);
      blocks_only = blocks_only && is_block(shape, iv);
    }
    write_module_file(fl.out, s.module);
    write_text_file(fl.out + ".truth.json", dump({{"intervals", ivs}, {"allBlocks", blocks_only}}));
  }
  return kPositive;
}

int cmd_fixture(const std::string& name, const Common& c, const std::string& out) {
  const auto m = fixture(name, field_of(c));
  if (!m) throw InputError("unknown fixture '" + name + "'");
  if (out.empty())
    std::cout << dump(module_to_json(*m));
  else
    write_module_file(out, *m);
  return kPositive;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--field", c.field, "prime field characteristic (default 65521)");
  if (with_seed) sub->add_option("--seed", c.seed, "random seed (falls back to BLOCKDEC_SEED, then 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block decomposition of persistence modules over finite grids"};
  app.require_subcommand(1);

  std::string path;
  Common common;

  auto* validate_cmd = app.add_subcommand("validate", "check that a module file is a commutative module");
  validate_cmd->add_option("file", path, "module file")->required();
  add_common(validate_cmd, common, false);

  CheckFlags check_flags;
  auto* check_cmd = app.add_subcommand("check", "run the local block-decomposability criterion");
  check_cmd->add_option("file", path, "module file")->required();
  check_cmd->add_flag("--profile", check_flags.profile, "add the exactness table for every k");
  check_cmd->add_flag("--witness", check_flags.witness, "add the full homology of the witness cube");
  check_cmd->add_option("--jobs", check_flags.jobs, "worker threads for the cube scan")->check(CLI::PositiveNumber);
  add_common(check_cmd, common, false);

  DecomposeFlags dec_flags;
  auto* dec_cmd = app.add_subcommand("decompose", "decompose into blocks");
  dec_cmd->add_option("file", path, "module file")->required();
  dec_cmd->add_option("--method", dec_flags.method, "generic, constructive or auto")
      ->check(CLI::IsMember({"generic", "constructive", "auto"}));
  dec_cmd->add_option("--trials", dec_flags.trials, "failed split attempts before giving up on a leaf")
      ->check(CLI::PositiveNumber);
  dec_cmd->add_option("--retries", dec_flags.retries, "reseeded reruns of the generic engine")
      ->check(CLI::NonNegativeNumber);
  dec_cmd->add_option("--jobs", dec_flags.jobs, "worker threads for the criterion")->check(CLI::PositiveNumber);
  dec_cmd->add_flag("--timing", dec_flags.timing, "add wall-clock time to the report");
  dec_cmd->add_flag("--trace", dec_flags.trace, "add the engine steps to the report");
  add_common(dec_cmd, common, true);

  GenFlags gen_flags;
  auto* gen_cmd = app.add_subcommand("gen", "write a random scrambled block or interval sum");
  gen_cmd->add_option("--shape", gen_flags.shape, "axis lengths, e.g. 2,2,2")->required();
  auto* blocks_opt = gen_cmd->add_option("--blocks", gen_flags.blocks, "number of random blocks");
  auto* intervals_opt = gen_cmd->add_option("--intervals", gen_flags.intervals, "number of random intervals");
  blocks_opt->excludes(intervals_opt);
  gen_cmd->add_option("--out", gen_flags.out, "output module file (truth goes to <out>.truth.json)")->required();
  add_common(gen_cmd, common, true);

  std::string fixture_name, fixture_out;
  auto* fix_cmd = app.add_subcommand("fixture", "write a bundled fixture");
  fix_cmd->add_option("name", fixture_name, "ex37, ex38 or claw-demo")->required();
  fix_cmd->add_option("--out", fixture_out, "output file (stdout when omitted)");
  add_common(fix_cmd, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (*gen_cmd && !gen_flags.blocks && !gen_flags.intervals) {
    std::cerr << "blockdec: gen needs --blocks or --intervals\n";
    return kInputError;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, common);
    if (*check_cmd) return cmd_check(path, common, check_flags);
    if (*dec_cmd) return cmd_decompose(path, common, dec_flags);
    if (*gen_cmd) return cmd_gen(common, gen_flags);
    if (*fix_cmd) return cmd_fixture(fixture_name, common, fixture_out);
  } catch (const std::exception& e) {
    std::cerr << "blockdec: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
