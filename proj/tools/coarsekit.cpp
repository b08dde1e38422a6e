// coarsekit: batch command line over the library. Every command prints one
// JSON report {command, inputs, result} (or {command, error}).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace coarsekit;

namespace {

struct FamilyFlags {
  std::string family = "z";
  int size = 10;
  int radius = -1;
  int level = -1;
  int dim = 2;
  int rank = 2;
  std::string sizes;
  std::string gaps;
  std::string tower = R"({"prefix":[],"cycle":[2]})";
  std::string space_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<int> int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("--") + flag + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

Json family_json(const FamilyFlags& f) {
  if (!f.space_file.empty()) {
    const auto space = space_from_json(parse_json(read_file(f.space_file)));
    return to_json(space->tag());
  }
  Json out;
  if (f.family == "z") {
    out = {{"family", "z"}, {"size", f.size}};
  } else if (f.family == "zd") {
    out = {{"family", "zd"}, {"dim", f.dim}, {"size", f.size}};
  } else if (f.family == "f2" || f.family == "free") {
    out = {{"family", "free"}, {"rank", f.family == "f2" ? 2 : f.rank}, {"size", f.radius >= 0 ? f.radius : f.size}};
  } else if (f.family == "tower") {
    out = {{"family", "tower"}, {"tower", parse_json(f.tower)}, {"size", f.level >= 0 ? f.level : f.size}};
  } else if (f.family == "gap") {
    const auto sizes = int_list(f.sizes, "sizes");
    const auto gaps = int_list(f.gaps, "gaps");
    out = {{"family", "gap"}, {"sizes", sizes}, {"gaps", gaps}, {"size", static_cast<int>(sizes.size())}};
  } else {
    throw ValidationError("--family must be one of z, zd, f2, free, tower, gap");
  }
  // Validate early so errors carry a field pointer.
  family_from_json(out, "/family");
  return out;
}

void add_family_flags(CLI::App* app, FamilyFlags& f) {
  app->add_option("--family", f.family, "z | zd | f2 | free | tower | gap");
  app->add_option("--size", f.size, "window size");
  app->add_option("--radius", f.radius, "free group ball radius");
  app->add_option("--level", f.level, "tower window level");
  app->add_option("--dim", f.dim, "lattice dimension");
  app->add_option("--rank", f.rank, "free group rank");
  app->add_option("--sizes", f.sizes, "gap union block sizes, comma separated");
  app->add_option("--gaps", f.gaps, "gap union gaps, comma separated");
  app->add_option("--tower", f.tower, "tower JSON {prefix, cycle}");
  app->add_option("--space", f.space_file, "Space JSON file");
}

// "all", "even", "odd", or comma separated ids and ranges a-b.
Json point_list(const std::string& text, const Json& family) {
  const auto tag = family_from_json(family, "/family");
  const auto space = make_window(tag.family, tag.size);
  Json out = Json::array();
  if (text == "all" || text == "even" || text == "odd") {
    for (Point x = 0; x < space.size(); ++x) {
      if (text == "all") out.push_back(x);
      else if (auto c = space.coordinate(x); c && (*c % 2 == 0) == (text == "even")) out.push_back(x);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(int_list(item, "points").at(0));
    } else {
      const int lo = int_list(item.substr(0, dash), "points").at(0);
      const int hi = int_list(item.substr(dash + 1), "points").at(0);
      for (int x = lo; x <= hi; ++x) out.push_back(x);
    }
  }
  return out;
}

Json operator_file(const std::string& path) { return parse_json(read_file(path)); }

// Operator with every entry of distance <= prop set to 1.
Json full_operator(const Json& family, int prop) {
  const auto tag = family_from_json(family, "/family");
  const auto space = make_shared_window(tag.family, tag.size);
  SparseOperator a(space);
  for (Point x = 0; x < space->size(); ++x)
    for (Point y = 0; y < space->size(); ++y)
      if (space->distance(x, y) <= prop) a.set(x, y, 1);
  return to_json(a);
}

Json vector_json(const std::string& text) {
  Json out = Json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("--vector entries look like id:value");
    out.push_back({int_list(item.substr(0, colon), "vector").at(0), item.substr(colon + 1)});
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("COARSEKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("COARSEKIT_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarsekit: exact computations on finite windows of coarse spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_file;
  bool pretty = false, timings = false;
  std::optional<std::uint64_t> seed;
  app.add_option("--out", out_file, "write the report to FILE instead of stdout");
  app.add_flag("--pretty", pretty, "human-readable output");
  app.add_flag("--timings", timings, "add wall-clock timings (breaks byte-identical output)");
  app.add_option("--seed", seed, "seed for randomized estimators (default $COARSEKIT_SEED or 0)");

  FamilyFlags fam;
  int radius_r = 1, collar = 1, r = 1, prop = -1, budget = 32, levels = 2, width = 1;
  int max_radius = 6, max_size = 8;
  std::string eps = "1/2", strategy = "balls", set_text, a_text, b_text, verify_file;
  std::string p_text = "2", op_path, other_path, t1, t2, x_text, y_text = R"({"period":[0]})";
  std::vector<std::string> op_paths, vector_texts;

  auto* space_cmd = app.add_subcommand("space", "generate or analyze a window");
  space_cmd->require_subcommand(1);
  space_cmd->fallthrough();
  auto* space_gen = space_cmd->add_subcommand("gen", "emit a window as Space JSON");
  add_family_flags(space_gen, fam);
  auto* space_an = space_cmd->add_subcommand("analyze", "growth, components, decompositions");
  add_family_flags(space_an, fam);
  space_an->add_option("--R", radius_r, "component radius");

  auto* folner = app.add_subcommand("folner", "Folner ratio of a set, or a bounded search");
  add_family_flags(folner, fam);
  folner->add_option("--R", radius_r);
  folner->add_option("--eps", eps);
  folner->add_option("--strategy", strategy, "balls | exhaustive");
  folner->add_option("--max-radius", max_radius);
  folner->add_option("--max-size", max_size);
  folner->add_option("--set", set_text, "compute the ratio of this set instead of searching");

  auto* paradox = app.add_subcommand("paradox", "paradox certificate or Hall violation");
  add_family_flags(paradox, fam);
  paradox->add_option("--R", radius_r);
  paradox->add_option("--collar", collar);
  paradox->add_option("--verify", verify_file, "re-check a certificate or violation JSON");

  auto* cuntz = app.add_subcommand("cuntz", "Leavitt relations from a paradox certificate");
  add_family_flags(cuntz, fam);
  cuntz->add_option("--R", radius_r);
  cuntz->add_option("--collar", collar);

  auto* ideal = app.add_subcommand("ideal", "witness that 1_A lies in the ideal of 1_B");
  add_family_flags(ideal, fam);
  ideal->add_option("--A", a_text)->required();
  ideal->add_option("--B", b_text)->required();
  ideal->add_option("--R", radius_r);

  auto* qd = app.add_subcommand("qd", "block projection commuting with operators on a gap union");
  add_family_flags(qd, fam);
  qd->add_option("--op", op_paths, "operator JSON file (repeatable)");
  qd->add_option("--prop", prop, "add the all-ones operator of this propagation");
  qd->add_option("--vector", vector_texts, "id:value,... (repeatable)");
  qd->add_option("--eps", eps);
  qd->add_option("--p", p_text);

  auto* norm = app.add_subcommand("norm", "certified operator norm interval");
  norm->add_option("--op", op_path)->required();
  norm->add_option("--p", p_text);

  auto* mv = app.add_subcommand("mv", "split along an asdim-one decomposition, optionally glue");
  mv->add_option("--op", op_path)->required();
  mv->add_option("--r", r);
  mv->add_option("--other", other_path, "second operator for gluing");
  mv->add_option("--eps", eps);

  auto* blocks = app.add_subcommand("blocks", "decompose along r-components");
  blocks->add_option("--op", op_path)->required();
  blocks->add_option("--r", r);

  auto* kt = app.add_subcommand("ktheory", "towers, supernatural numbers, K0 classes");
  kt->require_subcommand(1);
  kt->fallthrough();
  std::string tower_text = R"({"prefix":[],"cycle":[2]})";
  auto* sn = kt->add_subcommand("sn", "supernatural number and coarse class");
  sn->add_option("--tower", tower_text);
  auto* cmp = kt->add_subcommand("compare", "compare two towers");
  cmp->add_option("--t1", t1)->required();
  cmp->add_option("--t2", t2)->required();
  auto* ceq = kt->add_subcommand("class-equal", "decide [x] = [y]");
  ceq->add_option("--x", x_text)->required();
  ceq->add_option("--y", y_text);
  ceq->add_option("--tower", tower_text);
  ceq->add_option("--budget", budget);
  auto* cpos = kt->add_subcommand("class-positive", "decide [x] >= 0");
  cpos->add_option("--x", x_text)->required();
  cpos->add_option("--tower", tower_text);
  cpos->add_option("--budget", budget);
  auto* oracle = kt->add_subcommand("oracle", "finite direct-limit model");
  oracle->add_option("--tower", tower_text);
  oracle->add_option("--N", levels);
  oracle->add_option("--L", width);
  oracle->add_option("--x", x_text, "comma separated finite sequence");

  auto* report = app.add_subcommand("report", "regression summary, or --verify a report");
  report->add_option("--verify", verify_file, "re-check a report emitted by any command");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string command;
  Json inputs = Json::object();
  Json output;
  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t seed_value = seed ? *seed : default_seed();
    auto tower_json = [&] { return parse_json(tower_text); };
    if (*space_gen) {
      command = "space gen";
      inputs["family"] = family_json(fam);
    } else if (*space_an) {
      command = "space analyze";
      inputs = {{"family", family_json(fam)}, {"R", radius_r}};
    } else if (*folner) {
      command = "folner";
      inputs = {{"family", family_json(fam)}, {"R", radius_r}};
      if (!set_text.empty()) {
        inputs["set"] = point_list(set_text, inputs["family"]);
      } else {
        inputs["eps"] = eps;
        inputs["strategy"] = strategy;
        inputs["max_radius"] = max_radius;
        inputs["max_size"] = max_size;
      }
    } else if (*paradox) {
      inputs = {{"family", family_json(fam)}};
      if (!verify_file.empty()) {
        command = "paradox verify";
        inputs["claim"] = parse_json(read_file(verify_file));
      } else {
        command = "paradox";
        inputs["R"] = radius_r;
        inputs["collar"] = collar;
      }
    } else if (*cuntz) {
      command = "cuntz";
      inputs = {{"family", family_json(fam)}, {"R", radius_r}, {"collar", collar}};
    } else if (*ideal) {
      command = "ideal";
      inputs = {{"family", family_json(fam)}};
      inputs["A"] = point_list(a_text, inputs["family"]);
      inputs["B"] = point_list(b_text, inputs["family"]);
      inputs["R"] = radius_r;
    } else if (*qd) {
      command = "qd";
      inputs = {{"family", family_json(fam)}, {"operators", Json::array()}, {"vectors", Json::array()}};
      for (const auto& path : op_paths) inputs["operators"].push_back(operator_file(path));
      if (prop >= 0) inputs["operators"].push_back(full_operator(inputs["family"], prop));
      for (const auto& v : vector_texts) inputs["vectors"].push_back(vector_json(v));
      inputs["eps"] = eps;
      inputs["p"] = p_text;
    } else if (*norm) {
      command = "norm";
      inputs = {{"operator", operator_file(op_path)}, {"p", p_text}, {"seed", seed_value}};
    } else if (*mv) {
      command = "mv";
      inputs = {{"operator", operator_file(op_path)}, {"r", r}};
      if (!other_path.empty()) {
        inputs["other"] = operator_file(other_path);
        inputs["eps"] = eps;
      }
    } else if (*blocks) {
      command = "blocks";
      inputs = {{"operator", operator_file(op_path)}, {"r", r}};
    } else if (*sn) {
      command = "ktheory sn";
      inputs = {{"tower", tower_json()}};
    } else if (*cmp) {
      command = "ktheory compare";
      inputs = {{"t1", parse_json(t1)}, {"t2", parse_json(t2)}};
    } else if (*ceq) {
      command = "ktheory class-equal";
      inputs = {{"x", parse_json(x_text)}, {"y", parse_json(y_text)}, {"tower", tower_json()}, {"budget", budget}};
    } else if (*cpos) {
      command = "ktheory class-positive";
      inputs = {{"x", parse_json(x_text)}, {"tower", tower_json()}, {"budget", budget}};
    } else if (*oracle) {
      command = "ktheory oracle";
      inputs = {{"tower", tower_json()}, {"N", levels}, {"L", width}, {"x", int_list(x_text, "x")}};
    } else if (*report) {
      if (!verify_file.empty()) {
        command = "report verify";
        inputs = {{"report", parse_json(read_file(verify_file))}};
      } else {
        command = "report";
      }
    }
    const Json result = command == "report verify" ? cli::verify_report(inputs["report"])
                                                   : cli::run_command(command, inputs);
    output = cli::make_report(command, inputs, result);
  } catch (const JsonError& e) {
    output = {{"command", command}, {"error", {{"type", "validation"}, {"pointer", e.pointer()}, {"message", e.what()}}}};
    code = 1;
  } catch (const ValidationError& e) {
    output = {{"command", command}, {"error", {{"type", "validation"}, {"message", e.what()}}}};
    code = 1;
  } catch (const PreconditionError& e) {
    output = {{"command", command}, {"error", {{"type", "precondition"}, {"message", e.what()}}}};
    code = 1;
  } catch (const NotImplementedError& e) {
    output = {{"command", command}, {"error", {{"type", "not_implemented"}, {"message", e.what()}}}};
    code = 1;
  } catch (const InvariantViolation& e) {
    output = {{"command", command}, {"error", {{"type", "invariant_violation"}, {"message", e.what()}}}};
    code = 2;
  }
  if (timings) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    output["timings"] = {{"total_ms", ms}};
  }
  if (code != 0) std::cerr << "coarsekit: " << output["error"]["message"].get<std::string>() << '\n';

  const std::string text = pretty ? cli::pretty(output) : output.dump() + "\n";
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) {
      std::cerr << "coarsekit: cannot write " << out_file << '\n';
      return 1;
    }
    out << text;
  }
  return code;
}
