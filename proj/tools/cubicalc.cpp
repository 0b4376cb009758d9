// cubicalc: geometric semantics and analyses of linear PV programs.
//
//   cubicalc <model|forbidden|deadlocks|attractor|factor|laws> [path]
//            [--json|--text|--svg FILE] [--seed N] [--iters K] [--dim D]
//            [--step Q] [--area FILE]
//
// Exit codes: 0 success, 1 input error, 2 I/O error, 3 invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cubical/cubical.hpp"

namespace {

using namespace cubical;

enum Exit { kOk = 0, kInputError = 1, kIoError = 2, kInvariantViolation = 3 };

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path;
  bool json = false;
  bool text = false;
  std::string svg_path;
  std::uint64_t seed = 42;
  std::size_t iters = 100;
  std::size_t dim = 2;
  std::string step;
  std::string area_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("error writing '" + path + "'");
}

pv::PvProgram load_program(const std::string& path) {
  auto prog = pv::parse(read_file(path));
  pv::validate(prog);
  return prog;
}

void print_area_text(std::ostream& os, const std::string& title, const CubicalArea& a) {
  os << title << ": " << a.size() << " maximal cube" << (a.size() == 1 ? "" : "s") << " in dimension " << a.dim()
     << "\n";
  for (const Cube& c : a.cubes()) os << "  " << to_string(c) << "\n";
}

std::string point_text(std::span<const Rational> p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + to_string(p[k]);
  return s + ")";
}

void emit_svg(const Options& o, const pv::PvProgram& prog, bool with_analysis) {
  svg::Scene scene;
  scene.ambient = pv::ambient(prog);
  scene.forbidden = pv::forbidden_region(prog);
  scene.model = pv::model(prog);
  if (with_analysis) {
    scene.deadlocks = analysis::find_deadlocks(*scene.model, scene.ambient);
    scene.doomed = analysis::doomed_region(*scene.model, scene.ambient);
  }
  write_file(o.svg_path, svg::render(scene));
  std::cerr << "wrote " << o.svg_path << "\n";
}

void require_svg_dim(const Options& o, std::size_t dim) {
  if (!o.svg_path.empty() && dim != 2)
    throw std::invalid_argument("--svg is only available for two-dimensional models (this one has dimension " +
                                std::to_string(dim) + ")");
}

int cmd_area(const Options& o, bool forbidden) {
  const auto prog = load_program(o.path);
  require_svg_dim(o, prog.dim());
  if (!o.svg_path.empty()) {
    emit_svg(o, prog, false);
    return kOk;
  }
  const CubicalArea a = forbidden ? pv::forbidden_region(prog) : pv::model(prog);
  if (o.json)
    std::cout << area_to_json(a).dump(2) << "\n";
  else
    print_area_text(std::cout, forbidden ? "forbidden region" : "model", a);
  return kOk;
}

// Optional cross-check against the grid oracle when --step is given.
std::optional<bool> oracle_agrees(const Options& o, const pv::PvProgram& prog, const CubicalArea& model,
                                  const std::vector<analysis::Point>& deadlocks,
                                  const std::optional<CubicalArea>& doomed) {
  if (o.step.empty()) return std::nullopt;
  const Rational step = parse_rational(o.step);
  const auto oracle = analysis::grid_oracle(prog, step);
  if (oracle.vertex_deadlocks(analysis::build_cells(model, pv::ambient(prog))) != deadlocks) return false;
  for (const auto& p : oracle.points()) {
    if (oracle.member(p) != contains_point(model, p)) return false;
    if (doomed && oracle.is_doomed(p) != contains_point(*doomed, p)) return false;
  }
  return true;
}

int cmd_analysis(const Options& o, bool attractor) {
  const auto prog = load_program(o.path);
  require_svg_dim(o, prog.dim());
  const Cube amb = pv::ambient(prog);
  const CubicalArea m = pv::model(prog);
  const auto deadlocks = analysis::find_deadlocks(m, amb);
  std::optional<CubicalArea> doomed;
  if (attractor) doomed = analysis::doomed_region(m, amb);
  const auto agrees = oracle_agrees(o, prog, m, deadlocks, doomed);

  if (!o.svg_path.empty()) {
    emit_svg(o, prog, true);
  } else if (o.json) {
    Json j;
    j["deadlocks"] = analysis::deadlocks_to_json(deadlocks);
    if (doomed) j["doomed"] = area_to_json(*doomed);
    if (agrees) {
      j["oracle"]["step"] = to_string(parse_rational(o.step));
      j["oracle"]["agrees"] = *agrees;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "deadlocks: " << deadlocks.size() << "\n";
    for (const auto& p : deadlocks) std::cout << "  " << point_text(p) << "\n";
    if (doomed) print_area_text(std::cout, "deadlock attractor", *doomed);
    if (agrees) std::cout << "grid oracle (step " << o.step << "): " << (*agrees ? "agrees" : "DISAGREES") << "\n";
  }
  return agrees && !*agrees ? kInvariantViolation : kOk;
}

int cmd_factor(const Options& o) {
  if (o.area_path.empty() == o.path.empty())
    throw std::invalid_argument("factor needs exactly one of a program path or --area FILE");
  std::optional<std::vector<std::vector<std::size_t>>> groups;
  CubicalArea a = CubicalArea::empty(1);
  if (!o.area_path.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(o.area_path));
    } catch (const Json::parse_error& e) {
      throw json_format_error(std::string("invalid JSON: ") + e.what());
    }
    a = area_from_json(j);
  } else {
    const auto prog = load_program(o.path);
    a = pv::model(prog);
    groups = pv::resource_groups(prog);
  }
  const auto f = analysis::factorize(a);
  if (!area_equal(analysis::reconstruct(f), a)) {
    std::cerr << "internal error: factorization does not multiply back to the area\n";
    return kInvariantViolation;
  }
  if (o.json) {
    Json j;
    j["factorization"] = analysis::factorization_to_json(f);
    if (groups) j["resource_groups"] = *groups;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "factorization into " << f.size() << " block" << (f.size() == 1 ? "" : "s") << "\n";
    for (const auto& b : f) {
      std::cout << "  axes {";
      for (std::size_t k = 0; k < b.axes.size(); ++k) std::cout << (k ? ", " : "") << b.axes[k];
      std::cout << "}\n";
      for (const Cube& c : b.factor.cubes()) std::cout << "    " << to_string(c) << "\n";
    }
    if (groups) {
      std::cout << "resource groups:";
      for (const auto& g : *groups) {
        std::cout << " {";
        for (std::size_t k = 0; k < g.size(); ++k) std::cout << (k ? ", " : "") << g[k];
        std::cout << "}";
      }
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_laws(const Options& o) {
  const auto rep = laws::run_law_suite(o.seed, o.iters, o.dim);
  if (o.json)
    std::cout << laws::law_report_to_json(rep).dump(2) << "\n";
  else
    std::cout << laws::law_report_to_text(rep);
  return rep.passed() ? kOk : kInvariantViolation;
}

void add_format(CLI::App* sub, Options& o, bool allow_svg) {
  auto* j = sub->add_flag("--json", o.json, "emit JSON");
  auto* t = sub->add_flag("--text", o.text, "emit plain text (default)");
  j->excludes(t);
  if (allow_svg) {
    auto* s = sub->add_option("--svg", o.svg_path, "write an SVG rendering of a 2-D model to FILE");
    s->excludes(j)->excludes(t);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubical-area semantics and analyses for linear PV programs"};
  app.require_subcommand(1);
  Options o;

  auto* model = app.add_subcommand("model", "print the model (consistent states) of a .pv program");
  auto* forbidden = app.add_subcommand("forbidden", "print the forbidden region of a .pv program");
  auto* deadlocks = app.add_subcommand("deadlocks", "list deadlock states of a .pv program");
  auto* attractor = app.add_subcommand("attractor", "print deadlocks and the deadlock attractor");
  auto* factor = app.add_subcommand("factor", "factor a model or area into a product");
  auto* laws_cmd = app.add_subcommand("laws", "run the randomized algebra-law suite");

  for (auto* sub : {model, forbidden, deadlocks, attractor}) {
    sub->add_option("path", o.path, ".pv program")->required();
    add_format(sub, o, true);
  }
  for (auto* sub : {deadlocks, attractor})
    sub->add_option("--step", o.step, "cross-check against the grid oracle at step Q (e.g. 1/2)");
  factor->add_option("path", o.path, ".pv program");
  factor->add_option("--area", o.area_path, "area JSON file instead of a program");
  add_format(factor, o, false);
  laws_cmd->add_option("--seed", o.seed, "base seed");
  laws_cmd->add_option("--iters", o.iters, "trials per law")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  laws_cmd->add_option("--dim", o.dim, "dimension for the boolean laws")->check(CLI::Range(1, 3));
  add_format(laws_cmd, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  const std::string shown = o.path.empty() ? o.area_path : o.path;
  try {
    if (*model) return cmd_area(o, false);
    if (*forbidden) return cmd_area(o, true);
    if (*deadlocks) return cmd_analysis(o, false);
    if (*attractor) return cmd_analysis(o, true);
    if (*factor) return cmd_factor(o);
    if (*laws_cmd) return cmd_laws(o);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const pv::ParseError& e) {
    std::cerr << shown << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return kInputError;
  } catch (const pv::ValidationError& e) {
    std::cerr << shown << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << (shown.empty() ? "" : shown + ": ") << e.what() << "\n";
    return kInputError;
  } catch (const json_format_error& e) {
    std::cerr << shown << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariantViolation;
  }
  return kOk;
}
