#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nccw/cellmodel.hpp"
#include "nccw/constructions.hpp"
#include "nccw/error.hpp"
#include "nccw/fibration.hpp"
#include "nccw/io.hpp"
#include "nccw/ssengine.hpp"

namespace nccw::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string path;
  std::string theory = "k";
  bool pages = false;
  bool paper_indexing = false;
  bool json = false;
  std::string op;
  std::string map_path;
  std::string base_path;
  std::string total_path;
  std::string coeff_even;
  std::string coeff_odd;
  bool non_simple = false;
};

Theory theory_of(const Options& opt) { return opt.theory == "hp" ? Theory::hp : Theory::k; }

void emit(const io::ResultFile& result, const Options& opt, std::ostream& out) {
  out << (opt.json ? io::to_json(result) : io::to_text(result, opt.paper_indexing));
}

io::ResultFile make_result(std::string name, std::string operation, Theory theory, TheoryGroups groups) {
  io::ResultFile r;
  r.name = std::move(name);
  r.operation = std::move(operation);
  r.theory = theory;
  r.even = std::move(groups.even);
  r.odd = std::move(groups.odd);
  return r;
}

std::vector<io::PageDump> dump_all(SpectralSequence& ss) {
  ss.e_infinity();
  std::vector<io::PageDump> out;
  for (const Page& page : ss.pages()) out.push_back(io::dump_page(page, ss));
  return out;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  io::ComplexFile file = io::load_complex(opt.path, io::max_dim_from_env());
  out << "ok";
  if (!file.name.empty()) out << ": " << file.name;
  out << " (dimension " << file.complex.top_dimension() << ", cells [";
  const auto& counts = file.complex.cell_counts();
  for (std::size_t i = 0; i < counts.size(); ++i) out << (i ? "," : "") << counts[i];
  out << "])\n";
  return exit_ok;
}

int cmd_compute(const Options& opt, std::ostream& out) {
  const Theory theory = theory_of(opt);
  io::ComplexFile file = io::load_complex(opt.path, io::max_dim_from_env());
  SpectralSequence ss = SpectralSequence::from_cellular(cochain_complex(file.complex, theory), theory);
  Assembly even = ss.assemble(Parity::even);
  Assembly odd = ss.assemble(Parity::odd);
  io::ResultFile result = make_result(file.name, "compute", theory, {std::move(even), std::move(odd)});
  if (opt.pages) result.pages = dump_all(ss);
  emit(result, opt, out);
  return exit_ok;
}

CellularMorphism load_cellular(const std::string& src_path, const std::string& map_path,
                               const std::optional<std::string>& target_path, Theory theory) {
  const std::size_t max_dim = io::max_dim_from_env();
  io::ComplexFile src = io::load_complex(src_path, max_dim);
  io::MorphismFile map = io::load_morphism(map_path, max_dim);
  std::optional<io::ComplexFile> dst = map.target;
  if (target_path) dst = io::load_complex(*target_path, max_dim);
  if (!dst) throw Error(ErrorKind::ParseError, "morphism file names no target complex");
  return io::make_morphism(cochain_complex(src.complex, theory), cochain_complex(dst->complex, theory), map);
}

int cmd_transform(const Options& opt, std::ostream& out) {
  const Theory theory = theory_of(opt);
  if (opt.op == "suspend") {
    io::ComplexFile file = io::load_complex(opt.path, io::max_dim_from_env());
    std::string name = file.name.empty() ? "suspension" : "S(" + file.name + ")";
    out << io::serialize_complex(name, suspend(file.complex));
    return exit_ok;
  }
  if (opt.op == "cone") {
    io::ComplexFile file = io::load_complex(opt.path, io::max_dim_from_env());
    emit(make_result(file.name, "cone", theory, cone(file.complex).theories(theory)), opt, out);
    return exit_ok;
  }
  if (opt.map_path.empty()) throw Error(ErrorKind::ParseError, "--op " + opt.op + " requires --map");
  CellularMorphism f = load_cellular(opt.path, opt.map_path, std::nullopt, theory);
  if (opt.op == "cylinder") {
    CylinderResult cyl = mapping_cylinder(f);
    emit(make_result("Cyl", "cylinder", theory, compute_theories(cyl.model, theory)), opt, out);
  } else {
    CochainComplex cone_complex = mapping_cone_complex(f);
    io::ResultFile result = make_result("Cone", "mapcone", theory, compute_theories(cone_complex, theory));
    if (opt.pages && !cone_complex.ranks.empty()) {
      SpectralSequence ss = SpectralSequence::from_cellular(cone_complex, theory);
      result.pages = dump_all(ss);
    }
    emit(result, opt, out);
  }
  return exit_ok;
}

FGAbelianGroup coefficient(const std::string& text, Theory theory, const char* which) {
  io::ParsedGroup g = io::parse_group(text);
  if (theory == Theory::hp && !g.group.is_torsion_free())
    throw Error(ErrorKind::ShapeMismatch, std::string("HP coefficients must be torsion-free (") + which + ")");
  if (theory == Theory::k && g.ring == Ring::rationals && !g.group.is_zero())
    throw Error(ErrorKind::ShapeMismatch, std::string("K coefficients must be integral (") + which + ")");
  return g.group;
}

int cmd_fibration(const Options& opt, std::ostream& out) {
  const Theory theory = theory_of(opt);
  io::ComplexFile base = io::load_complex(opt.base_path, io::max_dim_from_env());
  SerreFibrationData data;
  data.base = cochain_complex(base.complex, theory);
  data.theory = theory;
  data.simple = !opt.non_simple;

  if (!opt.map_path.empty()) {
    CellularMorphism f = load_cellular(opt.base_path, opt.map_path, opt.total_path, theory);
    std::tie(data.coeff_even, data.coeff_odd) = relative_coefficients(f, theory);
  } else {
    data.coeff_even = coefficient(opt.coeff_even, theory, "even");
    data.coeff_odd = coefficient(opt.coeff_odd, theory, "odd");
  }

  SpectralSequence ss = leray_serre_sequence(data);
  Assembly even = ss.assemble(Parity::even);
  Assembly odd = ss.assemble(Parity::odd);
  io::ResultFile result = make_result(base.name, "fibration", theory, {std::move(even), std::move(odd)});
  result.coefficients = std::pair{data.coeff_even, data.coeff_odd};
  result.pages = dump_all(ss);
  emit(result, opt, out);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Operator K-theory and periodic cyclic homology of noncommutative CW complexes", "nccw"};
  app.require_subcommand(1);

  auto theory_option = [&](CLI::App* sub) {
    sub->add_option("--theory", opt.theory, "k (K-theory) or hp (periodic cyclic homology)")
        ->check(CLI::IsMember({"k", "hp"}));
    sub->add_flag("--json", opt.json, "Structured output");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a complex file");
  validate->add_option("path", opt.path)->required();

  CLI::App* compute = app.add_subcommand("compute", "Run the cellular spectral sequence");
  compute->add_option("path", opt.path)->required();
  theory_option(compute);
  compute->add_flag("--pages", opt.pages, "Dump E^1 through E^infinity");
  compute->add_flag("--paper-indexing", opt.paper_indexing, "Label page entries homologically (p -> k - p)");

  CLI::App* transform = app.add_subcommand("transform", "Suspension, cone, mapping cylinder, mapping cone");
  transform->add_option("path", opt.path)->required();
  transform->add_option("--op", opt.op)->required()->check(CLI::IsMember({"suspend", "cone", "cylinder", "mapcone"}));
  transform->add_option("--map", opt.map_path, "Morphism file (cylinder, mapcone)");
  transform->add_flag("--pages", opt.pages);
  transform->add_flag("--paper-indexing", opt.paper_indexing);
  theory_option(transform);

  CLI::App* fibration = app.add_subcommand("fibration", "Leray-Serre spectral sequence with simple coefficients");
  fibration->add_option("--base", opt.base_path)->required();
  auto* even = fibration->add_option("--coeff-even", opt.coeff_even, "e.g. Z^2, Z/3+Z, 0");
  auto* odd = fibration->add_option("--coeff-odd", opt.coeff_odd);
  auto* map = fibration->add_option("--map", opt.map_path, "Morphism base -> total");
  auto* total = fibration->add_option("--total", opt.total_path);
  even->needs(odd);
  odd->needs(even);
  map->needs(total);
  total->needs(map);
  even->excludes(map);
  fibration->add_flag("--non-simple", opt.non_simple, "Declare the coefficient system non-simple");
  fibration->add_flag("--paper-indexing", opt.paper_indexing);
  theory_option(fibration);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse;
  }

  try {
    if (*validate) return cmd_validate(opt, out);
    if (*compute) return cmd_compute(opt, out);
    if (*transform) return cmd_transform(opt, out);
    if (fibration->parsed()) {
      if (opt.map_path.empty() && opt.coeff_even.empty())
        throw Error(ErrorKind::ParseError, "fibration needs --coeff-even/--coeff-odd or --map/--total");
      return cmd_fibration(opt, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? exit_parse : exit_invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_invalid;
}

}  // namespace nccw::cli
