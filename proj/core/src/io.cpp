#include "nccw/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nccw/error.hpp"

namespace nccw::io {

using json = nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void expect_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& what) {
  if (!obj.is_object()) parse_fail(what + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      parse_fail("unknown field \"" + key + "\" in " + what);
  }
}

const json& require(const json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(what + " lacks \"" + key + "\"");
  return *it;
}

long as_long(const json& v, const std::string& what) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<long>::max()))
      parse_fail(what + " is out of range");
    return v.get<long>();
  }
  parse_fail(what + " must be an integer");
}

Integer as_integer(const json& v, const std::string& what) {
  if (v.is_string()) {
    Integer x;
    if (x.set_str(v.get<std::string>(), 10) != 0) parse_fail(what + " is not an integer string");
    return x;
  }
  return Integer(as_long(v, what));
}

std::vector<long> long_list(const json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be a list of integers");
  std::vector<long> out;
  for (const auto& x : v) out.push_back(as_long(x, what));
  return out;
}

using RawMatrix = std::vector<std::vector<long>>;

RawMatrix raw_matrix(const json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be a list of rows");
  RawMatrix rows;
  for (const auto& row : v) rows.push_back(long_list(row, what));
  return rows;
}

// Shapes come from cell counts, so an empty row list is any 0 x n matrix.
IntMatrix shaped(const RawMatrix& rows, std::size_t want_rows, std::size_t want_cols, ErrorKind kind,
                 const std::string& what, int where) {
  auto mismatch = [&] {
    return Error(kind, what + " must be " + std::to_string(want_rows) + "x" + std::to_string(want_cols), where);
  };
  if (rows.size() != want_rows) throw mismatch();
  IntMatrix m(want_rows, want_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != want_cols) throw mismatch();
    for (std::size_t j = 0; j < want_cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).fits_slong_p())
        row.push_back(m(i, j).get_si());
      else
        row.push_back(m(i, j).get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be a list of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : v) {
    if (!row.is_array()) parse_fail(what + " must be a list of rows");
    rows.emplace_back();
    for (const auto& x : row) rows.back().push_back(as_integer(x, what));
  }
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) parse_fail(what + " is ragged");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void check_height(std::size_t top, std::size_t max_dim) {
  if (top > max_dim)
    throw Error(ErrorKind::LimitExceeded,
                "tower height " + std::to_string(top) + " exceeds NCCW_MAX_DIM=" + std::to_string(max_dim),
                static_cast<int>(top));
}

ComplexFile classical_from_json(std::string name, const json& cw, std::size_t max_dim) {
  expect_keys(cw, {"counts", "boundaries"}, "classical_cw");
  std::vector<long> raw_counts = long_list(require(cw, "counts", "classical_cw"), "counts");
  if (raw_counts.empty()) parse_fail("classical_cw.counts is empty");
  std::vector<std::size_t> counts;
  for (long c : raw_counts) {
    if (c < 0) parse_fail("cell counts must be nonnegative");
    counts.push_back(static_cast<std::size_t>(c));
  }
  check_height(counts.size() - 1, max_dim);

  std::vector<IntMatrix> boundaries;
  if (auto it = cw.find("boundaries"); it != cw.end()) {
    if (!it->is_array()) parse_fail("classical_cw.boundaries must be a list of matrices");
    if (it->size() + 1 != counts.size())
      throw Error(ErrorKind::ShapeMismatch, "expected one boundary matrix per positive dimension");
    for (std::size_t p = 1; p < counts.size(); ++p)
      boundaries.push_back(shaped(raw_matrix((*it)[p - 1], "boundary"), counts[p - 1], counts[p],
                                  ErrorKind::ShapeMismatch, "boundary d_" + std::to_string(p),
                                  static_cast<int>(p)));
  } else {
    for (std::size_t p = 1; p < counts.size(); ++p) boundaries.emplace_back(counts[p - 1], counts[p]);
  }
  return {std::move(name), from_classical_cw(counts, boundaries)};
}

ComplexFile complex_from_json(const json& doc, std::size_t max_dim) {
  expect_keys(doc, {"name", "stages", "classical_cw"}, "complex file");
  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) parse_fail("name must be a string");
    name = it->get<std::string>();
  }
  const bool has_stages = doc.contains("stages"), has_cw = doc.contains("classical_cw");
  if (has_stages == has_cw) parse_fail("complex file needs exactly one of \"stages\" or \"classical_cw\"");
  if (has_cw) return classical_from_json(std::move(name), doc["classical_cw"], max_dim);

  const json& records = doc["stages"];
  if (!records.is_array() || records.empty()) parse_fail("stages must be a nonempty list");

  std::map<long, const json*> by_dim;
  for (const auto& rec : records) {
    if (!rec.is_object()) parse_fail("stage records must be objects");
    long dim = as_long(require(rec, "dim", "stage record"), "dim");
    if (dim < 0) parse_fail("stage dim must be nonnegative");
    if (!by_dim.emplace(dim, &rec).second) parse_fail("duplicate stage dim " + std::to_string(dim));
  }
  check_height(static_cast<std::size_t>(by_dim.rbegin()->first), max_dim);
  if (by_dim.begin()->first != 0) throw Error(ErrorKind::ShapeMismatch, "a complex needs a stage 0", 0);

  std::vector<NCCWStage> stages;
  FinDimAlgebra a0;
  for (const auto& [dim, rec_ptr] : by_dim) {
    const json& rec = *rec_ptr;
    const int where = static_cast<int>(dim);
    const std::string what = "stage " + std::to_string(dim);
    if (static_cast<std::size_t>(dim) != stages.size())
      throw Error(ErrorKind::ShapeMismatch, "stage dimensions must be contiguous", static_cast<int>(stages.size()));
    if (dim == 0) {
      expect_keys(rec, {"dim", "algebra"}, what);
      a0 = FinDimAlgebra(long_list(require(rec, "algebra", what), "algebra"));
      stages.push_back({0, a0, std::nullopt});
      continue;
    }
    expect_keys(rec, {"dim", "F", "phi0", "phi1", "delta"}, what);
    FinDimAlgebra f(long_list(require(rec, "F", what), "F"));
    const bool endpoint = rec.contains("phi0") || rec.contains("phi1");
    if (endpoint == rec.contains("delta")) parse_fail(what + " needs either phi0/phi1 or delta");
    if (endpoint) {
      const std::size_t rows = f.block_count(), cols = a0.block_count();
      IntMatrix m0 = shaped(raw_matrix(require(rec, "phi0", what), "phi0"), rows, cols, ErrorKind::ShapeMismatch,
                            what + " phi0", where);
      IntMatrix m1 = shaped(raw_matrix(require(rec, "phi1", what), "phi1"), rows, cols, ErrorKind::ShapeMismatch,
                            what + " phi1", where);
      try {
        stages.push_back({where, f, EndpointPair{MultMorphism(a0, f, m0), MultMorphism(a0, f, m1)}});
      } catch (const Error& e) {
        throw Error(e.kind(), what + ": " + e.what(), where);
      }
    } else {
      const std::size_t rows = f.block_count(), cols = stages.back().cells.block_count();
      IntMatrix delta =
          shaped(raw_matrix(rec["delta"], "delta"), rows, cols, ErrorKind::ShapeMismatch, what + " delta", where);
      stages.push_back({where, f, ProvidedCoboundary{std::move(delta)}});
    }
  }
  return {std::move(name), NCCWComplex::build(std::move(stages))};
}

json algebra_json(const FinDimAlgebra& a) { return json(a.sizes()); }

const char* parity_name(Parity q) { return q == Parity::even ? "even" : "odd"; }

Parity parity_from(const json& v) {
  if (v == "even") return Parity::even;
  if (v == "odd") return Parity::odd;
  parse_fail("parity must be \"even\" or \"odd\"");
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

json assembly_json(const Assembly& a) {
  json pieces = json::array();
  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    pieces.push_back({{"p", a.degrees[i]}, {"group", to_string(a.pieces[i], a.ring)}});
  return {{"group", to_string(a.candidate, a.ring)},
          {"extension", a.up_to_extension() ? "up_to_extension" : "exact"},
          {"pieces", std::move(pieces)}};
}

Assembly assembly_from_json(const json& v, Parity parity, Ring ring) {
  const std::string what = std::string(parity_name(parity)) + " assembly";
  expect_keys(v, {"group", "extension", "pieces"}, what);
  const json& pieces = require(v, "pieces", what);
  if (!pieces.is_array()) parse_fail(what + " pieces must be a list");
  std::vector<int> degrees;
  std::vector<FGAbelianGroup> groups;
  for (const auto& piece : pieces) {
    expect_keys(piece, {"p", "group"}, "piece");
    degrees.push_back(static_cast<int>(as_long(require(piece, "p", "piece"), "p")));
    const json& g = require(piece, "group", "piece");
    if (!g.is_string()) parse_fail("piece group must be a string");
    groups.push_back(parse_group(g.get<std::string>()).group);
  }
  Assembly a = assemble_pieces(parity, ring, std::move(degrees), std::move(groups));
  const json& group = require(v, "group", what);
  const json& extension = require(v, "extension", what);
  if (!group.is_string() || parse_group(group.get<std::string>()).group != a.candidate)
    parse_fail(what + " group disagrees with its pieces");
  if (extension != (a.up_to_extension() ? "up_to_extension" : "exact"))
    parse_fail(what + " extension flag disagrees with its pieces");
  return a;
}

}  // namespace

std::size_t max_dim_from_env() {
  const char* raw = std::getenv("NCCW_MAX_DIM");
  if (raw == nullptr) return default_max_dim;
  std::string value = trim(raw);
  if (!all_digits(value) || value.size() > 9) parse_fail("NCCW_MAX_DIM must be a nonnegative integer");
  return static_cast<std::size_t>(std::stoul(value));
}

ComplexFile parse_complex(std::string_view text, std::size_t max_dim) {
  return complex_from_json(parse_json(text), max_dim);
}

ComplexFile load_complex(const std::filesystem::path& path, std::size_t max_dim) {
  return parse_complex(read_file(path), max_dim);
}

std::string serialize_complex(const std::string& name, const NCCWComplex& x) {
  json stages = json::array();
  for (const NCCWStage& stage : x.stages()) {
    json rec;
    rec["dim"] = stage.dim;
    if (stage.dim == 0) {
      rec["algebra"] = algebra_json(stage.cells);
    } else {
      rec["F"] = algebra_json(stage.cells);
      if (const auto* pair = std::get_if<EndpointPair>(&*stage.attaching)) {
        rec["phi0"] = matrix_json(pair->phi0.mult());
        rec["phi1"] = matrix_json(pair->phi1.mult());
      } else {
        rec["delta"] = matrix_json(std::get<ProvidedCoboundary>(*stage.attaching).delta);
      }
    }
    stages.push_back(std::move(rec));
  }
  json doc{{"name", name}, {"stages", std::move(stages)}};
  return doc.dump(2) + "\n";
}

MorphismFile parse_morphism(std::string_view text, const std::filesystem::path& base_dir, std::size_t max_dim) {
  json doc = parse_json(text);
  expect_keys(doc, {"name", "first_degree", "maps", "target"}, "morphism file");
  MorphismFile out;
  if (auto it = doc.find("first_degree"); it != doc.end())
    out.first_degree = static_cast<int>(as_long(*it, "first_degree"));
  const json& maps = require(doc, "maps", "morphism file");
  if (!maps.is_array()) parse_fail("maps must be a list of matrices");
  for (const auto& m : maps) out.maps.push_back(raw_matrix(m, "map"));
  if (auto it = doc.find("target"); it != doc.end()) {
    if (it->is_string())
      out.target = load_complex(base_dir / it->get<std::string>(), max_dim);
    else
      out.target = complex_from_json(*it, max_dim);
  }
  return out;
}

MorphismFile load_morphism(const std::filesystem::path& path, std::size_t max_dim) {
  return parse_morphism(read_file(path), path.parent_path(), max_dim);
}

CellularMorphism make_morphism(const CochainComplex& src, const CochainComplex& dst, const MorphismFile& file) {
  CellularMorphism f{src, dst, file.first_degree, {}};
  for (std::size_t i = 0; i < file.maps.size(); ++i) {
    const int p = file.first_degree + static_cast<int>(i);
    f.maps.push_back(shaped(file.maps[i], dst.rank_at(p), src.rank_at(p), ErrorKind::InvalidMorphism,
                            "map f_" + std::to_string(p), p));
  }
  f.validate();
  return f;
}

ParsedGroup parse_group(std::string_view text) {
  std::string s(text);
  for (std::size_t pos; (pos = s.find("(+)")) != std::string::npos;) s.replace(pos, 3, "+");
  if (trim(s).empty()) parse_fail("empty group string");

  ParsedGroup out;
  bool saw_q = false, saw_z = false;
  std::size_t free = 0;
  std::vector<Integer> orders;
  for (std::size_t start = 0, end = 0; end != std::string::npos; start = end + 1) {
    end = s.find('+', start);
    const std::string term = trim(std::string_view(s).substr(start, end == std::string::npos ? end : end - start));
    if (term == "0") continue;
    if (term.empty() || (term[0] != 'Z' && term[0] != 'Q')) parse_fail("bad group term \"" + term + "\"");
    const bool rational = term[0] == 'Q';
    (rational ? saw_q : saw_z) = true;
    std::string_view rest = std::string_view(term).substr(1);
    if (rest.empty()) {
      free += 1;
    } else if (rest[0] == '^' && all_digits(rest.substr(1))) {
      free += std::stoul(std::string(rest.substr(1)));
    } else if (rest[0] == '/' && !rational && all_digits(rest.substr(1))) {
      Integer d(std::string(rest.substr(1)));
      if (d == 0) parse_fail("Z/0 is not a valid torsion summand");
      orders.push_back(d);
    } else {
      parse_fail("bad group term \"" + term + "\"");
    }
  }
  if (saw_q && saw_z) parse_fail("cannot mix rational and integral summands");
  out.ring = saw_q ? Ring::rationals : Ring::integers;
  out.group = FGAbelianGroup::from_cyclic_orders(free, orders);
  return out;
}

PageDump dump_page(const Page& page, const SpectralSequence& ss) {
  PageDump out;
  out.r = page.r;
  for (const auto& [b, g] : page.entries) out.entries.push_back({b.p, ss.paper_degree(b.p), b.q, g});
  for (const auto& [b, m] : page.differentials) out.differentials.push_back({b.p, b.q, m});
  return out;
}

std::string to_json(const ResultFile& result) {
  const Ring ring = coefficient_ring(result.theory);
  json doc{{"name", result.name},
           {"operation", result.operation},
           {"theory", result.theory == Theory::k ? "K" : "HP"},
           {"even", assembly_json(result.even)},
           {"odd", assembly_json(result.odd)}};
  if (result.coefficients)
    doc["coefficients"] = {{"even", to_string(result.coefficients->first, ring)},
                           {"odd", to_string(result.coefficients->second, ring)}};
  if (!result.pages.empty()) {
    json pages = json::array();
    for (const PageDump& page : result.pages) {
      json entries = json::array();
      for (const auto& e : page.entries)
        entries.push_back(
            {{"p", e.p}, {"paper_p", e.paper_p}, {"q", parity_name(e.q)}, {"group", to_string(e.group, ring)}});
      json diffs = json::array();
      for (const auto& d : page.differentials)
        diffs.push_back({{"p", d.p}, {"q", parity_name(d.q)}, {"matrix", matrix_json(d.matrix)}});
      pages.push_back({{"r", page.r}, {"entries", std::move(entries)}, {"differentials", std::move(diffs)}});
    }
    doc["pages"] = std::move(pages);
  }
  return doc.dump(2) + "\n";
}

ResultFile parse_result(std::string_view text) {
  json doc = parse_json(text);
  expect_keys(doc, {"name", "operation", "theory", "even", "odd", "coefficients", "pages"}, "result file");
  ResultFile out;
  const json& name = require(doc, "name", "result file");
  const json& op = require(doc, "operation", "result file");
  if (!name.is_string() || !op.is_string()) parse_fail("name and operation must be strings");
  out.name = name.get<std::string>();
  out.operation = op.get<std::string>();
  const json& theory = require(doc, "theory", "result file");
  if (theory == "K")
    out.theory = Theory::k;
  else if (theory == "HP")
    out.theory = Theory::hp;
  else
    parse_fail("theory must be \"K\" or \"HP\"");
  const Ring ring = coefficient_ring(out.theory);
  out.even = assembly_from_json(require(doc, "even", "result file"), Parity::even, ring);
  out.odd = assembly_from_json(require(doc, "odd", "result file"), Parity::odd, ring);

  if (auto it = doc.find("coefficients"); it != doc.end()) {
    expect_keys(*it, {"even", "odd"}, "coefficients");
    const json& e = require(*it, "even", "coefficients");
    const json& o = require(*it, "odd", "coefficients");
    if (!e.is_string() || !o.is_string()) parse_fail("coefficients must be group strings");
    out.coefficients = std::pair{parse_group(e.get<std::string>()).group, parse_group(o.get<std::string>()).group};
  }
  if (auto it = doc.find("pages"); it != doc.end()) {
    if (!it->is_array()) parse_fail("pages must be a list");
    for (const auto& page : *it) {
      expect_keys(page, {"r", "entries", "differentials"}, "page");
      PageDump dump;
      dump.r = static_cast<int>(as_long(require(page, "r", "page"), "r"));
      for (const auto& e : require(page, "entries", "page")) {
        expect_keys(e, {"p", "paper_p", "q", "group"}, "page entry");
        const json& g = require(e, "group", "page entry");
        if (!g.is_string()) parse_fail("page entry group must be a string");
        dump.entries.push_back({static_cast<int>(as_long(require(e, "p", "page entry"), "p")),
                                static_cast<int>(as_long(require(e, "paper_p", "page entry"), "paper_p")),
                                parity_from(require(e, "q", "page entry")), parse_group(g.get<std::string>()).group});
      }
      if (auto d = page.find("differentials"); d != page.end())
        for (const auto& rec : *d) {
          expect_keys(rec, {"p", "q", "matrix"}, "differential");
          dump.differentials.push_back({static_cast<int>(as_long(require(rec, "p", "differential"), "p")),
                                        parity_from(require(rec, "q", "differential")),
                                        matrix_from_json(require(rec, "matrix", "differential"), "matrix")});
        }
      out.pages.push_back(std::move(dump));
    }
  }
  return out;
}

std::string to_text(const ResultFile& result, bool paper_indexing) {
  const Ring ring = coefficient_ring(result.theory);
  std::ostringstream os;
  if (!result.name.empty()) os << "name: " << result.name << '\n';
  os << "operation: " << result.operation << '\n';
  os << "theory: " << (result.theory == Theory::k ? "K" : "HP") << '\n';
  if (result.coefficients)
    os << "coefficients: even " << to_string(result.coefficients->first, ring) << ", odd "
       << to_string(result.coefficients->second, ring) << '\n';
  for (const Assembly* a : {&result.even, &result.odd}) {
    os << parity_name(a->parity) << ": " << to_string(a->candidate, ring);
    if (a->up_to_extension()) os << " (up to extension)";
    os << '\n';
    if (!a->pieces.empty()) {
      os << "  pieces:";
      for (std::size_t i = 0; i < a->pieces.size(); ++i)
        os << (i ? ", " : " ") << "p=" << a->degrees[i] << ": " << to_string(a->pieces[i], ring);
      os << '\n';
    }
  }
  for (const PageDump& page : result.pages) {
    os << "E^" << page.r << (paper_indexing ? " (homological p)" : "") << ":\n";
    std::vector<PageDump::Entry> entries = page.entries;
    if (paper_indexing)
      std::stable_sort(entries.begin(), entries.end(),
                       [](const auto& a, const auto& b) { return a.paper_p < b.paper_p; });
    for (const auto& e : entries)
      os << "  p=" << (paper_indexing ? e.paper_p : e.p) << " q=" << parity_name(e.q) << ": "
         << to_string(e.group, ring) << '\n';
    for (const auto& d : page.differentials)
      os << "  d^" << page.r << " from (" << d.p << "," << parity_name(d.q) << "): " << d.matrix.to_string() << '\n';
  }
  return os.str();
}

}  // namespace nccw::io
