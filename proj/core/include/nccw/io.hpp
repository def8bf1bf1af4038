#pragma once

// File formats: complex files, morphism files, and result files (JSON), plus
// the group-string grammar
//
//   group := "0" | term (" (+) " term)*        ("+" is accepted on input)
//   term  := "Z" | "Z^" r | "Z/" d | "Q" | "Q^" r
//
// Malformed input raises Error(ParseError); well-formed input describing an
// invalid object raises the domain error from the module that rejects it.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nccw/cellmodel.hpp"
#include "nccw/constructions.hpp"
#include "nccw/exacthom.hpp"
#include "nccw/findim.hpp"
#include "nccw/ssengine.hpp"

namespace nccw::io {

inline constexpr std::size_t default_max_dim = 8;

// NCCW_MAX_DIM, or default_max_dim when unset. Throws ParseError when set to
// something other than a nonnegative integer.
std::size_t max_dim_from_env();

struct ComplexFile {
  std::string name;
  NCCWComplex complex;
};

ComplexFile parse_complex(std::string_view text, std::size_t max_dim = default_max_dim);
ComplexFile load_complex(const std::filesystem::path& path, std::size_t max_dim = default_max_dim);
// Canonical serialisation: stage records ordered by dim, keys sorted.
std::string serialize_complex(const std::string& name, const NCCWComplex& x);

// maps[i] is f_{first_degree + i}, row-major, shape c(dst) x c(src).
struct MorphismFile {
  int first_degree = 0;
  std::vector<std::vector<std::vector<long>>> maps;
  std::optional<ComplexFile> target;
};

MorphismFile parse_morphism(std::string_view text, const std::filesystem::path& base_dir,
                            std::size_t max_dim = default_max_dim);
MorphismFile load_morphism(const std::filesystem::path& path, std::size_t max_dim = default_max_dim);

// Throws InvalidMorphism on shape errors or non-commuting squares.
CellularMorphism make_morphism(const CochainComplex& src, const CochainComplex& dst, const MorphismFile& file);

struct ParsedGroup {
  FGAbelianGroup group;
  Ring ring = Ring::integers;
};

ParsedGroup parse_group(std::string_view text);

struct PageDump {
  struct Entry {
    int p = 0;
    int paper_p = 0;
    Parity q = Parity::even;
    FGAbelianGroup group;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct Differential {
    int p = 0;
    Parity q = Parity::even;
    IntMatrix matrix;
    friend bool operator==(const Differential&, const Differential&) = default;
  };
  int r = 1;
  std::vector<Entry> entries;
  std::vector<Differential> differentials;

  friend bool operator==(const PageDump&, const PageDump&) = default;
};

PageDump dump_page(const Page& page, const SpectralSequence& ss);

struct ResultFile {
  std::string name;
  std::string operation;  // "compute", "suspend", "cone", "cylinder", "mapcone", "fibration"
  Theory theory = Theory::k;
  Assembly even;
  Assembly odd;
  std::optional<std::pair<FGAbelianGroup, FGAbelianGroup>> coefficients;
  std::vector<PageDump> pages;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

std::string to_json(const ResultFile& result);
ResultFile parse_result(std::string_view json);
std::string to_text(const ResultFile& result, bool paper_indexing = false);

}  // namespace nccw::io
