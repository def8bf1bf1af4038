// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-nccw-binary> <fixture-dir>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "nccw/cellmodel.hpp"
#include "nccw/constructions.hpp"
#include "nccw/error.hpp"
#include "nccw/fibration.hpp"
#include "nccw/io.hpp"
#include "nccw/ssengine.hpp"
#include "oracles.hpp"

using namespace nccw;
namespace fs = std::filesystem;

namespace {

fs::path fixtures;
std::string cli_path;

// Collects the first failed expectation of a criterion.
struct Check {
  std::string failure;
  void operator()(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

FGAbelianGroup z(std::size_t r) { return FGAbelianGroup::free(r); }
FGAbelianGroup zmod(long d) { return FGAbelianGroup::from_cyclic_orders(0, {Integer(d)}); }

FGAbelianGroup parity_sum(const CochainComplex& c, Parity parity) {
  FGAbelianGroup sum;
  for (int p = c.first_degree; p <= c.last_degree(); ++p)
    if (parity_of(p) == parity) sum = direct_sum(sum, cohomology_at(c, p));
  return sum;
}

bool resolved_as(const Assembly& a, const FGAbelianGroup& g) { return a.resolved && *a.resolved == g; }

TheoryGroups theories_of(const NCCWComplex& x, Theory theory) {
  return compute_theories(cochain_complex(x, theory), theory);
}

bool snf_postconditions(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  if (snf.u * m * snf.v != snf.d) return false;
  if (abs(testing::determinant(snf.u)) != 1 || abs(testing::determinant(snf.v)) != 1) return false;
  for (std::size_t i = 0; i < snf.d.rows(); ++i)
    for (std::size_t j = 0; j < snf.d.cols(); ++j)
      if (i != j && sgn(snf.d(i, j)) != 0) return false;
  const auto diag = snf.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    if (sgn(diag[i]) < 0) return false;
    if (sgn(diag[i]) == 0 ? sgn(diag[i + 1]) != 0 : !mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()))
      return false;
  }
  return true;
}

std::string criterion1() {
  Check check;
  struct Case {
    const char* file;
    FGAbelianGroup even, odd;
    bool extension;
  };
  const Case cases[] = {
      {"point.json", z(1), {}, false},   {"interval.json", z(1), {}, false}, {"circle.json", z(1), z(1), false},
      {"s2.json", z(2), {}, false},      {"torus.json", z(2), z(2), false},
      {"rp2.json", direct_sum(z(1), zmod(2)), {}, true},
  };
  for (const Case& c : cases) {
    const NCCWComplex x = io::load_complex(fixtures / c.file).complex;
    const CochainComplex cc = cochain_complex(x, Theory::k);
    const TheoryGroups t = compute_theories(cc, Theory::k);
    check(t.even.candidate == c.even && t.odd.candidate == c.odd, std::string(c.file) + ": groups");
    check(t.even.up_to_extension() == c.extension && !t.odd.up_to_extension(), std::string(c.file) + ": extension");
    check(t.even.candidate == parity_sum(cc, Parity::even) && t.odd.candidate == parity_sum(cc, Parity::odd),
          std::string(c.file) + ": direct cohomology");
  }
  const TheoryGroups rp2 = theories_of(io::load_complex(fixtures / "rp2.json").complex, Theory::k);
  check(rp2.even.pieces == std::vector<FGAbelianGroup>{z(1), zmod(2)}, "rp2: pieces");
  return check.failure;
}

std::string criterion2() {
  Check check;
  for (long p : {2L, 3L, 5L}) {
    const std::string file = "i" + std::to_string(p) + ".json";
    const NCCWComplex x = io::load_complex(fixtures / file).complex;
    const TheoryGroups k = theories_of(x, Theory::k);
    const auto [ker, coker] = testing::six_term_oracle(IntMatrix{{p, -p}});
    check(resolved_as(k.even, z(1)) && resolved_as(k.odd, zmod(p)), file + ": K groups");
    check(ker == z(1) && coker == zmod(p), file + ": oracle");
    check(resolved_as(k.even, ker) && resolved_as(k.odd, coker), file + ": K matches oracle");
    const TheoryGroups hp = theories_of(x, Theory::hp);
    check(resolved_as(hp.even, z(1)) && resolved_as(hp.odd, {}), file + ": HP groups");
  }
  return check.failure;
}

std::string criterion3() {
  Check check;
  std::mt19937 rng(300);
  for (int trial = 0; trial < 250; ++trial) {
    const NCCWComplex x = testing::random_stage_one(rng, 3, 3);
    const auto [ker, coker] = testing::six_term_oracle(x.coboundaries()[0]);
    const TheoryGroups k = theories_of(x, Theory::k);
    check(resolved_as(k.even, ker) && resolved_as(k.odd, coker), "trial " + std::to_string(trial));
  }
  return check.failure;
}

std::string criterion4() {
  Check check;
  std::mt19937 rng(400);
  for (int trial = 0; trial < 150; ++trial) {
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    const CochainComplex c = testing::random_complex(rng, 3, 4, 3);
    c.validate();
    for (const IntMatrix& d : c.differentials) check(snf_postconditions(d), tag + "SNF");

    SpectralSequence ss = SpectralSequence::from_cellular(c, Theory::k);
    const int k = c.last_degree();
    check(ss.stable_page() <= k + 1, tag + "stable page");
    ss.page(k + 3);
    const auto& pages = ss.pages();
    for (std::size_t i = 0; i + 1 < pages.size(); ++i)
      for (const auto& [b, g] : pages[i + 1].entries)
        check(g.free_rank() <= pages[i].at(b.p, b.q).free_rank(), tag + "free ranks");
    for (std::size_t i = static_cast<std::size_t>(k); i + 1 < pages.size(); ++i)
      check(pages[i].entries == pages[i + 1].entries, tag + "stabilization");

    long chi = 0;
    for (int p = 0; p <= k; ++p) chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(c.rank_at(p));
    const long ranks = static_cast<long>(ss.assemble(Parity::even).candidate.free_rank()) -
                       static_cast<long>(ss.assemble(Parity::odd).candidate.free_rank());
    check(chi == ranks, tag + "Euler characteristic");

    // Corrupt one differential so that d d != 0 and expect rejection.
    if (c.differentials.size() >= 2) {
      CochainComplex bad = c;
      bool found = false;
      for (std::size_t p = 0; p + 1 < bad.differentials.size() && !found; ++p) {
        IntMatrix& d = bad.differentials[p];
        const IntMatrix& next = bad.differentials[p + 1];
        for (std::size_t i = 0; i < next.rows() && !found; ++i)
          for (std::size_t j = 0; j < next.cols() && !found; ++j)
            if (sgn(next(i, j)) != 0 && d.cols() > 0) {
              for (std::size_t col = 0; col < d.cols(); ++col) d(j, col) += 1;
              found = !(next * d).is_zero();
              if (!found)
                for (std::size_t col = 0; col < d.cols(); ++col) d(j, col) -= 1;
            }
      }
      if (found) {
        bool rejected = false;
        try {
          bad.validate();
        } catch (const Error& e) {
          rejected = e.kind() == ErrorKind::ComplexViolation;
        }
        check(rejected, tag + "dd != 0 accepted");
      }
    }
  }
  return check.failure;
}

std::string criterion5() {
  Check check;
  std::mt19937 rng(400);
  for (int trial = 0; trial < 150; ++trial) {
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    const CochainComplex c = testing::random_complex(rng, 3, 4, 3);
    for (Theory theory : {Theory::k, Theory::hp}) {
      const TheoryGroups a = compute_theories(c, theory);
      const TheoryGroups s = compute_theories(suspend(c), theory);
      const TheoryGroups ss = compute_theories(suspend(suspend(c)), theory);
      check(a.even.candidate == s.odd.candidate && a.odd.candidate == s.even.candidate, tag + "suspension");
      check(a.even.candidate == ss.even.candidate && a.odd.candidate == ss.odd.candidate, tag + "double suspension");

      const TheoryGroups cone_groups = cone(c).theories(theory);
      check(resolved_as(cone_groups.even, {}) && resolved_as(cone_groups.odd, {}), tag + "cone");

      const CellularMorphism id = CellularMorphism::identity(c);
      const TheoryGroups cyl = compute_theories(mapping_cylinder(id).model, theory);
      check(cyl.even == a.even && cyl.odd == a.odd, tag + "cylinder");

      const TheoryGroups acyclic = compute_theories(mapping_cone_complex(id), theory);
      check(acyclic.even.candidate.is_zero() && acyclic.odd.candidate.is_zero(), tag + "cone of identity");

      const TheoryGroups rel = compute_theories(mapping_cone_complex(CellularMorphism::to_zero(c)), theory);
      check(rel.even.candidate == s.even.candidate && rel.odd.candidate == s.odd.candidate, tag + "cone to zero");
    }
  }
  return check.failure;
}

std::string criterion6() {
  Check check;
  auto data = [](CochainComplex base, FGAbelianGroup even, FGAbelianGroup odd) {
    SerreFibrationData d;
    d.base = std::move(base);
    d.coeff_even = std::move(even);
    d.coeff_odd = std::move(odd);
    return d;
  };
  const auto load = [](const char* file) {
    return cochain_complex(io::load_complex(fixtures / file).complex, Theory::k);
  };

  const TheoryGroups circle = compute_total(data(load("circle.json"), z(1), z(1)));
  const TheoryGroups torus = compute_theories(load("torus.json"), Theory::k);
  check(resolved_as(circle.even, z(2)) && resolved_as(circle.odd, z(2)), "circle base");
  check(circle.even.resolved == torus.even.resolved && circle.odd.resolved == torus.odd.resolved,
        "circle base vs torus");

  const FGAbelianGroup g_even = direct_sum(z(1), zmod(3)), g_odd = zmod(4);
  const TheoryGroups point = compute_total(data(load("point.json"), g_even, g_odd));
  check(resolved_as(point.even, g_even) && resolved_as(point.odd, g_odd), "point base");

  const TheoryGroups i2 = compute_total(data(load("i2.json"), z(1), {}));
  check(resolved_as(i2.even, z(1)) && resolved_as(i2.odd, zmod(2)), "I_2 base");
  return check.failure;
}

struct Spawned {
  int code = -1;
  std::string out;
};

Spawned spawn(const std::string& args) {
  Spawned s;
  const std::string cmd = "\"" + cli_path + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return s;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) s.out.append(buf, n);
  const int status = pclose(pipe);
  s.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

std::string criterion7() {
  Check check;
  for (const char* file : {"rp2.json", "i2.json", "torus.json"}) {
    const std::string path = "\"" + (fixtures / file).string() + "\"";
    const Spawned a = spawn("compute --json --pages " + path);
    const Spawned b = spawn("compute --json --pages " + path);
    check(a.code == 0 && !a.out.empty(), std::string(file) + ": run failed");
    check(a.out == b.out, std::string(file) + ": output differs between runs");
    try {
      io::parse_result(a.out);
    } catch (const Error& e) {
      check(false, std::string(file) + ": output does not parse: " + e.what());
    }
  }
  check(spawn("compute \"" + (fixtures / "circle.json").string() + "\"").code == 0, "valid file exit code");
  check(spawn("compute \"" + (fixtures / "bad_coboundary.json").string() + "\"").code == 1, "dd != 0 exit code");
  check(spawn("compute \"" + (fixtures / "malformed.json").string() + "\"").code == 2, "malformed exit code");
  return check.failure;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <nccw-binary> <fixture-dir>\n";
    return 2;
  }
  cli_path = argv[1];
  fixtures = argv[2];

  const std::pair<const char*, std::function<std::string()>> criteria[] = {
      {"1 classical CW oracles", criterion1},
      {"2 dimension-drop torsion", criterion2},
      {"3 one-dimensional equivalence sweep", criterion3},
      {"4 engine laws", criterion4},
      {"5 construction laws", criterion5},
      {"6 Leray-Serre cross-check", criterion6},
      {"7 CLI contract", criterion7},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    std::string failure;
    try {
      failure = run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure.empty()) {
      std::cout << "PASS criterion " << name << '\n';
    } else {
      std::cout << "FAIL criterion " << name << ": " << failure << '\n';
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
