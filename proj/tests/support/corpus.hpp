#pragma once

// Shared verification subjects: the handwritten fixture programs and a
// seeded stream of generated ones, each paired with a lattice, an attacker,
// and small input pools. Used by the property tests and the acceptance run.

#include <optional>
#include <string>
#include <vector>

#include "nmifc/checkers.hpp"
#include "nmifc/lattice.hpp"
#include "nmifc/syntax.hpp"

#include "gen.hpp"

namespace nmifc::testsupport {

// Directory holding the .nm/.json fixture files; defined by the build.
std::string fixture_dir();
std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

struct Subject {
  std::string name;
  LatticeConfig lattice;
  PrincipalPtr pc;       // never null
  ExprPtr body;          // free vars x and y
  TypePtr tx, ty;
  Attacker attacker;
  Pools pools;
  bool well_typed = true;     // false for the deliberate exploit mutants
  bool has_downgrade = false; // any decl/endorse in the body
};

// Loads one fixture program (with its lattice) and builds pools by
// enumerating the input types' values, capped at four each.
Subject load_fixture_subject(const std::string& name, const std::string& program_file,
                             const std::string& lattice_file,
                             const std::vector<std::string>& attacker_atoms,
                             const std::string& tx_text, const std::string& ty_text);

// The five handwritten verification fixtures (secure versions plus the
// inept-attack program).
std::vector<Subject> fixture_subjects();

// The three exploit mutants (ill-typed by design).
std::vector<Subject> mutant_subjects();

// count generated programs over small random lattices. Deterministic in seed.
std::vector<Subject> generated_subjects(std::uint64_t seed, int count,
                                        const ProgramGenOptions& opts = {});

// Runs body[x:=v][y:=w] exactly the way the security checkers do: input
// markers first, same default pc, same fuel accounting.
RunRecord run_subject(const Subject& s, const ExprPtr& v, const ExprPtr& w, long fuel = 100000);

// Pools capped at n values per side.
Pools capped_pools(const Pools& p, std::size_t n);

}  // namespace nmifc::testsupport
