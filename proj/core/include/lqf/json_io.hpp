#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lqf/calculus.hpp"
#include "lqf/matrix.hpp"
#include "lqf/oml.hpp"
#include "lqf/term.hpp"

namespace lqf {

// Readers throw InputError with "source:line:column" for malformed JSON and
// "source: path: detail" for well-formed JSON with bad content.

std::string read_file(const std::string& path);

struct StructureFile {
  FiniteOml lattice;
  std::optional<ExpandedStructure> expanded;  // present when "w" and "wstar" are given
};

/// Raw tables only, for validation without construction.
OmlTables parse_tables(std::string_view text, std::string_view source = "<input>");
StructureFile parse_structure(std::string_view text, std::string_view source = "<input>");
StructureFile load_structure(const std::string& path);
std::string structure_to_json(const FiniteOml& lattice, const ExpandedStructure* expanded = nullptr);

Proof parse_proof(std::string_view text, std::string_view source = "<input>");
Proof load_proof(const std::string& path);
std::string proof_to_json(const Proof& proof);

/// Row-major array of "p/q" strings, either bare or under a "matrix" key.
RationalMatrix parse_matrix(std::string_view text, std::string_view source = "<input>");
RationalMatrix load_matrix(const std::string& path);
std::string matrix_to_json(const RationalMatrix& m);

}  // namespace lqf
