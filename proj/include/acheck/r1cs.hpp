#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/field.hpp"

namespace acheck {

struct LinearTerm {
  std::uint32_t wire = 0;
  FieldElement coeff;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};
using LinearCombination = std::vector<LinearTerm>;

struct R1csConstraint {
  LinearCombination a, b, c;

  friend bool operator==(const R1csConstraint&, const R1csConstraint&) = default;
};

struct R1csFile {
  std::uint32_t field_size_bytes = 32;
  Prime prime = Prime::bn254();
  std::uint32_t n_wires = 1;
  std::uint32_t n_pub_out = 0;
  std::uint32_t n_pub_in = 0;
  std::uint32_t n_prv_in = 0;
  std::uint64_t n_labels = 0;
  std::vector<R1csConstraint> constraints;
  std::vector<std::uint64_t> wire_to_label;  // empty when the section is absent

  WireMetadata metadata() const { return {n_wires, n_pub_out, n_pub_in, n_prv_in}; }
  friend bool operator==(const R1csFile&, const R1csFile&) = default;
};

// Binary R1CS, version 1. Throws FormatError carrying the byte offset.
R1csFile parse_r1cs(std::span<const std::uint8_t> bytes);
// Emits header, constraints and (when present) the wire-to-label section.
std::vector<std::uint8_t> write_r1cs(const R1csFile& file);

struct SymRow {
  std::int64_t label = 0;
  std::int64_t wire = 0;
  std::int64_t component = 0;
  std::string name;

  friend bool operator==(const SymRow&, const SymRow&) = default;
};
using SymTable = std::vector<SymRow>;

// One "label,wire,component,name" row per nonempty line. Throws FormatError
// carrying the 1-based line number.
SymTable parse_sym(const std::string& text);

enum class CSign { Neg, Pos };

struct LoweringOptions {
  // Neg reads each row as A*B - C = 0 (compiler convention); Pos as A*B + C = 0.
  CSign c_sign = CSign::Neg;
  // Re-scopes O to the named signals; a leading "main." may be omitted.
  std::optional<std::vector<std::string>> output_names;
};

ConstraintSystem lower_r1cs(const R1csFile& r1cs, const SymTable& sym, const LoweringOptions& opts = {});

std::vector<std::uint8_t> read_binary_file(const std::string& path);
std::string read_text_file(const std::string& path);

}  // namespace acheck
