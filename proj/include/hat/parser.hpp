#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hat/formula.hpp"

namespace hat {

enum class Format { Tptp, Native };

struct Problem {
  std::string name;
  std::vector<FormulaPtr> axioms;
  FormulaPtr conjecture;  // null when the problem has none
  bool uses_equality = false;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  std::string name = "problem";
  // Root for TPTP include directives. Empty means the including file's directory.
  std::filesystem::path axiom_root;
  std::filesystem::path base_dir;
};

// Formulas come back closed (free variables are universally quantified) and
// rectified: every binder owns a distinct variable id across the problem.
Problem parse_problem(std::string_view text, Format format, const ParseOptions& opts = {});
Problem load_problem(const std::filesystem::path& path, Format format,
                     const std::filesystem::path& axiom_root = {});

// Single native-syntax formula, e.g. "( (p=>q) ; (q=>p) )".
FormulaPtr parse_native(std::string_view text);

// Guesses the format from the extension: .p/.ax/.tptp are TPTP.
Format format_for(const std::filesystem::path& path);

FormulaPtr assemble_goal(const Problem& p);

bool uses_equality(const FormulaPtr& f);
// (E1 & ... & Ek) => F for the equality theory over F's signature, or F
// itself when F has no equality atom.
FormulaPtr add_equality_axioms(const FormulaPtr& f);

inline constexpr const char* kEquality = "=";

}  // namespace hat
