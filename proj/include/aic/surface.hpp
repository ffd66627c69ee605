#ifndef AIC_SURFACE_HPP
#define AIC_SURFACE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aic/term.hpp"
#include "aic/types.hpp"
#include "aic/usage.hpp"

namespace aic {

struct RegionDecl {
  std::string name;
  bool persistent = false;
  TypePtr content;
  Family family = Family::Aff;
};

struct VarDecl {
  std::string name;
  Mult mult = Mult::One;  // 1 or inf
  TypePtr type;
};

// A parsed program file: region and free-variable preambles in declaration
// order, and the program term. After parse all binder names are globally
// distinct and every identifier is resolved.
struct SourceFile {
  std::vector<RegionDecl> regions;
  std::vector<VarDecl> vars;
  TermPtr program;
};

class ParseError : public std::runtime_error {
 public:
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
};

SourceFile parse(std::string_view text);

// Inverse of parse up to alpha-renaming: parse(print_source(f)) has the same
// preambles and an alpha-equal program.
std::string print_source(const SourceFile& f);

}  // namespace aic

#endif
