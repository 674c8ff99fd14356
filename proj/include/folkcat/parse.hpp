#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "folkcat/fincat.hpp"
#include "folkcat/weights.hpp"

namespace folkcat {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

/// Everything defined in one input file, by name.
struct Document {
  std::map<std::string, FinCat> categories;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, Weight> weights;
  std::map<std::string, Diagram> diagrams;

  const FinCat& category(const std::string& name) const;
  const FinFunctor& functor(const std::string& name) const;
  const Weight& weight(const std::string& name) const;
  const Diagram& diagram(const std::string& name) const;
};

/// Parses the block-structured text format: `category`, `functor` and
/// `weight` definitions with implicit identities. Throws ParseError with the
/// offending line on malformed or inconsistent input.
Document parse_document(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace folkcat
