#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schemaforge/inference.hpp"
#include "schemaforge/schema.hpp"
#include "schemaforge/term.hpp"

namespace schemaforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view sh = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

Term rdf_type();

/// Ordered prefix -> namespace table. Starts with rdf, rdfs, sh and xsd.
class PrefixMap {
 public:
  PrefixMap();

  void declare(const std::string& prefix, const std::string& iri);
  /// Namespace for `prefix`, or nullptr when undeclared.
  const std::string* lookup(const std::string& prefix) const;

  /// Term in the surface syntax: prefixed name when possible.
  std::string render(const Term& t) const;
  std::string render(const TriplePattern& t) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Turtle subset: @prefix/PREFIX, prefixed names, <iri>, "literals"
/// (datatype and language tags dropped), numbers and booleans as literals,
/// `a`, `;`, `,`, `[ ]` blank nodes, `( )` collections, # comments.
Graph parse_graph(std::string_view text, const std::string& file = "<input>",
                  PrefixMap* prefixes = nullptr);

/// `CONSTRUCT { ... } WHERE { ... }` blocks, each optionally preceded by a
/// `# name: label` comment.
RuleSet parse_rules(std::string_view text, const std::string& file = "<input>",
                    PrefixMap* prefixes = nullptr);

/// `GRAPH { ... }`, `NOLIT { ?v ... }`, `EXISTS { a => c ; ... }`. The result
/// is validated; invariant violations are reported as ParseError.
TriplestoreSchema parse_schema(std::string_view text, const std::string& file = "<input>",
                               PrefixMap* prefixes = nullptr);

std::string write_graph(const Graph& g, const PrefixMap& prefixes = {});
std::string write_rules(const RuleSet& rules, const PrefixMap& prefixes = {});
std::string write_schema(const TriplestoreSchema& s, const PrefixMap& prefixes = {});

/// Whole file as a string; throws ParseError (line 0) if unreadable.
std::string read_file(const std::string& path);

}  // namespace schemaforge
