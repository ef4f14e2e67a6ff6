#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace patmine {

enum class NodeKind { Item, Wildcard, Capture, Concat, Union, Repeat, Optional, Star, Plus };

/// Parse tree of a pattern expression.
///
/// Item and Wildcard are leaves. Capture, Repeat, Optional, Star and Plus
/// have exactly one child; Concat and Union have two or more. `captured` is
/// filled in by the parser for leaves and tells whether some ancestor is a
/// Capture node.
struct PatternNode {
  NodeKind kind = NodeKind::Wildcard;
  std::string item;                  // Item only
  bool exact = false;                // Item only: `w=`
  bool generalize = false;           // Item and Wildcard: `^`
  std::size_t min = 0;               // Repeat only
  std::optional<std::size_t> max;    // Repeat only; nullopt means unbounded
  std::vector<PatternNode> children;
  bool captured = false;
  std::size_t offset = 0;            // byte offset in the source text

  static PatternNode make_item(std::string gid, bool exact = false, bool generalize = false);
  static PatternNode make_wildcard(bool generalize = false);
  static PatternNode make_unary(NodeKind kind, PatternNode child);
  static PatternNode make_repeat(PatternNode child, std::size_t min, std::optional<std::size_t> max);
  static PatternNode make_nary(NodeKind kind, std::vector<PatternNode> children);

  /// Structural equality; ignores `offset` and `captured`.
  friend bool operator==(const PatternNode& a, const PatternNode& b);
};

/// Parses and validates a pattern expression. Throws PatternError with the
/// byte offset of the problem.
///
/// Grammar (whitespace between tokens is ignored):
///   union   := concat ('|' concat)*
///   concat  := repeat+
///   repeat  := atom ('*' | '+' | '?' | '{' n '}' | '{' n ',' '}' | '{' n ',' m '}')*
///   atom    := '(' union ')' | '[' union ']' | '.' ['^'] | item ['='] ['^']
///   item    := [A-Za-z0-9_]+ | '\'' quoted '\''
PatternNode parse_pattern(std::string_view text);

/// Validation performed by the parser, exposed for hand-built trees: marks
/// captured leaves and rejects uncaptured generalization and {n,m}, n > m.
void annotate_and_validate(PatternNode& root);

struct CapturedLeaf {
  std::string text;   // leaf rendered in pattern syntax
  bool captured;
};

/// Leaves in left-to-right order with their captured flag.
std::vector<CapturedLeaf> captured_spans(const PatternNode& root);

/// Canonical rendering; parse_pattern(to_string(n)) == n.
std::string to_string(const PatternNode& node);

/// Debug rendering of the tree structure, e.g. `Concat(Item(c),Star(Item(d)))`.
std::string describe(const PatternNode& node);

}  // namespace patmine
