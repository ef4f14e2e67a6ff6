#include "patmine/pattern.hpp"

#include <cctype>
#include <limits>

#include "patmine/error.hpp"

namespace patmine {

PatternNode PatternNode::make_item(std::string gid, bool exact, bool generalize) {
  PatternNode n;
  n.kind = NodeKind::Item;
  n.item = std::move(gid);
  n.exact = exact;
  n.generalize = generalize;
  return n;
}

PatternNode PatternNode::make_wildcard(bool generalize) {
  PatternNode n;
  n.kind = NodeKind::Wildcard;
  n.generalize = generalize;
  return n;
}

PatternNode PatternNode::make_unary(NodeKind kind, PatternNode child) {
  PatternNode n;
  n.kind = kind;
  n.offset = child.offset;
  n.children.push_back(std::move(child));
  return n;
}

PatternNode PatternNode::make_repeat(PatternNode child, std::size_t min, std::optional<std::size_t> max) {
  PatternNode n = make_unary(NodeKind::Repeat, std::move(child));
  n.min = min;
  n.max = max;
  return n;
}

PatternNode PatternNode::make_nary(NodeKind kind, std::vector<PatternNode> children) {
  PatternNode n;
  n.kind = kind;
  if (!children.empty()) n.offset = children.front().offset;
  n.children = std::move(children);
  return n;
}

bool operator==(const PatternNode& a, const PatternNode& b) {
  return a.kind == b.kind && a.item == b.item && a.exact == b.exact &&
         a.generalize == b.generalize && a.min == b.min && a.max == b.max &&
         a.children == b.children;
}

namespace {

bool is_gid_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PatternNode parse() {
    skip_ws();
    if (at_end()) fail("empty pattern");
    PatternNode root = parse_union();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw PatternError(message, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of pattern");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool starts_atom() {
    skip_ws();
    if (at_end()) return false;
    char c = peek();
    return c == '(' || c == '[' || c == '.' || c == '\'' || is_gid_char(c);
  }

  PatternNode parse_union() {
    std::vector<PatternNode> alternatives;
    alternatives.push_back(parse_concat());
    while (accept('|')) alternatives.push_back(parse_concat());
    if (alternatives.size() == 1) return std::move(alternatives.front());
    return PatternNode::make_nary(NodeKind::Union, std::move(alternatives));
  }

  PatternNode parse_concat() {
    if (!starts_atom()) {
      if (at_end()) fail("expected expression before end of pattern");
      fail(std::string("expected expression, found '") + peek() + "'");
    }
    std::vector<PatternNode> parts;
    while (starts_atom()) parts.push_back(parse_repeat());
    if (parts.size() == 1) return std::move(parts.front());
    return PatternNode::make_nary(NodeKind::Concat, std::move(parts));
  }

  std::size_t parse_number() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    std::size_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t digit = static_cast<std::size_t>(peek() - '0');
      if (value > (std::numeric_limits<std::size_t>::max() - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  PatternNode parse_repeat() {
    PatternNode node = parse_atom();
    for (;;) {
      skip_ws();
      if (at_end()) break;
      std::size_t op_offset = pos_;
      char c = peek();
      if (c == '*' || c == '+' || c == '?') {
        ++pos_;
        NodeKind kind = c == '*' ? NodeKind::Star : c == '+' ? NodeKind::Plus : NodeKind::Optional;
        node = PatternNode::make_unary(kind, std::move(node));
      } else if (c == '{') {
        ++pos_;
        std::size_t min = parse_number();
        std::optional<std::size_t> max = min;
        if (accept(',')) {
          skip_ws();
          if (!at_end() && peek() == '}') {
            max.reset();
          } else {
            max = parse_number();
          }
        }
        expect('}');
        if (max && *max < min) {
          throw PatternError("repetition {" + std::to_string(min) + "," + std::to_string(*max) +
                                 "} has minimum above maximum",
                             op_offset);
        }
        node = PatternNode::make_repeat(std::move(node), min, max);
      } else {
        break;
      }
      node.offset = op_offset;
    }
    return node;
  }

  std::string parse_quoted() {
    ++pos_;  // opening quote
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated quoted item");
      char c = peek();
      ++pos_;
      if (c == '\'') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated quoted item");
        c = peek();
        ++pos_;
      }
      out += c;
    }
    if (out.empty()) fail("empty quoted item");
    return out;
  }

  PatternNode parse_atom() {
    skip_ws();
    std::size_t start = pos_;
    char c = peek();
    PatternNode node;
    if (c == '(' || c == '[') {
      ++pos_;
      PatternNode inner = parse_union();
      expect(c == '(' ? ')' : ']');
      node = c == '(' ? PatternNode::make_unary(NodeKind::Capture, std::move(inner)) : std::move(inner);
    } else if (c == '.') {
      ++pos_;
      node = PatternNode::make_wildcard(accept('^'));
    } else {
      std::string gid;
      if (c == '\'') {
        gid = parse_quoted();
      } else {
        while (!at_end() && is_gid_char(peek())) gid += text_[pos_++];
      }
      node = PatternNode::make_item(std::move(gid));
      node.exact = accept('=');
      node.generalize = accept('^');
    }
    node.offset = start;
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void annotate(PatternNode& node, bool under_capture) {
  switch (node.kind) {
    case NodeKind::Item:
    case NodeKind::Wildcard:
      node.captured = under_capture;
      if (node.generalize && !under_capture) {
        throw PatternError("generalization operator '^' must appear inside a capture group",
                           node.offset);
      }
      return;
    case NodeKind::Capture:
      node.captured = true;
      break;
    case NodeKind::Repeat:
      if (node.max && *node.max < node.min) {
        throw PatternError("repetition has minimum above maximum", node.offset);
      }
      [[fallthrough]];
    default:
      node.captured = under_capture;
      break;
  }
  for (auto& child : node.children) annotate(child, node.captured);
}

std::string render_gid(const std::string& gid) {
  bool plain = !gid.empty();
  for (char c : gid) plain = plain && is_gid_char(c);
  if (plain) return gid;
  std::string out = "'";
  for (char c : gid) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::string render_leaf(const PatternNode& node) {
  std::string out = node.kind == NodeKind::Wildcard ? "." : render_gid(node.item);
  if (node.exact) out += '=';
  if (node.generalize) out += '^';
  return out;
}

void collect_leaves(const PatternNode& node, std::vector<CapturedLeaf>& out) {
  if (node.kind == NodeKind::Item || node.kind == NodeKind::Wildcard) {
    out.push_back({render_leaf(node), node.captured});
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

std::string bracket(const std::string& s) { return "[" + s + "]"; }

}  // namespace

PatternNode parse_pattern(std::string_view text) {
  PatternNode root = Parser(text).parse();
  annotate_and_validate(root);
  return root;
}

void annotate_and_validate(PatternNode& root) { annotate(root, false); }

std::vector<CapturedLeaf> captured_spans(const PatternNode& root) {
  std::vector<CapturedLeaf> out;
  collect_leaves(root, out);
  return out;
}

std::string to_string(const PatternNode& node) {
  switch (node.kind) {
    case NodeKind::Item:
    case NodeKind::Wildcard:
      return render_leaf(node);
    case NodeKind::Capture:
      return "(" + to_string(node.children[0]) + ")";
    case NodeKind::Concat: {
      std::string out;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& child = node.children[i];
        if (i) out += ' ';
        auto s = to_string(child);
        out += (child.kind == NodeKind::Concat || child.kind == NodeKind::Union) ? bracket(s) : s;
      }
      return out;
    }
    case NodeKind::Union: {
      std::string out;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& child = node.children[i];
        if (i) out += '|';
        auto s = to_string(child);
        out += child.kind == NodeKind::Union ? bracket(s) : s;
      }
      return out;
    }
    default: {
      const auto& child = node.children[0];
      auto s = to_string(child);
      if (child.kind == NodeKind::Concat || child.kind == NodeKind::Union) s = bracket(s);
      switch (node.kind) {
        case NodeKind::Star: return s + "*";
        case NodeKind::Plus: return s + "+";
        case NodeKind::Optional: return s + "?";
        default: break;
      }
      if (node.max == node.min) return s + "{" + std::to_string(node.min) + "}";
      if (!node.max) return s + "{" + std::to_string(node.min) + ",}";
      return s + "{" + std::to_string(node.min) + "," + std::to_string(*node.max) + "}";
    }
  }
}

std::string describe(const PatternNode& node) {
  auto join_children = [&] {
    std::string out;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i) out += ',';
      out += describe(node.children[i]);
    }
    return out;
  };
  switch (node.kind) {
    case NodeKind::Item: {
      std::string out = "Item(" + node.item;
      if (node.exact) out += ",exact";
      if (node.generalize) out += ",gen";
      return out + ")";
    }
    case NodeKind::Wildcard: return node.generalize ? "Wildcard(gen)" : "Wildcard";
    case NodeKind::Capture: return "Capture(" + join_children() + ")";
    case NodeKind::Concat: return "Concat(" + join_children() + ")";
    case NodeKind::Union: return "Union(" + join_children() + ")";
    case NodeKind::Optional: return "Optional(" + join_children() + ")";
    case NodeKind::Star: return "Star(" + join_children() + ")";
    case NodeKind::Plus: return "Plus(" + join_children() + ")";
    case NodeKind::Repeat:
      return "Repeat(" + join_children() + "," + std::to_string(node.min) + "," +
             (node.max ? std::to_string(*node.max) : std::string("inf")) + ")";
  }
  return {};
}

}  // namespace patmine
