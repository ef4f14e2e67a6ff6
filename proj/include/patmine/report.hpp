#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "patmine/dictionary.hpp"
#include "patmine/match.hpp"
#include "patmine/mine.hpp"

namespace patmine {

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// `pattern<TAB>frequency` lines, most frequent first, ties in lexicographic
/// order of the rendered pattern.
std::string format_patterns(const PatternSet& patterns, const Dictionary& dict);

/// Generated sequences of one input line as `sequence<TAB>line` rows, sorted
/// by rendered sequence.
std::string format_generated(const SequenceSet& generated, std::size_t line, const Dictionary& dict);

}  // namespace patmine
