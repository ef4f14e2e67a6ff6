#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "patmine/dictionary.hpp"
#include "patmine/fst.hpp"
#include "patmine/sequence_db.hpp"

namespace patmine {

using SequenceSet = std::set<Sequence>;

/// (output label, target state) pairs of the transitions leaving `state`
/// whose input label matches `item`.
std::vector<std::pair<OutputLabel, StateId>> delta(const CFst& fst, StateId state, ItemId item,
                                                   const Dictionary& dict);

/// G(T): every non-empty output of an accepting run on `input`, computed by
/// backtracking over an explicit stack. In partial mode a run contributes
/// its buffered output whenever it enters a final state, whether or not the
/// input has been consumed; the caller is expected to have compiled `.*E`.
SequenceSet generate(const CFst& fst, const Sequence& input, const Dictionary& dict,
                     MatchMode mode = MatchMode::Full);

/// Generated sequences whose items all have frequency >= sigma. Runs are
/// abandoned as soon as they produce an infrequent item.
SequenceSet generate_filtered(const CFst& fst, const Sequence& input, const Dictionary& dict,
                              std::uint64_t sigma, MatchMode mode = MatchMode::Full);

}  // namespace patmine
