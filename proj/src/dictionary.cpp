#include "patmine/dictionary.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "patmine/error.hpp"
#include "patmine/sequence_db.hpp"

namespace patmine {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<ItemId> bfs_closure(ItemId start, const std::vector<std::vector<ItemId>>& edges,
                                std::vector<char>& seen) {
  std::vector<ItemId> order{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (ItemId next : edges[order[head]]) {
      if (!seen[next]) {
        seen[next] = 1;
        order.push_back(next);
      }
    }
  }
  for (ItemId id : order) seen[id] = 0;
  return order;
}

}  // namespace

Dictionary Dictionary::from_hierarchy(std::string_view text,
                                      std::span<const std::string> vocabulary) {
  Dictionary dict;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("hierarchy line " + std::to_string(line_no) + ": expected child<TAB>parent");
    }
    auto child = line.substr(0, tab);
    auto parent = line.substr(tab + 1);
    if (child.empty() || parent.empty() || parent.find('\t') != std::string_view::npos) {
      throw DataError("hierarchy line " + std::to_string(line_no) + ": expected child<TAB>parent");
    }
    dict.add_edge(child, parent);
  }
  for (const auto& gid : vocabulary) dict.add_item(gid);
  return dict;
}

ItemId Dictionary::add_item(std::string_view gid) {
  if (auto it = ids_.find(std::string(gid)); it != ids_.end()) return it->second;
  if (frozen_) throw DataError("unknown item '" + std::string(gid) + "' (dictionary is frozen)");
  if (gid.empty()) throw DataError("empty item identifier");
  if (gids_.empty()) {
    // Slot 0 is reserved so that ids index the tables directly.
    parents_.emplace_back();
    children_.emplace_back();
    frequencies_.push_back(0);
  }
  gids_.emplace_back(gid);
  auto id = static_cast<ItemId>(gids_.size());
  ids_.emplace(std::string(gid), id);
  parents_.emplace_back();
  children_.emplace_back();
  frequencies_.push_back(0);
  closures_valid_ = false;
  return id;
}

void Dictionary::add_edge(std::string_view child, std::string_view parent) {
  if (frozen_) throw DataError("cannot add hierarchy edges to a frozen dictionary");
  ItemId c = add_item(child);
  ItemId p = add_item(parent);
  auto& ps = parents_[c];
  if (std::find(ps.begin(), ps.end(), p) != ps.end()) return;
  if (c == p || reaches(p, c)) {
    throw DataError("cycle in item hierarchy involving '" + std::string(child) + "'");
  }
  ps.push_back(p);
  children_[p].push_back(c);
  closures_valid_ = false;
}

bool Dictionary::reaches(ItemId from, ItemId target) const {
  std::vector<ItemId> stack{from};
  std::vector<char> seen(gids_.size() + 1, 0);
  while (!stack.empty()) {
    ItemId cur = stack.back();
    stack.pop_back();
    if (cur == target) return true;
    if (seen[cur]) continue;
    seen[cur] = 1;
    for (ItemId p : parents_[cur]) stack.push_back(p);
  }
  return false;
}

std::optional<ItemId> Dictionary::find(std::string_view gid) const {
  if (auto it = ids_.find(std::string(gid)); it != ids_.end()) return it->second;
  return std::nullopt;
}

ItemId Dictionary::id(std::string_view gid) const {
  if (auto found = find(gid)) return *found;
  throw DataError("unknown item '" + std::string(gid) + "'");
}

void Dictionary::check_id(ItemId id) const {
  if (!valid(id)) throw DataError("unknown item id " + std::to_string(id));
}

const std::string& Dictionary::gid(ItemId id) const {
  check_id(id);
  return gids_[id - 1];
}

std::span<const ItemId> Dictionary::parents(ItemId id) const {
  check_id(id);
  return parents_[id];
}

std::span<const ItemId> Dictionary::children(ItemId id) const {
  check_id(id);
  return children_[id];
}

void Dictionary::ensure_closures() const {
  if (closures_valid_) return;
  const std::size_t n = gids_.size();
  ancestors_.assign(n + 1, {});
  descendants_.assign(n + 1, {});
  std::vector<char> seen(n + 1, 0);
  for (ItemId id = 1; id <= n; ++id) {
    ancestors_[id] = bfs_closure(id, parents_, seen);
    descendants_[id] = bfs_closure(id, children_, seen);
  }
  closures_valid_ = true;
}

std::span<const ItemId> Dictionary::ancestors(ItemId id) const {
  check_id(id);
  ensure_closures();
  return ancestors_[id];
}

std::span<const ItemId> Dictionary::descendants(ItemId id) const {
  check_id(id);
  ensure_closures();
  return descendants_[id];
}

bool Dictionary::generalizes_to(ItemId item, ItemId ancestor) const {
  auto anc = ancestors(item);
  return std::find(anc.begin(), anc.end(), ancestor) != anc.end();
}

std::uint64_t Dictionary::frequency(ItemId id) const {
  check_id(id);
  return frequencies_[id];
}

std::string Dictionary::export_flist() const {
  std::ostringstream out;
  for (ItemId id = 1; id <= size(); ++id) out << gids_[id - 1] << '\t' << frequencies_[id] << '\n';
  return out.str();
}

std::vector<ItemId> Dictionary::recoding_to(const Dictionary& other) const {
  std::vector<ItemId> table(size() + 1, kNoItem);
  for (ItemId id = 1; id <= size(); ++id) table[id] = other.id(gids_[id - 1]);
  return table;
}

Dictionary compute_flist(const Dictionary& dict, const SequenceDatabase& db) {
  const std::size_t n = dict.size();
  std::vector<std::uint64_t> freq(n + 1, 0);
  std::vector<std::size_t> last_seen(n + 1, static_cast<std::size_t>(-1));
  std::size_t index = 0;
  for (const auto& seq : db) {
    for (ItemId item : seq) {
      for (ItemId anc : dict.ancestors(item)) {
        if (last_seen[anc] != index) {
          last_seen[anc] = index;
          ++freq[anc];
        }
      }
    }
    ++index;
  }

  std::vector<ItemId> order(n);
  std::iota(order.begin(), order.end(), ItemId{1});
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    if (freq[a] != freq[b]) return freq[a] > freq[b];
    return dict.gids_[a - 1] < dict.gids_[b - 1];
  });

  Dictionary result;
  for (ItemId old_id : order) result.add_item(dict.gids_[old_id - 1]);
  for (ItemId old_id = 1; old_id <= n; ++old_id) {
    ItemId child = result.id(dict.gids_[old_id - 1]);
    for (ItemId p : dict.parents_[old_id]) {
      ItemId parent = result.id(dict.gids_[p - 1]);
      result.parents_[child].push_back(parent);
      result.children_[parent].push_back(child);
    }
  }
  for (auto& ps : result.parents_) std::sort(ps.begin(), ps.end());
  for (auto& cs : result.children_) std::sort(cs.begin(), cs.end());
  for (ItemId old_id = 1; old_id <= n; ++old_id) {
    result.frequencies_[result.id(dict.gids_[old_id - 1])] = freq[old_id];
  }
  result.ensure_closures();
  result.frozen_ = true;
  return result;
}

}  // namespace patmine
