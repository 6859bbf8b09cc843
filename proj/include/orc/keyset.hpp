#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace orc {

/// Event identifier, unique per execution (also used for site-call handles).
using Key = std::int64_t;

/// Sorted-unique set of keys. Plain value type; cause sets stay small enough
/// at desk scale that flat vectors beat node-based sets.
class KeySet {
public:
  KeySet() = default;
  KeySet(std::initializer_list<Key> ks) : keys_(ks) { normalize(); }
  explicit KeySet(std::vector<Key> ks) : keys_(std::move(ks)) { normalize(); }

  bool contains(Key k) const {
    return std::binary_search(keys_.begin(), keys_.end(), k);
  }

  void insert(Key k) {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) keys_.insert(it, k);
  }

  void insert_all(const KeySet& o) {
    std::vector<Key> merged;
    merged.reserve(keys_.size() + o.keys_.size());
    std::set_union(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(),
                   std::back_inserter(merged));
    keys_ = std::move(merged);
  }

  KeySet united(const KeySet& o) const {
    KeySet r = *this;
    r.insert_all(o);
    return r;
  }

  KeySet united(Key k) const {
    KeySet r = *this;
    r.insert(k);
    return r;
  }

  KeySet intersected(const KeySet& o) const {
    KeySet r;
    std::set_intersection(keys_.begin(), keys_.end(), o.keys_.begin(),
                          o.keys_.end(), std::back_inserter(r.keys_));
    return r;
  }

  KeySet minus(const KeySet& o) const {
    KeySet r;
    std::set_difference(keys_.begin(), keys_.end(), o.keys_.begin(),
                        o.keys_.end(), std::back_inserter(r.keys_));
    return r;
  }

  bool subset_of(const KeySet& o) const {
    return std::includes(o.keys_.begin(), o.keys_.end(), keys_.begin(),
                         keys_.end());
  }

  bool empty() const { return keys_.empty(); }
  std::size_t size() const { return keys_.size(); }

  auto begin() const { return keys_.begin(); }
  auto end() const { return keys_.end(); }
  const std::vector<Key>& items() const { return keys_; }

  bool operator==(const KeySet&) const = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(keys_[i]);
    }
    return s + "}";
  }

private:
  void normalize() {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }

  std::vector<Key> keys_;
};

/// Which labels a cause wrapper reacts to: publications only, every label,
/// or only the termination event.
enum class Trigger { Publications, AllLabels, Termination };

inline std::string trigger_suffix(Trigger t) {
  switch (t) {
    case Trigger::Publications: return "!v";
    case Trigger::AllLabels: return "l";
    case Trigger::Termination: return "w";
  }
  return "?";
}

}  // namespace orc
