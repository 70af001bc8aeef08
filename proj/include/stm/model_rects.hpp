#ifndef STM_MODEL_RECTS_HPP
#define STM_MODEL_RECTS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stm/rect.hpp"
#include "stm/tree_model.hpp"

namespace stm {

struct SignedRect {
  Rect rect;
  Sign sign = Sign::Negative;
  std::size_t pair = 0;  // index into stm.pairs(sign)
};

struct ModelRects {
  LinearOrder order;  // leaf order; rectangle coordinates are positions in it
  std::vector<SignedRect> rects;

  std::vector<Rect> plain() const {
    std::vector<Rect> out;
    out.reserve(rects.size());
    for (const auto& r : rects) out.push_back(r.rect);
    return out;
  }
};

// Pair {u, v} becomes L(u) x L(v) with L(u) before L(v). Negative pairs first.
inline ModelRects stm_to_rects(const SignedTreeModel& stm) {
  require_valid(stm, true);
  ModelRects out{stm.leaf_order(), {}};
  out.rects.reserve(stm.pair_count());
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    const auto& list = stm.pairs(s);
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto [x1, x2] = stm.leaf_span(list[i].x);
      auto [y1, y2] = stm.leaf_span(list[i].y);
      out.rects.push_back({{x1, x2, y1, y2}, s, i});
    }
  }
  return out;
}

// Inclusion forest with every rectangle dropped whose parent has its sign.
// A dropped rectangle shares its sign with its nearest kept ancestor, so the
// comparison with the direct parent is enough.
struct AlternatingForest {
  InclusionForest forest;
  std::vector<bool> kept;
  std::vector<std::int32_t> kept_parent;  // nearest kept strict ancestor, or kNoParent
};

inline AlternatingForest alternating_forest(const std::vector<SignedRect>& rects) {
  std::vector<Rect> plain;
  plain.reserve(rects.size());
  for (const auto& r : rects) plain.push_back(r.rect);
  AlternatingForest out{inclusion_forest(plain), std::vector<bool>(rects.size(), true),
                        std::vector<std::int32_t>(rects.size(), kNoParent)};
  std::vector<std::size_t> stack(out.forest.roots.rbegin(), out.forest.roots.rend());
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const std::int32_t p = out.forest.parent[i];
    if (p != kNoParent) {
      out.kept[i] = rects[p].sign != rects[i].sign;
      out.kept_parent[i] = out.kept[p] ? p : out.kept_parent[p];
    }
    for (auto c = out.forest.children[i].rbegin(); c != out.forest.children[i].rend(); ++c) stack.push_back(*c);
  }
  return out;
}

// Deletes every pair covered by a pair of the same sign.
inline SignedTreeModel clean_same_sign(const SignedTreeModel& stm) {
  const ModelRects mr = stm_to_rects(stm);
  const AlternatingForest af = alternating_forest(mr.rects);
  std::vector<NodePair> neg, pos;
  for (std::size_t i = 0; i < mr.rects.size(); ++i) {
    if (!af.kept[i]) continue;
    const SignedRect& r = mr.rects[i];
    (r.sign == Sign::Positive ? pos : neg).push_back(stm.pairs(r.sign)[r.pair]);
  }
  return stm.with_pairs(std::move(neg), std::move(pos));
}

}  // namespace stm

#endif  // STM_MODEL_RECTS_HPP
