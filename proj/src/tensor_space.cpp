#include "gaudin/repn_sl2.hpp"

#include <numeric>

namespace gaudin {

TensorSpace::TensorSpace(std::vector<int> ms) : ms_(std::move(ms)) {
  if (ms_.empty()) throw std::invalid_argument("TensorSpace: no factors");
  for (int m : ms_) {
    if (m < 0) throw std::invalid_argument("TensorSpace: negative highest weight");
    dim_ *= m + 1;
    M_ += m;
  }
  tuples_.reserve(dim_);
  std::vector<int> t(ms_.size(), 0);
  // Counting in mixed radix with k_1 most significant enumerates the tuples
  // in lexicographic order, which is the basis order shared by all modules.
  for (int idx = 0; idx < dim_; ++idx) {
    tuples_.push_back(t);
    int w = 0;
    for (size_t s = 0; s < ms_.size(); ++s) w += ms_[s] - 2 * t[s];
    blocks_[w].push_back(idx);
    for (int s = int(ms_.size()) - 1; s >= 0; --s) {
      if (++t[s] <= ms_[s]) break;
      t[s] = 0;
    }
  }
}

int TensorSpace::index_of(const std::vector<int>& tuple) const {
  if (tuple.size() != ms_.size()) throw std::invalid_argument("TensorSpace: tuple length");
  int idx = 0;
  for (size_t s = 0; s < ms_.size(); ++s) {
    if (tuple[s] < 0 || tuple[s] > ms_[s]) throw std::out_of_range("TensorSpace: tuple entry");
    idx = idx * (ms_[s] + 1) + tuple[s];
  }
  return idx;
}

int TensorSpace::weight_of(int index) const {
  const auto& t = tuples_.at(index);
  int w = 0;
  for (size_t s = 0; s < ms_.size(); ++s) w += ms_[s] - 2 * t[s];
  return w;
}

bool TensorSpace::has_block(int nu) const { return blocks_.count(nu) != 0; }

const std::vector<int>& TensorSpace::block(int nu) const {
  auto it = blocks_.find(nu);
  if (it == blocks_.end()) throw std::invalid_argument("TensorSpace: empty weight block");
  return it->second;
}

std::vector<int> TensorSpace::weights() const {
  std::vector<int> w;
  w.reserve(blocks_.size());
  for (const auto& kv : blocks_) w.push_back(kv.first);
  return w;
}

}  // namespace gaudin
