#include "wmm/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wmm {

int weight(const MultiIndex& v) { return std::accumulate(v.begin(), v.end(), 0); }

MultiIndex word_front(const MultiIndex& v) {
  if (v.empty()) throw std::invalid_argument("word_front: empty word");
  return MultiIndex(v.begin(), v.end() - 1);
}

int word_last(const MultiIndex& v) {
  if (v.empty()) throw std::invalid_argument("word_last: empty word");
  return v.back();
}

std::string word_to_string(const MultiIndex& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

CycleDecomposition CycleDecomposition::from_one_line(const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int x : images) {
    if (x < 1 || x > n || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("from_one_line: images must be a bijection of [n]");
    seen[static_cast<std::size_t>(x)] = true;
  }
  CycleDecomposition sigma;
  sigma.n = n;
  std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    int x = start;
    do {
      visited[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
      x = images[static_cast<std::size_t>(x - 1)];
    } while (x != start);
    sigma.cycles.push_back(std::move(cycle));
  }
  sigma.canonicalize();
  return sigma;
}

void CycleDecomposition::canonicalize() {
  for (auto& cycle : cycles) {
    auto top = std::max_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), top, cycle.end());
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
}

DistinguishedCycle distinguished_cycle(const CycleDecomposition& sigma, int i) {
  DistinguishedCycle out;
  bool found = false;
  for (const auto& cycle : sigma.cycles) {
    auto pos = std::find(cycle.begin(), cycle.end(), i);
    if (pos == cycle.end()) {
      out.rest.push_back(cycle);
      continue;
    }
    found = true;
    out.cycle = cycle;
    // Successor order starting after i, wrapping around, i itself dropped.
    const std::size_t len = cycle.size();
    const std::size_t at = static_cast<std::size_t>(pos - cycle.begin());
    for (std::size_t step = 1; step < len; ++step)
      out.rooted.push_back(cycle[(at + step) % len]);
  }
  if (!found) throw std::invalid_argument("distinguished_cycle: index not in [n]");
  return out;
}

PermutationStream::PermutationStream(int n, const Caps& caps) {
  if (n < 0) throw std::invalid_argument("PermutationStream: n must be >= 0");
  if (n > caps.permutation_cap)
    throw CapExceeded("permutation enumeration for n=" + std::to_string(n) +
                      " exceeds permutation_cap=" + std::to_string(caps.permutation_cap) +
                      " (raise WMM_PERMUTATION_CAP to override)");
  images_.resize(static_cast<std::size_t>(n));
  std::iota(images_.begin(), images_.end(), 1);
}

std::optional<CycleDecomposition> PermutationStream::next() {
  if (done_) return std::nullopt;
  CycleDecomposition out = CycleDecomposition::from_one_line(images_);
  if (!std::next_permutation(images_.begin(), images_.end())) done_ = true;
  return out;
}

void for_each_permutation(int n, const Caps& caps,
                          const std::function<void(const CycleDecomposition&)>& fn) {
  PermutationStream stream(n, caps);
  while (auto sigma = stream.next()) fn(*sigma);
}

InjectionStream::InjectionStream(int m, int n, const Caps& caps) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw std::invalid_argument("InjectionStream: m, n must be >= 0");
  if (n > caps.injection_cap)
    throw CapExceeded("injection enumeration for n=" + std::to_string(n) +
                      " exceeds injection_cap=" + std::to_string(caps.injection_cap) +
                      " (raise WMM_INJECTION_CAP to override)");
}

bool InjectionStream::advance() {
  // Lexicographic successor among tuples of distinct values in [n_].
  std::vector<bool> used(static_cast<std::size_t>(n_) + 1, false);
  for (int x : images_) used[static_cast<std::size_t>(x)] = true;
  int pos = m_ - 1;
  while (pos >= 0) {
    used[static_cast<std::size_t>(images_[static_cast<std::size_t>(pos)])] = false;
    int candidate = images_[static_cast<std::size_t>(pos)] + 1;
    while (candidate <= n_ && used[static_cast<std::size_t>(candidate)]) ++candidate;
    if (candidate <= n_) {
      images_[static_cast<std::size_t>(pos)] = candidate;
      used[static_cast<std::size_t>(candidate)] = true;
      for (int fill = pos + 1; fill < m_; ++fill) {
        int low = 1;
        while (used[static_cast<std::size_t>(low)]) ++low;
        images_[static_cast<std::size_t>(fill)] = low;
        used[static_cast<std::size_t>(low)] = true;
      }
      return true;
    }
    --pos;
  }
  return false;
}

std::optional<std::vector<int>> InjectionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (m_ > n_) {  // no injections; (n)_m = 0
      done_ = true;
      return std::nullopt;
    }
    images_.resize(static_cast<std::size_t>(m_));
    std::iota(images_.begin(), images_.end(), 1);
    return images_;
  }
  if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  return images_;
}

void for_each_injection(int m, int n, const Caps& caps,
                        const std::function<void(const std::vector<int>&)>& fn) {
  InjectionStream stream(m, n, caps);
  while (auto a = stream.next()) fn(*a);
}

CompositionStream::CompositionStream(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw std::invalid_argument("CompositionStream: m, n must be >= 0");
  if (m == 0 && n > 0) throw std::invalid_argument("CompositionStream: no length-0 word sums to n > 0");
}

std::optional<MultiIndex> CompositionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    current_.assign(static_cast<std::size_t>(m_), 0);
    if (m_ > 0) current_.back() = n_;
    return current_;
  }
  // Lexicographic successor: increment the rightmost position that has
  // weight strictly to its right, then pack the leftover onto the tail.
  int suffix = 0;
  for (int i = m_ - 1; i >= 1; --i) {
    suffix += current_[static_cast<std::size_t>(i)];
    if (suffix > 0) {
      current_[static_cast<std::size_t>(i - 1)] += 1;
      for (int j = i; j < m_; ++j) current_[static_cast<std::size_t>(j)] = 0;
      current_.back() = suffix - 1;
      return current_;
    }
  }
  done_ = true;
  return std::nullopt;
}

void for_each_composition(int m, int n, const std::function<void(const MultiIndex&)>& fn) {
  CompositionStream stream(m, n);
  while (auto v = stream.next()) fn(*v);
}

Integer composition_count(int m, int n) {
  if (m == 0) return n == 0 ? Integer(1) : Integer(0);
  return binomial(n + m - 1, n);
}

}  // namespace wmm
