#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "locality.hpp"

namespace lrpls {

/// Processing order for SLOCAL runs: ascending id, or a seeded shuffle.
struct Order {
  enum class Kind { by_id, random } kind = Kind::by_id;
  std::uint64_t seed = 0;

  static Order parse(const std::string& text) {
    if (text == "id") return {};
    const std::string prefix = "random:";
    if (text.rfind(prefix, 0) == 0) {
      try {
        return {Kind::random, std::stoull(text.substr(prefix.size()))};
      } catch (const std::exception&) {
      }
    }
    throw std::invalid_argument("order must be 'id' or 'random:<seed>'");
  }

  std::vector<int> permutation(int n) const {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    if (kind == Kind::random) {
      std::mt19937_64 rng(seed);
      std::shuffle(p.begin(), p.end(), rng);
    }
    return p;
  }

  std::string str() const { return kind == Kind::by_id ? "id" : "random:" + std::to_string(seed); }
};

template <class Info, class Decision>
struct SlocalState {
  std::vector<Info> info;
  std::vector<std::optional<Decision>> decision;
  std::vector<int> order;
  std::optional<int> locality;
};

/// Sequential SLOCAL execution. `step(v, access, state)` runs inside a scope
/// centered at v and must return v's decision; info may be updated in place
/// for nodes the step has touched through `access`.
template <class Info, class Decision, class Step>
SlocalState<Info, Decision> run_slocal(GraphAccess& access, const std::vector<int>& order,
                                       std::optional<int> locality, Step&& step) {
  int n = access.n();
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order must be a permutation of V");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("order must be a permutation of V");
    seen[v] = 1;
  }
  SlocalState<Info, Decision> state;
  state.info.assign(n, Info{});
  state.decision.assign(n, std::nullopt);
  state.order = order;
  state.locality = locality;
  for (int v : order) {
    auto scope = access.scope(v, locality);
    state.decision[v] = step(v, access, state);
  }
  return state;
}

}  // namespace lrpls
