#include "rgbr/mdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rgbr/error.hpp"

namespace rgbr {

HistoryCodec::HistoryCodec(int memory, std::size_t own_actions, std::size_t other_actions)
    : memory_(memory), own_(own_actions), other_(other_actions), states_(1) {
  if (memory < 1) throw Error(ErrorKind::InvalidArgument, "memory must be at least 1");
  if (own_ == 0 || other_ == 0) throw Error(ErrorKind::InvalidModel, "empty action set");
  for (int i = 0; i < memory; ++i) {
    if (states_ > kMaxStates / radix()) {
      std::ostringstream os;
      os << radix() << "^" << memory << " histories exceed the limit of " << kMaxStates;
      throw Error(ErrorKind::StateSpaceTooLarge, os.str());
    }
    states_ *= radix();
  }
}

std::vector<std::pair<std::size_t, std::size_t>> HistoryCodec::decode(std::size_t state) const {
  std::vector<std::pair<std::size_t, std::size_t>> out(memory_);
  for (int i = memory_ - 1; i >= 0; --i) {
    const std::size_t d = state % radix();
    out[i] = {d / other_, d % other_};
    state /= radix();
  }
  return out;
}

std::size_t HistoryCodec::encode(
    const std::vector<std::pair<std::size_t, std::size_t>>& oldest_first) const {
  if (oldest_first.size() != static_cast<std::size_t>(memory_)) {
    throw Error(ErrorKind::MemoryMismatch, "history length differs from memory");
  }
  std::size_t s = 0;
  for (auto [own, other] : oldest_first) {
    if (own >= own_ || other >= other_) throw Error(ErrorKind::OutOfRange, "action index");
    s = s * radix() + digit(own, other);
  }
  return s;
}

std::size_t HistoryCodec::swap_perspective(std::size_t state) const {
  std::size_t out = 0;
  std::size_t weight = 1;
  for (int i = 0; i < memory_; ++i) {
    const std::size_t d = state % radix();
    out += weight * ((d % other_) * own_ + d / other_);
    weight *= radix();
    state /= radix();
  }
  return out;
}

KMemoryStrategy::KMemoryStrategy(int memory, std::vector<std::string> own_actions,
                                 std::vector<std::string> other_actions,
                                 std::vector<std::vector<double>> table)
    : codec_(memory, own_actions.size(), other_actions.size()),
      own_actions_(std::move(own_actions)),
      other_actions_(std::move(other_actions)),
      table_(std::move(table)) {
  if (table_.size() != codec_.state_count()) {
    throw Error(ErrorKind::InvalidModel, "strategy table must cover every history");
  }
  for (const auto& row : table_) {
    if (row.size() != own_actions_.size()) {
      throw Error(ErrorKind::InvalidModel, "distribution length differs from action count");
    }
    double sum = 0.0;
    for (double x : row) {
      if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::OutOfRange, "probability outside [0, 1]");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidModel, "distribution does not sum to 1");
    }
  }
}

KMemoryStrategy KMemoryStrategy::from_memory_one(const MemoryOneStrategy& s) {
  std::vector<std::vector<double>> table;
  for (Outcome o : kOutcomes) {
    const double c = s.cooperate_after(o);
    table.push_back({c, 1.0 - c});
  }
  return KMemoryStrategy(1, {"c", "d"}, {"c", "d"}, std::move(table));
}

bool KMemoryStrategy::completely_mixed() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](double x) { return x > 0.0; });
  });
}

bool KMemoryStrategy::is_pure() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0 || x == 1.0; });
  });
}

MdpModel::MdpModel(std::size_t states, std::size_t actions,
                   std::vector<std::vector<Transition>> rows, std::vector<double> reward)
    : states_(states), actions_(actions), rows_(std::move(rows)), reward_(std::move(reward)) {
  if (states_ == 0 || actions_ == 0) throw Error(ErrorKind::InvalidModel, "empty model");
  if (rows_.size() != states_ * actions_ || reward_.size() != states_) {
    throw Error(ErrorKind::InvalidModel, "model tables have inconsistent sizes");
  }
  for (const auto& row : rows_) {
    double sum = 0.0;
    for (const Transition& t : row) {
      if (t.next >= states_ || !(t.probability >= 0.0)) {
        throw Error(ErrorKind::InvalidModel, "bad transition entry");
      }
      sum += t.probability;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidModel, "row does not sum to 1");
  }
}

double MdpModel::transition(std::size_t s, std::size_t a, std::size_t next) const {
  double p = 0.0;
  for (const Transition& t : row(s, a))
    if (t.next == next) p += t.probability;
  return p;
}

MdpModel build_mdp(const KMemoryStrategy& opponent, const StageGame& game, int memory) {
  if (opponent.memory() != memory) {
    throw Error(ErrorKind::MemoryMismatch, "opponent memory differs from the requested k");
  }
  if (opponent.own_actions().size() != game.col_count() ||
      opponent.other_actions().size() != game.row_count()) {
    throw Error(ErrorKind::InvalidModel, "opponent action sets do not match the stage game");
  }
  if (!opponent.completely_mixed()) {
    throw Error(ErrorKind::NotCompletelyMixed, "opponent must be completely mixed");
  }

  const HistoryCodec codec(memory, game.row_count(), game.col_count());
  const std::size_t n = codec.state_count();
  const std::size_t n_own = game.row_count();
  const std::size_t n_other = game.col_count();

  std::vector<std::vector<Transition>> rows(n * n_own);
  std::vector<double> reward(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t seen_by_opponent = codec.swap_perspective(s);
    const auto& dist = opponent.distribution(seen_by_opponent);
    const std::size_t last = codec.most_recent(s);
    reward[s] = game.utility(last / n_other, last % n_other).first;
    for (std::size_t a1 = 0; a1 < n_own; ++a1) {
      auto& row = rows[s * n_own + a1];
      row.reserve(n_other);
      for (std::size_t a2 = 0; a2 < n_other; ++a2) {
        row.push_back({codec.shift(s, a1, a2), dist[a2]});
      }
    }
  }
  return MdpModel(n, n_own, std::move(rows), std::move(reward));
}

namespace {

std::vector<bool> reachable_from(std::size_t root, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

// Strongly connected components (iterative Kosaraju). Returns component id per node.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::size_t>>& adj,
                                           std::size_t& count) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < adj[u].size()) {
        const std::size_t v = adj[u][next++];
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }

  std::vector<std::vector<std::size_t>> radj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : adj[u]) radj[v].push_back(u);

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, kUnset);
  count = 0;
  std::vector<std::size_t> work;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != kUnset) continue;
    comp[*it] = count;
    work.push_back(*it);
    while (!work.empty()) {
      const std::size_t u = work.back();
      work.pop_back();
      for (std::size_t v : radj[u]) {
        if (comp[v] == kUnset) {
          comp[v] = count;
          work.push_back(v);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

bool check_communicating(const MdpModel& m) {
  const std::size_t n = m.state_count();
  std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < m.action_count(); ++a) {
      for (const Transition& t : m.row(s, a)) {
        if (t.probability > 0.0) {
          fwd[s].push_back(t.next);
          bwd[t.next].push_back(s);
        }
      }
    }
  }
  const auto f = reachable_from(0, fwd);
  const auto b = reachable_from(0, bwd);
  return std::all_of(f.begin(), f.end(), [](bool x) { return x; }) &&
         std::all_of(b.begin(), b.end(), [](bool x) { return x; });
}

SolveResult solve_average_reward(const MdpModel& m, const SolverConfig& config) {
  if (!check_communicating(m)) {
    throw Error(ErrorKind::NotCommunicating, "model is not communicating");
  }
  const std::size_t n = m.state_count();
  const std::size_t na = m.action_count();
  const double tau = config.aperiodicity;

  std::vector<double> h(n, 0.0), next(n, 0.0);
  auto expected = [&](std::size_t s, std::size_t a, const std::vector<double>& v) {
    double e = 0.0;
    for (const Transition& t : m.row(s, a)) e += t.probability * v[t.next];
    return e;
  };

  double lo = 0.0, hi = 0.0;
  std::size_t iter = 0;
  for (;;) {
    if (iter >= config.max_iterations) {
      std::ostringstream os;
      os << "span criterion not met after " << iter << " iterations (span " << (hi - lo) << ")";
      throw Error(ErrorKind::NoConvergence, os.str());
    }
    ++iter;
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < na; ++a) best = std::max(best, expected(s, a, h));
      next[s] = m.reward(s) + tau * h[s] + (1.0 - tau) * best;
      const double diff = next[s] - h[s];
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
    const double offset = next[0];
    for (std::size_t s = 0; s < n; ++s) h[s] = next[s] - offset;
    if (hi - lo < config.span_tolerance) break;
  }

  SolveResult out;
  out.gain = 0.5 * (lo + hi);
  out.bias_span = hi - lo;
  out.iterations = iter;
  out.policy.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < na; ++a) best = std::max(best, expected(s, a, h));
    std::size_t choice = 0;
    while (expected(s, choice, h) < best - config.tie_tolerance) ++choice;
    out.policy[s] = choice;
  }
  return out;
}

double PolicyGain::max_gain() const {
  return *std::max_element(class_gains.begin(), class_gains.end());
}

PolicyGain policy_gain(const MdpModel& m, const PurePolicy& policy) {
  const std::size_t n = m.state_count();
  if (policy.size() != n) throw Error(ErrorKind::InvalidArgument, "policy must cover every state");

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (policy[s] >= m.action_count()) throw Error(ErrorKind::OutOfRange, "action index");
    for (const Transition& t : m.row(s, policy[s]))
      if (t.probability > 0.0) adj[s].push_back(t.next);
  }

  std::size_t comp_count = 0;
  const auto comp = strong_components(adj, comp_count);
  std::vector<bool> closed(comp_count, true);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t v : adj[s])
      if (comp[v] != comp[s]) closed[comp[s]] = false;

  PolicyGain out;
  std::vector<std::size_t> class_of(comp_count, SIZE_MAX);
  for (std::size_t c = 0; c < comp_count; ++c) {
    if (!closed[c]) continue;
    class_of[c] = out.classes.size();
    out.classes.emplace_back();
  }
  for (std::size_t s = 0; s < n; ++s)
    if (closed[comp[s]]) out.classes[class_of[comp[s]]].push_back(s);

  out.start_gains.assign(n, 0.0);
  std::vector<std::size_t> local(n, SIZE_MAX);
  for (const auto& members : out.classes) {
    const auto k = static_cast<Eigen::Index>(members.size());
    for (Eigen::Index i = 0; i < k; ++i) local[members[i]] = static_cast<std::size_t>(i);
    // pi (P - I) = 0 with the last balance equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (const Transition& t : m.row(members[i], policy[members[i]]))
        a(static_cast<Eigen::Index>(local[t.next]), i) += t.probability;
    a.row(k - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    b(k - 1) = 1.0;
    const Eigen::VectorXd pi = a.partialPivLu().solve(b);
    double g = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) g += pi(i) * m.reward(members[i]);
    out.class_gains.push_back(g);
    for (std::size_t s : members) out.start_gains[s] = g;
  }

  // Transient states inherit the absorption-weighted gain: (I - P_TT) g_T = P_TR g_R.
  std::vector<std::size_t> transient;
  for (std::size_t s = 0; s < n; ++s)
    if (!closed[comp[s]]) transient.push_back(s);
  if (!transient.empty()) {
    const auto k = static_cast<Eigen::Index>(transient.size());
    for (Eigen::Index i = 0; i < k; ++i) local[transient[i]] = static_cast<std::size_t>(i);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (const Transition& t : m.row(transient[i], policy[transient[i]])) {
        if (closed[comp[t.next]]) {
          b(i) += t.probability * out.start_gains[t.next];
        } else {
          a(i, static_cast<Eigen::Index>(local[t.next])) -= t.probability;
        }
      }
    }
    const Eigen::VectorXd g = a.partialPivLu().solve(b);
    for (Eigen::Index i = 0; i < k; ++i) out.start_gains[transient[i]] = g(i);
  }

  const auto [lo, hi] = std::minmax_element(out.start_gains.begin(), out.start_gains.end());
  out.start_dependent = (*hi - *lo) > 1e-9;
  return out;
}

KMemoryStrategy policy_to_strategy(const PurePolicy& policy, const HistoryCodec& codec,
                                   const StageGame& game) {
  std::vector<std::vector<double>> table(codec.state_count(),
                                         std::vector<double>(game.row_count(), 0.0));
  for (std::size_t s = 0; s < table.size(); ++s) table[s][policy[s]] = 1.0;
  return KMemoryStrategy(codec.memory(), game.row_actions(), game.col_actions(), std::move(table));
}

KMemoryBestResponse best_response_kmem(const KMemoryStrategy& opponent, const StageGame& game,
                                       const SolverConfig& config) {
  const MdpModel m = build_mdp(opponent, game, opponent.memory());
  SolveResult solve = solve_average_reward(m, config);
  const HistoryCodec codec(opponent.memory(), game.row_count(), game.col_count());
  KMemoryStrategy strategy = policy_to_strategy(solve.policy, codec, game);
  const double gain = solve.gain;
  return {std::move(strategy), gain, std::move(solve)};
}

}  // namespace rgbr
