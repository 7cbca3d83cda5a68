#include "pisg/markov.h"

#include <algorithm>
#include <cassert>

namespace pisg {

namespace {

// Tarjan's algorithm, iterative. Components come out in reverse topological
// order of the condensation (sinks first).
std::vector<std::vector<int>> TarjanComponents(
    const std::vector<std::vector<int>>& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  // (vertex, next successor position)
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0 && index[v] == -1) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < graph[v].size()) {
        const int w = graph[v][pos++];
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
      }
    }
  }
  return components;
}

// Values this close below zero are rounding noise.
constexpr double kClampTolerance = 1e-12;

double Clamp(double v) { return (v < 0.0 && v >= -kClampTolerance) ? 0.0 : v; }

}  // namespace

ChainStructure ClassifyChain(const TransitionMatrix& q) {
  const int n = q.rows();
  std::vector<std::vector<int>> graph(n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (q(s, t) > 0.0) graph[s].push_back(t);
    }
  }
  ChainStructure out;
  out.classes = TarjanComponents(graph);
  // Deterministic order: by smallest member.
  std::sort(out.classes.begin(), out.classes.end());
  out.class_of.assign(n, -1);
  for (std::size_t c = 0; c < out.classes.size(); ++c) {
    for (int s : out.classes[c]) out.class_of[s] = static_cast<int>(c);
  }
  out.recurrent.assign(out.classes.size(), true);
  for (int s = 0; s < n; ++s) {
    for (int t : graph[s]) {
      if (out.class_of[t] != out.class_of[s]) {
        out.recurrent[out.class_of[s]] = false;
      }
    }
  }
  return out;
}

Matrix CesaroLimit(const TransitionMatrix& q) {
  assert(q.rows() == q.cols());
  const int n = q.rows();
  const ChainStructure chain = ClassifyChain(q);

  std::vector<int> recurrent_ids;
  std::vector<std::vector<double>> stationary;  // indexed like recurrent_ids
  for (std::size_t c = 0; c < chain.classes.size(); ++c) {
    if (!chain.recurrent[c]) continue;
    const std::vector<int>& members = chain.classes[c];
    const int k = static_cast<int>(members.size());
    // pi (Q_R - I) = 0 with the last balance equation replaced by sum pi = 1.
    Matrix a(k, k);
    Matrix b(k, 1);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        a(i, j) = q(members[j], members[i]) - (i == j ? 1.0 : 0.0);
      }
    }
    for (int j = 0; j < k; ++j) a(k - 1, j) = 1.0;
    b(k - 1, 0) = 1.0;
    const Matrix pi = Solve(std::move(a), std::move(b));
    std::vector<double> dist(n, 0.0);
    for (int i = 0; i < k; ++i) dist[members[i]] = Clamp(pi(i, 0));
    recurrent_ids.push_back(static_cast<int>(c));
    stationary.push_back(std::move(dist));
  }

  Matrix q_star(n, n);
  std::vector<int> transient;
  for (int s = 0; s < n; ++s) {
    const int c = chain.class_of[s];
    if (!chain.recurrent[c]) {
      transient.push_back(s);
      continue;
    }
    const auto it = std::find(recurrent_ids.begin(), recurrent_ids.end(), c);
    const std::vector<double>& dist = stationary[it - recurrent_ids.begin()];
    std::copy(dist.begin(), dist.end(), q_star.row(s).begin());
  }

  if (!transient.empty()) {
    // (I - Q_TT) H = Q_TR 1, one column per recurrent class.
    const int t = static_cast<int>(transient.size());
    const int r = static_cast<int>(recurrent_ids.size());
    Matrix a(t, t);
    Matrix b(t, r);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        a(i, j) = (i == j ? 1.0 : 0.0) - q(transient[i], transient[j]);
      }
      for (int target = 0; target < n; ++target) {
        const int c = chain.class_of[target];
        if (!chain.recurrent[c]) continue;
        const auto it = std::find(recurrent_ids.begin(), recurrent_ids.end(), c);
        b(i, static_cast<int>(it - recurrent_ids.begin())) +=
            q(transient[i], target);
      }
    }
    const Matrix hit = Solve(std::move(a), std::move(b));
    for (int i = 0; i < t; ++i) {
      auto row = q_star.row(transient[i]);
      for (int c = 0; c < r; ++c) {
        const double h = Clamp(hit(i, c));
        if (h == 0.0) continue;
        for (int s = 0; s < n; ++s) row[s] += h * stationary[c][s];
      }
    }
  }
  return q_star;
}

CesaroResult EvaluateChain(const TransitionMatrix& q,
                           std::vector<double> reward) {
  CesaroResult out;
  out.q_star = CesaroLimit(q);
  out.value = out.q_star * std::span<const double>(reward);
  out.reward = std::move(reward);
  return out;
}

InducedChain BuildInducedChain(const StochasticGame& game,
                               const PureStationaryStrategy& f,
                               const PureStationaryStrategy& g) {
  const int n = game.num_states();
  InducedChain chain{Matrix(n, n), std::vector<double>(n)};
  for (int s = 0; s < n; ++s) {
    const Cell& cell = game.cell(s, f.choice[s], g.choice[s]);
    chain.reward[s] = cell.reward;
    std::copy(cell.next.begin(), cell.next.end(), chain.q.row(s).begin());
  }
  return chain;
}

std::vector<double> UndiscountedValue(const StochasticGame& game,
                                      const PureStationaryStrategy& f,
                                      const PureStationaryStrategy& g) {
  InducedChain chain = BuildInducedChain(game, f, g);
  return EvaluateChain(chain.q, std::move(chain.reward)).value;
}

}  // namespace pisg
