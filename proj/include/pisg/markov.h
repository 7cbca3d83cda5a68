#ifndef PISG_MARKOV_H_
#define PISG_MARKOV_H_

#include <vector>

#include "pisg/game.h"
#include "pisg/matrix.h"

namespace pisg {

// Row-stochastic matrix of a finite Markov chain.
using TransitionMatrix = Matrix;

// Communicating-class structure of a chain. Classes are the strongly
// connected components of the digraph with an edge s -> t iff q(s, t) > 0; a
// class is recurrent iff no edge leaves it.
struct ChainStructure {
  std::vector<std::vector<int>> classes;
  std::vector<bool> recurrent;  // per class
  std::vector<int> class_of;    // per state
};

ChainStructure ClassifyChain(const TransitionMatrix& q);

// The Cesaro limit Q* = lim (1/(n+1)) sum_{m<=n} Q^m, computed from the class
// structure: stationary distributions on recurrent classes and absorption
// probabilities from transient states. Throws Error(kSingularSystem) if one of
// the linear solves degenerates.
Matrix CesaroLimit(const TransitionMatrix& q);

struct CesaroResult {
  Matrix q_star;
  std::vector<double> reward;
  // value[s]: limiting-average reward from initial state s, Q* r.
  std::vector<double> value;
};

CesaroResult EvaluateChain(const TransitionMatrix& q, std::vector<double> reward);

struct InducedChain {
  TransitionMatrix q;
  std::vector<double> reward;
};

// The chain followed when player I plays f and player II plays g.
InducedChain BuildInducedChain(const StochasticGame& game,
                               const PureStationaryStrategy& f,
                               const PureStationaryStrategy& g);

// phi(., f, g), one entry per initial state.
std::vector<double> UndiscountedValue(const StochasticGame& game,
                                      const PureStationaryStrategy& f,
                                      const PureStationaryStrategy& g);

}  // namespace pisg

#endif  // PISG_MARKOV_H_
