#ifndef MINSUM_EXPERIMENT_HPP
#define MINSUM_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "minsum/graph.hpp"

namespace minsum {

enum class DecayFamily { ConnectedCycle, Torus };
enum class DecayWhich { Delta, DeltaSum, DeltaTilde, DeltaTildeSum };

DecayFamily parse_decay_family(const std::string& s);
DecayWhich parse_decay_which(const std::string& s);

struct DecayRow {
  int t;
  double value;
};

/// Decay of the walk-difference norms with iteration time.  The fit window is
/// the pre-wrap-around regime t <= diameter/d; a log-log least-squares line is
/// fitted when the window holds at least four rows.
struct DecayResult {
  std::string family;
  std::string which;
  int d = 0;
  int n = 0;  // cycle size, or torus side length
  int diameter = 0;
  int window_tmax = 0;
  std::vector<DecayRow> rows;
  bool fit_valid = false;
  double slope = 0.0;
  double intercept = 0.0;
};

/// family ConnectedCycle: the (d/2)-connected cycle on n vertices.
/// family Torus: the (d/2)-dimensional torus with side length n.
/// d must be even and >= 4; t_max >= 3.
DecayResult tv_decay(DecayFamily family, int d, int n, int t_max,
                     DecayWhich which);

std::string decay_to_csv(const DecayResult& result);
std::string decay_to_svg(const DecayResult& result);

}  // namespace minsum

#endif
