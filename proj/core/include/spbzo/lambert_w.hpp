#pragma once

namespace spbzo {

struct WEval {
  double input = 0.0;
  double value = 0.0;
  // |w e^w - t|
  double residual = 0.0;
  bool converged = false;
};

// Lower real branch W_{-1} on [-1/e, 0). Arguments below -1/e return 0 by
// convention. Throws DomainError for t >= 0.
WEval w_minus1(double t);

}  // namespace spbzo
