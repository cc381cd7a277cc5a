#include "nlpi/problem.hpp"

namespace nlpi {

ProblemSpec::ProblemSpec(GridFunction V_, cplx rho_, GridFunction k_, Controls c)
    : V(std::move(V_)), rho(rho_), k(std::move(k_)), ctrl(c) {
    require_same_grid(V, k);
    ctrl.grid_n = V.n;
    int_V = antiderivative(V);
}

GridFunction ProblemSpec::V_imag() const {
    GridFunction r(V.n);
    for (int j = 0; j <= V.n; ++j) r.v[j] = V.v[j].imag();
    return r;
}

ProblemSpec free_spec(Controls c) {
    return ProblemSpec(GridFunction::constant(c.grid_n, 0.0), 1.0,
                       GridFunction::constant(c.grid_n, 0.0), c);
}

} // namespace nlpi
