#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace plancherel {

using cplx = std::complex<double>;

struct QuadratureSettings {
    int initial_nodes = 128;
    int max_nodes = 65536;
    double rel_tol = 1e-9;
    void validate() const;
};

// Counterclockwise circle.
struct CircleContour {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

// Infinite ray truncated at `cutoff`; `direction` points away from the attached vertex.
struct Ray {
    cplx direction{1.0, 0.0};
    double cutoff = 4.0;
};

// Piecewise-linear path. `head` runs from infinity into vertices.front(),
// `tail` from vertices.back() out to infinity. `grading` > 0 refines panels
// geometrically towards every interior vertex down to that length.
struct PathContour {
    std::vector<cplx> vertices;
    std::optional<Ray> head;
    std::optional<Ray> tail;
    std::vector<int> segment_nodes;
    double grading = 0.0;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    bool converged = false;
    int nodes_used = 0;
    double error_estimate = 0.0;
    // Sum of |integrand * weight|; bounds the rounding error of `value`.
    double scale = 0.0;
};

// Returns (1/2 pi i) * integral; failures are reported through `converged`.
QuadResult circle_integral(const std::function<cplx(cplx)>& f, const CircleContour& c,
                           const QuadratureSettings& s = {});
// Tensor rules cap each dimension at min(max_nodes, 8192).
QuadResult double_circle_integral(const std::function<cplx(cplx, cplx)>& F, const CircleContour& cu,
                                  const CircleContour& cw, const QuadratureSettings& s = {});
QuadResult path_integral(const std::function<cplx(cplx)>& f, const PathContour& p,
                         const QuadratureSettings& s = {});
QuadResult double_path_integral(const std::function<cplx(cplx, cplx)>& F, const PathContour& pu,
                                const PathContour& pw, const QuadratureSettings& s = {});

// Throws NumericalFailure carrying the last estimate when `r` did not converge.
cplx value_or_throw(const QuadResult& r, const char* what);

bool circles_intersect(const CircleContour& a, const CircleContour& b);

// Nodes z_k and weights dz_k (already divided by 2 pi i) of a discretized path.
struct PathRule {
    std::vector<cplx> z;
    std::vector<cplx> w;
};

// `refinement` halves every panel that many times; ray cutoffs are taken from `p`.
PathRule discretize(const PathContour& p, int refinement);

// Gauss-Legendre nodes/weights on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

} // namespace plancherel
