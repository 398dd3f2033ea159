#ifndef IGTOP_OPTIMIZER_HPP
#define IGTOP_OPTIMIZER_HPP

#include "igtop/cut_ratio.hpp"
#include "igtop/elasticity.hpp"
#include "igtop/level_set.hpp"
#include "igtop/scalar_galerkin.hpp"
#include "igtop/topological_derivative.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace igtop {

struct OptimizerOptions {
  int max_iter = 200;
  double eps_theta_deg = 1.0;
  double cut_tol = kCutRatioTol;
  int cut_max_depth = kCutRatioMaxDepth;
  double solver_tol = 1e-10;
  int kappa_max_halvings = 10;  // smallest step tried is 2^-10
};

struct ProblemSetup {
  GeometryMap geometry = GeometryMap::rectangle(2.0, 1.0);
  int nelems = 128;
  int degree_solution = 2;  // p
  int degree_levelset = 2;  // d
  ElasticMaterial material;
  TDParams td;
  std::vector<Edge> dirichlet = {Edge::XiMin};
  std::vector<PointLoad> loads = {PointLoad{}};
  double phi_init = -1.0;
  OptimizerOptions options;
};

enum class StopReason { AngleConverged, MaxIterations, LineSearchFailed };

struct IterationRecord {
  int iter = 0;
  double cost = 0.0;
  double theta_deg = 0.0;
  double area = 0.0;   // physical material area
  double kappa = 0.0;  // step accepted this iteration; 0 on the final row
  double wall_time_s = 0.0;
};

/// Angle in L2(D) between the (unit) level-set function and the generalized
/// derivative: arccos of the normalized inner product, clamped to [-1,1].
/// Throws std::domain_error when g has zero norm.
double field_angle(const ScalarGalerkin& products, const Eigen::MatrixXd& phi,
                   const Eigen::MatrixXd& g);

/// Spherical linear interpolation step on the unit sphere of L2(D):
/// (sin((1-kappa)theta) phi + sin(kappa theta) g/|g|) / sin(theta),
/// re-normalized. kappa = 1 short-circuits to g/|g|. Throws std::domain_error
/// for theta in {0, pi} with kappa < 1.
LevelSetField slerp(const LevelSetField& phi, const SplineField2D& g,
                    double kappa, double theta, const ScalarGalerkin& products);

struct LineSearchOutcome {
  double kappa = 0.0;
  double cost = 0.0;
  int trials = 0;
};

/// Backtracking on kappa in {1, 1/2, 1/4, ..., 2^-max_halvings}: the trial
/// callback evaluates the candidate for a given kappa and returns its cost;
/// the first strict decrease below current_cost wins. Returns nullopt when
/// every step fails.
std::optional<LineSearchOutcome> line_search(
    double current_cost, int max_halvings,
    const std::function<double(double)>& trial_cost);

/// Everything the exporter needs about one accepted iterate.
struct OptimizerSnapshot {
  int iter = 0;
  const LevelSetField* phi = nullptr;
  const DisplacementField* u = nullptr;
  const MaterialField* material = nullptr;
  const GeometryMap* geometry = nullptr;
};

/// Level-set topology optimization driven by the generalized topological
/// derivative: solve, sample, filter, angle test, slerp update with line
/// search. The iteration callback fires once per iteration with the history
/// row and the current state.
class TopologyOptimizer {
 public:
  explicit TopologyOptimizer(ProblemSetup setup);

  using IterationCallback =
      std::function<void(const IterationRecord&, const OptimizerSnapshot&)>;

  struct Result {
    StopReason reason = StopReason::MaxIterations;
    std::vector<IterationRecord> history;
    std::shared_ptr<LevelSetField> phi;
    std::shared_ptr<DisplacementField> u;
    std::shared_ptr<SplineField2D> g;  // filtered generalized derivative
    MaterialField material;
    double cost = 0.0;
    double area = 0.0;
    int iterations = 0;
    int solves = 0;
  };

  Result run(const IterationCallback& callback = {});

  const ProblemSetup& setup() const { return setup_; }
  double domain_area() const;

 private:
  struct Evaluation {
    LevelSetField phi;
    ElementClassGrid classes;
    MaterialField material;
    DisplacementField u;
    double compliance = 0.0;
    double area = 0.0;
    double cost = 0.0;
  };
  Evaluation evaluate(LevelSetField phi);

  ProblemSetup setup_;
  TensorSpace space_p_;
  std::shared_ptr<const LevelSetContext> ls_ctx_;
  std::shared_ptr<const ScalarGalerkin> products_;
  std::unique_ptr<HelmholtzFilter> filter_;
  std::unique_ptr<ComplianceProblem> compliance_;
};

}  // namespace igtop

#endif
