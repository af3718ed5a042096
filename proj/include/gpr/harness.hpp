#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpr/config.hpp"
#include "gpr/mesh.hpp"
#include "gpr/model.hpp"
#include "gpr/motion.hpp"
#include "gpr/pressure.hpp"
#include "gpr/relaxation.hpp"
#include "gpr/transport.hpp"

namespace gpr {

struct CaseConfig {
  std::string name;
  MaterialParams par;

  // mesh: generator or file
  double lx = 1.0, ly = 1.0;
  int nx = 16, ny = 16;
  bool periodicX = false, periodicY = false;
  MeshPattern pattern = MeshPattern::same;
  Vec2 origin{0.0, 0.0};
  std::string meshFile;

  TransportConfig tc;
  PressureConfig pc;
  RelaxConfig rc;
  MotionConfig mc;
  BcMap bcs;

  double endTime = 0.1;
  std::function<Primitive(Vec2)> ic;
  std::function<Primitive(Vec2)> exact;  // set when a closed-form solution exists

  std::string outputDir = "out";
  std::vector<std::string> formats;  // csv, vtk, cut
  double outputEvery = 0.0;          // 0: final state only
  double cutY = 0.0;
  int curlEvery = 0;                 // record curl norms every N steps (0: off)
};

// case catalog; throws listing known cases for an unknown name
CaseConfig init_case(const Config& cfg);
std::vector<std::string> case_names();

// mesh ladder used by the convergence tables: level k -> 8*2^(k-1) divisions
int mesh_level_divisions(int level);

struct RunStats {
  int steps = 0;
  double finalTime = 0.0;
  double wallSeconds = 0.0;
  std::vector<double> dts;
  std::vector<double> massTotal, energyTotal;
  std::vector<double> curlTimes, curlA, curlJ;
  long cgIterations = 0;
  int newtonIterationsMax = 0;
};

class Simulation {
 public:
  explicit Simulation(CaseConfig cc);

  void step();
  RunStats run();  // full loop with output cadence

  double time() const { return t_; }
  const CaseConfig& config() const { return cc_; }
  const PrimalMesh& primal() const { return pm_; }
  const DualMesh& dual() const { return dm_; }
  const FieldSet& fields() const { return f_; }
  FieldSet& fields() { return f_; }
  const std::vector<double>& vertexPressure() const { return pVert_; }
  RunStats& stats() { return stats_; }

  // area-weighted norms against a reference sampled at the dual-cell centroids
  double error_norm(const std::function<double(Vec2)>& ref,
                    const std::function<double(const State&)>& field,
                    const std::string& norm = "L2") const;

  Vec2 cell_position(int c) const;  // centroid wrapped into the domain box
  void record_curl();
  std::pair<double, double> curl_monitor() const;

  double mass_total() const;
  double energy_total() const;

  void write_outputs(const std::string& suffix) const;

 private:
  CaseConfig cc_;
  PrimalMesh pm_;
  DualMesh dm_;
  FieldSet f_;
  std::vector<double> pVert_;
  double t_ = 0.0;
  RunStats stats_;

  void refresh_plag();
};

// convergence helper: runs the case at the given levels, returns L2 errors of
// rho, momentum, energy and pressure plus observed orders
struct ConvergenceRow {
  int level = 0;
  double eRho = 0, eM = 0, eE = 0, eP = 0;
  double oRho = 0, oM = 0, oE = 0, oP = 0;
};
std::vector<ConvergenceRow> convergence_table(const Config& base, const std::vector<int>& levels);
std::string format_convergence(const std::vector<ConvergenceRow>& rows);

}  // namespace gpr
